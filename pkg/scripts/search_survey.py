#!/usr/bin/env python3
"""Count reverse-derivable maps, and how many are non-additive, over a family of small rings.

    python scripts/search_survey.py [--jobs N] [--node-budget B]

Also records whether M1-M3 hold for each symmetric idempotent, so rows
with non-additive maps can be read against the hypotheses.
"""
import argparse
import time

from ringbench.maps import check_identity
from ringbench.peirce import builtin_involution, conditions, find_idempotents, validate_antiautomorphism
from ringbench.ring import make_direct_sum, make_dual, make_m2, make_null_ring, make_zmod
from ringbench.search import SearchConfig, enumerate_reverse_maps


def cases():
    for n in (2, 3, 4, 6, 8):
        yield f"Z{n}", make_zmod(n), "identity"
    for n in (2, 3, 4, 5, 6):
        yield f"dual(Z{n})", make_dual(n), "neg_b_dual"
    yield "null(4)", make_null_ring(4), "identity"
    yield "Z2+Z3", make_direct_sum(make_zmod(2), make_zmod(3)), "identity"
    yield "M2(Z2) transpose", make_m2(2), "transpose_m2"
    yield "M2(Z2) adjugate", make_m2(2), "adjugate_m2"
    yield "M2(Z3) transpose", make_m2(3), "transpose_m2"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--node-budget", type=int, default=10**7)
    args = ap.parse_args()

    print(f"{'ring':18s} {'size':>5s} {'maps':>8s} {'non-add':>8s} {'nodes':>9s} {'done':>5s} {'secs':>6s}  M1-M3 by e")
    for name, ring, family in cases():
        star = validate_antiautomorphism(ring, builtin_involution(ring, family))
        t0 = time.perf_counter()
        out = enumerate_reverse_maps(ring, SearchConfig(star, node_budget=args.node_budget, jobs=args.jobs))
        secs = time.perf_counter() - t0
        bad = sum(not check_identity(m, "additive") for m in out.maps)
        hyp = []
        for e in find_idempotents(ring, True, star):
            c = conditions(ring, e)
            hyp.append(f"{ring.label(e)}:{''.join('y' if c[k] else 'n' for k in ('M1', 'M2', 'M3'))}")
        print(f"{name:18s} {ring.size:5d} {len(out.maps):8d} {bad:8d} {out.nodes:9d} {str(out.exhausted):>5s} {secs:6.2f}  {' '.join(hyp) or '-'}")


if __name__ == "__main__":
    main()
