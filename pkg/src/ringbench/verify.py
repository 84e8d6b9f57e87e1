"""Instance-level replay of the additivity argument.

Given a ring, an involution and a symmetric idempotent ``e``, every
reverse-derivable map found by the search is reduced to one vanishing at
``e`` and pushed through the chain of component-wise additivity checks that
ends in full additivity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .maps import RingMap, check_identity, reduce_delta
from .peirce import COMPONENTS, AntiAutomorphism, PeirceFrame, conditions
from .result import PASS, Check, fail
from .ring import FiniteRing, _first, dumps
from .search import SearchConfig, enumerate_reverse_maps

# component pairs (x_ii, x_jk) covered by the four cases of the mixed-sum lemma
LEMMA3_CASES = (("11", "21"), ("11", "12"), ("22", "21"), ("22", "12"))
LEMMAS = ("lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "lemma6")


def verify_lemma1(delta: RingMap) -> Check:
    z = delta.ring.zero
    return PASS if delta(z) == z else fail(int(delta(z)))


def verify_lemma2(frame: PeirceFrame, delta: RingMap) -> Check:
    """delta maps R_ij into R_ji."""
    for ij in COMPONENTS:
        ji = ij[::-1]
        xs = frame.components[ij]
        bad = xs[~frame.membership[ji][delta.image[xs]]]
        if len(bad):
            return fail([ij, int(bad[0])])
    return PASS


def _additive_on(ring, d, xs, ys):
    """Lowest (x, y) in xs x ys with d(x+y) != d(x)+d(y), or None."""
    lhs = d[ring.add[xs[:, None], ys[None, :]]]
    rhs = ring.add[d[xs][:, None], d[ys][None, :]]
    w = _first(lhs != rhs)
    return None if w is None else (int(xs[w[0]]), int(ys[w[1]]))


def verify_lemma3(frame: PeirceFrame, delta: RingMap) -> Check:
    """delta(x_ii + x_jk) = delta(x_ii) + delta(x_jk) on each covered case."""
    C = frame.components
    for ii, jk in LEMMA3_CASES:
        w = _additive_on(frame.ring, delta.image, C[ii], C[jk])
        if w is not None:
            return fail([ii, jk, *w])
    return PASS


def left_column(frame: PeirceFrame) -> np.ndarray:
    """Elements of Re, i.e. x = x11 + x21."""
    P, z = frame.projections, frame.ring.zero
    return np.flatnonzero((P[1] == z) & (P[3] == z))


def verify_lemma4_5_6(frame: PeirceFrame, delta: RingMap) -> dict[str, Check]:
    r, d, C = frame.ring, delta.image, frame.components
    out = {}
    for name, parts in (("lemma4", ("12", "21")), ("lemma5", ("11",)), ("lemma6", ("Re",))):
        out[name] = PASS
        for part in parts:
            xs = left_column(frame) if part == "Re" else C[part]
            w = _additive_on(r, d, xs, xs)
            if w is not None:
                out[name] = fail([part, *w])
                break
    return out


def check_additive(delta: RingMap) -> Check:
    return check_identity(delta, "additive")


def verify_proposition1(frame: PeirceFrame) -> Check:
    """Conjugation swaps the off-diagonal components: pi_ij(s)* = pi_ji(s*)."""
    if frame.involution is None:
        raise ValueError("proposition check needs an involution")
    star = frame.involution.map
    P = frame.projections
    x = np.arange(frame.ring.size)
    for k, ij in enumerate(COMPONENTS):
        swapped = COMPONENTS.index(ij[::-1])
        bad = np.flatnonzero(star[P[k]] != P[swapped][star[x]])
        if len(bad):
            return fail([ij, int(bad[0])])
    return PASS


def structural_checks(frame: PeirceFrame) -> dict[str, Check]:
    """Decomposition sums, projection idempotence, component products, conjugation swap."""
    r, P = frame.ring, frame.projections
    x = np.arange(r.size)
    out = {}
    total = r.add[r.add[P[0], P[1]], r.add[P[2], P[3]]]
    bad = np.flatnonzero(total != x)
    out["completeness"] = fail(int(bad[0])) if len(bad) else PASS

    out["idempotence"] = PASS
    for k, ij in enumerate(COMPONENTS):
        bad = np.flatnonzero(P[k][P[k]] != P[k])
        if len(bad):
            out["idempotence"] = fail([ij, int(bad[0])])
            break

    out["products"] = PASS
    C, M = frame.components, frame.membership
    for ij in COMPONENTS:
        for kl in COMPONENTS:
            prods = r.mul[C[ij][:, None], C[kl][None, :]]
            ok = (prods == r.zero) if ij[1] != kl[0] else M[ij[0] + kl[1]][prods]
            w = _first(~ok)
            if w is not None:
                out["products"] = fail([ij, kl, int(C[ij][w[0]]), int(C[kl][w[1]])])
                break
        if not out["products"]:
            break

    if frame.involution is not None:
        out["proposition1"] = verify_proposition1(frame)
    return out


def seed_fact(maps: Sequence[RingMap], sigma: AntiAutomorphism) -> Check:
    """Every map passing the star-reverse identity sends zero to zero."""
    for k, m in enumerate(maps):
        if check_identity(m, "sigma_reverse", sigma) and m(m.ring.zero) != m.ring.zero:
            return fail(k)
    return PASS


@dataclass
class VerificationReport:
    ring_id: str
    frame: dict
    conditions: dict
    search: dict
    maps_checked: int
    lemma_results: dict
    additivity: dict
    theorem_result: str
    refutation: bool
    notes: list = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.conditions[k]["pass"] for k in ("M1", "M2", "M3"))

    def exit_code(self) -> int:
        return 1 if self.refutation else 0

    def to_dict(self) -> dict:
        return {
            "ring_id": self.ring_id,
            "frame": self.frame,
            "conditions": self.conditions,
            "hypotheses_hold": self.hypotheses_hold,
            "search": self.search,
            "maps_checked": self.maps_checked,
            "lemma_results": self.lemma_results,
            "additivity": self.additivity,
            "theorem_result": self.theorem_result,
            "refutation": self.refutation,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _sweep(frame, maps):
    """Lemma and additivity results over all maps; first failure per check wins."""
    first = {name: None for name in (*LEMMAS, "additive", "reduced_additive")}
    nonadditive = 0
    for k, delta in enumerate(maps):
        reduced = reduce_delta(frame, delta)
        results = {
            "lemma1": verify_lemma1(reduced),
            "lemma2": verify_lemma2(frame, reduced),
            "lemma3": verify_lemma3(frame, reduced),
            **verify_lemma4_5_6(frame, reduced),
            "additive": check_additive(delta),
            "reduced_additive": check_additive(reduced),
        }
        if results["additive"].passed != results["reduced_additive"].passed:
            raise AssertionError(f"reduction changed additivity of map {k}")
        if not results["additive"]:
            nonadditive += 1
        for name, res in results.items():
            if not res and first[name] is None:
                first[name] = {"map": k, "witness": res.to_dict()["witness"]}
    return first, nonadditive


def verify_theorem(
    ring: FiniteRing,
    involution: AntiAutomorphism,
    e: int,
    config: Optional[SearchConfig] = None,
    extra_maps: Sequence[tuple[str, RingMap]] = (),
) -> VerificationReport:
    """Run conditions, search and the lemma chain on one frame.

    ``extra_maps`` (name, map) pairs are checked ahead of the searched maps;
    they must satisfy the star-reverse identity. Raises FrameError when ``e``
    is trivial, not idempotent, or not symmetric.
    """
    if not involution.is_involution:
        raise ValueError("verification needs an involution, not just an anti-automorphism")
    frame = PeirceFrame(ring, e, involution)
    config = config or SearchConfig(involution)
    conds = {k: v.to_dict() for k, v in conditions(ring, e).items()}
    outcome = enumerate_reverse_maps(ring, config)
    named = list(extra_maps)
    maps = [m for _, m in named] + outcome.maps

    first, nonadditive = _sweep(frame, maps)
    lemma_results = {
        name: {"pass": first[name] is None, "witness": first[name]} for name in LEMMAS
    }
    theorem_pass = first["additive"] is None
    hypotheses = all(conds[k]["pass"] for k in ("M1", "M2", "M3"))

    notes = []
    if named:
        notes.append("maps checked ahead of the search: " + ", ".join(f"{k}={n}" for k, (n, _) in enumerate(named)))
    if not outcome.exhausted:
        notes.append(f"search stopped before covering the space; {len(outcome.maps)} maps checked")
    if not hypotheses:
        failed = [k for k in ("M1", "M2", "M3") if not conds[k]["pass"]]
        notes.append(f"{', '.join(failed)} fail; lemma and theorem results are informational")
        for name, m in named:
            if check_additive(m):
                notes.append(f"{name} is additive although {', '.join(failed)} fail: M1-M3 are not necessary")
        if theorem_pass and outcome.maps:
            notes.append("every map checked is additive although the conditions fail")
    refutation = hypotheses and not theorem_pass
    if refutation:
        notes.append("REFUTATION: M1-M3 hold but a reverse-derivable map is not additive")

    return VerificationReport(
        ring_id=ring.content_hash,
        frame={"e": e, "label": ring.label(e), "involution": involution.content_hash},
        conditions=conds,
        search=outcome.summary(),
        maps_checked=len(maps),
        lemma_results=lemma_results,
        additivity={"nonadditive": nonadditive, "witness": first["additive"]},
        theorem_result="pass" if theorem_pass else "fail",
        refutation=refutation,
        notes=notes,
    )

