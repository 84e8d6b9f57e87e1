"""Command-line front end. Output is newline-delimited JSON on stdout.

Exit codes: 0 success, 1 a check failed (or a refutation was found),
2 malformed input or a violated precondition.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import maps as M
from . import peirce as P
from .replay import replay
from .result import _plain
from .ring import (
    RingError,
    SchemaError,
    dumps,
    make_direct_sum,
    make_dual,
    make_m2,
    make_null_ring,
    make_zmod,
    resolve_element,
    ring_from_dict,
)
from .search import DEFAULT_NODE_BUDGET, SearchConfig, enumerate_reverse_maps
from .verify import verify_theorem

log = logging.getLogger("ringbench")

RING_FAMILIES = {
    "zmod": make_zmod,
    "m2": make_m2,
    "dual": make_dual,
    "null": make_null_ring,
    "zmod_sq": lambda n: make_direct_sum(make_zmod(n), make_zmod(n)),
}


class InputError(Exception):
    """Anything that should end the run with exit code 2."""


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _ring(args):
    try:
        ring = ring_from_dict(_load_json(args.ring))
    except RingError as exc:
        raise InputError(f"invalid ring: {exc}") from None
    log.info("ring %s sha256=%s", args.ring, ring.content_hash)
    return ring


def _involution(args, ring, required=True):
    if not args.inv:
        if required:
            raise InputError("--inv is required")
        return None
    try:
        sigma = P.antiautomorphism_from_dict(ring, _load_json(args.inv))
    except RingError as exc:
        raise InputError(f"invalid involution: {exc}") from None
    log.info("involution %s sha256=%s", args.inv, sigma.content_hash)
    return sigma


def _element(ring, token):
    try:
        return resolve_element(ring, token)
    except (KeyError, IndexError) as exc:
        raise InputError(str(exc)) from None


def _map(args, ring):
    try:
        if args.map in M.BUILTIN_MAPS:
            return M.builtin_map(ring, args.map)
        return M.map_from_dict(ring, _load_json(args.map))
    except RingError as exc:
        raise InputError(f"invalid map: {exc}") from None


def _labels(ring, value):
    """Mirror a witness structure with element labels, for --pretty."""
    if isinstance(value, list):
        return [_labels(ring, v) for v in value]
    if isinstance(value, int) and not isinstance(value, bool):
        return ring.label(value)
    return value


def cmd_ring_make(args, out):
    try:
        ring = RING_FAMILIES[args.family](args.n)
    except RingError as exc:
        raise InputError(str(exc)) from None
    log.info("ring sha256=%s", ring.content_hash)
    out.emit(ring.to_dict())
    return 0


def cmd_ring_validate(args, out):
    doc = _load_json(args.ring)
    try:
        ring = ring_from_dict(doc)
    except SchemaError as exc:
        raise InputError(f"invalid ring: {exc}") from None
    except RingError as exc:
        out.emit({"valid": False, "axiom": exc.axiom, "witness": _plain(exc.witness)})
        return 1
    log.info("ring %s sha256=%s", args.ring, ring.content_hash)
    out.emit({
        "valid": True,
        "ring_id": ring.content_hash,
        "size": ring.size,
        "commutative": ring.is_commutative(),
        "unity": ring.unity,
    })
    return 0


def cmd_inv_make(args, out):
    ring = _ring(args)
    try:
        sigma = P.validate_antiautomorphism(ring, P.builtin_involution(ring, args.family))
    except RingError as exc:
        raise InputError(str(exc)) from None
    log.info("involution sha256=%s", sigma.content_hash)
    out.emit(sigma.to_dict())
    return 0


def cmd_inv_validate(args, out):
    ring = _ring(args)
    doc = _load_json(args.inv)
    try:
        sigma = P.antiautomorphism_from_dict(ring, doc)
    except SchemaError as exc:
        raise InputError(str(exc)) from None
    except RingError as exc:
        out.emit({"valid": False, "axiom": exc.axiom, "witness": _plain(exc.witness)})
        return 1
    out.emit({"valid": True, "involution": sigma.is_involution, "sha256": sigma.content_hash})
    return 0


def cmd_idem_find(args, out):
    ring = _ring(args)
    sigma = _involution(args, ring, required=args.symmetric)
    found = P.find_idempotents(ring, symmetric_only=args.symmetric, involution=sigma)
    out.emit({"idempotents": found, "labels": [ring.label(e) for e in found]})
    return 0


def _frame(args, ring, sigma):
    try:
        return P.PeirceFrame(ring, _element(ring, args.e), sigma)
    except P.FrameError as exc:
        raise InputError(str(exc)) from None


def cmd_peirce(args, out):
    ring = _ring(args)
    sigma = _involution(args, ring, required=False)
    frame = _frame(args, ring, sigma)
    xs = [_element(ring, args.x)] if args.x is not None else range(ring.size)
    for x in xs:
        split = frame.project(x)
        out.emit({
            "x": x,
            "split": dict(zip(P.COMPONENTS, split)),
            "labels": dict(zip(P.COMPONENTS, (ring.label(v) for v in split))),
            "member_of": [ij for ij, inside in P.component_of(frame, x).items() if inside],
        })
    return 0


def cmd_conditions(args, out):
    ring = _ring(args)
    sigma = _involution(args, ring, required=False)
    e = _frame(args, ring, sigma).e
    results = P.conditions(ring, e)
    doc = {"ring_id": ring.content_hash, "e": e, **{k: v.to_dict() for k, v in results.items()}}
    out.emit(doc)
    if args.pretty:
        for k, v in results.items():
            witness = "" if v else f"  witness {_labels(ring, _plain(v.witness))}"
            if v.witnesses:
                witness += f" (all: {', '.join(_labels(ring, _plain(v.witnesses)))})"
            out.note(f"{k}: {'pass' if v else 'FAIL'}{witness}")
    return 0 if all(results.values()) else 1


def cmd_map_check(args, out):
    ring = _ring(args)
    sigma = _involution(args, ring, required=args.identity in ("star_reverse", "sigma_reverse"))
    delta = _map(args, ring)
    try:
        verdict = M.check_identity(delta, args.identity, sigma)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.emit({"identity": args.identity, **verdict.to_dict()})
    if args.pretty and not verdict:
        out.note(f"{args.identity} fails at {_labels(ring, _plain(verdict.witness))}")
    return 0 if verdict else 1


def _config(args, sigma):
    try:
        return SearchConfig(sigma, limit=args.limit, node_budget=args.node_budget, jobs=args.jobs)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_map_search(args, out):
    ring = _ring(args)
    sigma = _involution(args, ring)
    outcome = enumerate_reverse_maps(ring, _config(args, sigma))
    for m in outcome.maps:
        out.emit(m.to_dict())
    out.emit(outcome.summary())
    return 0


def cmd_verify_theorem(args, out):
    ring = _ring(args)
    sigma = _involution(args, ring)
    if not sigma.is_involution:
        raise InputError("verify-theorem needs an involution")
    frame = _frame(args, ring, sigma)
    extra = []
    if args.map:
        delta = _map(args, ring)
        if not M.check_identity(delta, "star_reverse", sigma):
            raise InputError("--map is not *-reverse derivable")
        extra.append((args.map, delta))
    report = verify_theorem(ring, sigma, frame.e, _config(args, sigma), extra_maps=extra)
    out.emit(report.to_dict())
    if args.pretty:
        for k in ("M1", "M2", "M3", "prime"):
            out.note(f"{k}: {'pass' if report.conditions[k]['pass'] else 'FAIL'}")
        s = report.search
        out.note(f"maps: {report.maps_checked} ({'complete' if s['exhausted'] else 'partial'}, {s['nodes']} nodes)")
        for name, res in report.lemma_results.items():
            out.note(f"{name}: {'pass' if res['pass'] else 'FAIL'}")
        out.note(f"additive: {report.theorem_result}")
        for line in report.notes:
            out.note(line)
    return report.exit_code()


def cmd_report(args, out):
    doc = replay(jobs=args.jobs)
    out.emit(doc)
    if args.pretty:
        for name, part in doc.items():
            if isinstance(part, dict):
                out.note(f"{name}: {'pass' if part['pass'] else 'FAIL'}")
    return 0 if doc["pass"] else 1


class _Output:
    def __init__(self, path):
        self.lines = []
        self.path = path

    def emit(self, doc):
        self.lines.append(dumps(_plain(doc)))

    def note(self, text):
        print(text, file=sys.stderr)

    def flush(self):
        text = "".join(line + "\n" for line in self.lines)
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()


def build_parser():
    parser = argparse.ArgumentParser(prog="ringbench", description=__doc__.splitlines()[0])
    parser.add_argument("-q", "--quiet", action="store_true", help="do not log input hashes")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, *opts, help=None):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--pretty", action="store_true", help="rendered summary on stderr")
        p.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS)
        if "ring" in opts:
            p.add_argument("--ring", required=True, help="ring JSON file")
        if "inv" in opts:
            p.add_argument("--inv", help="involution JSON file")
        if "e" in opts:
            p.add_argument("--e", required=True, help="idempotent, by label or index")
        if "map" in opts:
            p.add_argument("--map", help=f"map JSON file or one of {', '.join(M.BUILTIN_MAPS)}")
        if "search" in opts:
            p.add_argument("--limit", type=int, default=0, help="stop after N maps (0: all)")
            p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
        if "jobs" in opts:
            p.add_argument("--jobs", type=int, default=1, help="worker processes")
        return p

    p = verb("ring-make", cmd_ring_make, help="emit a constructed ring")
    p.add_argument("--family", required=True, choices=sorted(RING_FAMILIES))
    p.add_argument("--n", type=int, required=True)
    verb("ring-validate", cmd_ring_validate, "ring", help="check the ring axioms")
    p = verb("inv-make", cmd_inv_make, "ring", help="emit a builtin involution")
    p.add_argument("--family", required=True, choices=P.INVOLUTION_FAMILIES)
    verb("inv-validate", cmd_inv_validate, "ring", "inv", help="check an anti-automorphism")
    p = verb("idem-find", cmd_idem_find, "ring", "inv", help="nontrivial idempotents")
    p.add_argument("--symmetric", action="store_true")
    p = verb("peirce", cmd_peirce, "ring", "inv", "e", help="Peirce components")
    p.add_argument("--x", help="single element (default: all)")
    verb("conditions", cmd_conditions, "ring", "inv", "e", help="M1, M2, M3 and primality")
    p = verb("map-check", cmd_map_check, "ring", "inv", "map", help="test a functional identity")
    p.add_argument("--identity", required=True, choices=M.IDENTITY_KINDS)
    verb("map-search", cmd_map_search, "ring", "inv", "search", "jobs", help="enumerate reverse-derivable maps")
    verb("verify-theorem", cmd_verify_theorem, "ring", "inv", "e", "map", "search", "jobs",
         help="conditions, search and lemma chain on one frame")
    verb("report", cmd_report, "jobs", help="replay the worked examples and small-ring sweeps")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        stream=sys.stderr,
        format="%(name)s: %(message)s",
        force=True,
    )
    if getattr(args, "map", None) is None and args.verb == "map-check":
        parser.error("map-check needs --map")
    out = _Output(args.out)
    try:
        code = args.func(args, out)
    except InputError as exc:
        out.lines.clear()
        out.emit({"error": str(exc)})
        code = 2
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
