"""Anti-automorphisms, symmetric idempotents, Peirce projections and the
annihilator conditions M1-M3 / primality.

Every occurrence of ``1 - e`` is expanded (``x(1-e) = x - xe`` and so on), so
nothing here needs the ring to have a unity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

import numpy as np

from .result import PASS, Check, fail
from .ring import FiniteRing, RingError, SchemaError, _first, content_hash

COMPONENTS = ("11", "12", "21", "22")
INVOLUTION_FAMILIES = ("adjugate_m2", "transpose_m2", "neg_b_dual", "identity")


class FrameError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AntiAutomorphism:
    ring: FiniteRing
    map: np.ndarray
    is_involution: bool

    @cached_property
    def rows(self) -> list[int]:
        return self.map.tolist()

    def __call__(self, x):
        return self.map[x]

    def to_dict(self) -> dict:
        return {"map": self.map.tolist(), "involution": self.is_involution}

    @cached_property
    def content_hash(self) -> str:
        return content_hash(self.to_dict())


def validate_antiautomorphism(ring: FiniteRing, permutation, require_involution=False) -> AntiAutomorphism:
    """Exhaustively confirm ``permutation`` is an additive bijection reversing products."""
    n = ring.size
    s = np.asarray(permutation)
    if s.shape != (n,) or not np.issubdtype(s.dtype, np.integer):
        raise SchemaError(f"map must be a list of {n} integers")
    if ((s < 0) | (s >= n)).any():
        raise SchemaError("map entry out of range", _first((s < 0) | (s >= n)))
    if len(np.unique(s)) != n:
        raise RingError("map is not a bijection")
    s = s.astype(np.int64)
    w = _first(s[ring.add] != ring.add[s[:, None], s[None, :]])
    if w is not None:
        raise RingError("map is not additive", w)
    # s(xy) = s(y) s(x)
    w = _first(s[ring.mul] != ring.mul[s[None, :], s[:, None]])
    if w is not None:
        raise RingError("map is not anti-multiplicative", w)
    involutive = bool((s[s] == np.arange(n)).all())
    if require_involution and not involutive:
        raise RingError("map is not an involution", _first(s[s] != np.arange(n)))
    s.setflags(write=False)
    return AntiAutomorphism(ring, s, involutive)


def antiautomorphism_from_dict(ring: FiniteRing, doc: dict) -> AntiAutomorphism:
    try:
        sigma = validate_antiautomorphism(ring, doc["map"])
    except KeyError:
        raise SchemaError("involution document needs a 'map' field") from None
    if doc.get("involution") and not sigma.is_involution:
        raise RingError("document claims an involution but the map is not self-inverse")
    return sigma


_M2_LABEL = re.compile(r"^\[\[(\d+),(\d+)\],\[(\d+),(\d+)\]\]$")
_DUAL_LABEL = re.compile(r"^\((\d+),(\d+)\)$")


def _parse_labels(ring, pattern, arity):
    if ring.labels is None:
        return None
    root = round(ring.size ** (1 / arity))
    if root ** arity != ring.size:
        return None
    parsed = []
    for lab in ring.labels:
        m = pattern.match("".join(lab.split()))
        if not m:
            return None
        parsed.append(tuple(int(g) for g in m.groups()))
    return root, parsed


def builtin_involution(ring: FiniteRing, family: str) -> list[int]:
    """Permutation for one of the named involutions; the caller validates it."""
    if family == "identity":
        return list(range(ring.size))
    if family in ("adjugate_m2", "transpose_m2"):
        parsed = _parse_labels(ring, _M2_LABEL, 4)
        if parsed is None:
            raise RingError(f"{family} needs a 2x2 matrix ring over Z_n")
        n, ents = parsed
        if family == "transpose_m2":
            image = [(a, c, b, d) for a, b, c, d in ents]
        else:
            image = [(d, -b % n, -c % n, a) for a, b, c, d in ents]
        fmt = "[[{},{}],[{},{}]]"
    elif family == "neg_b_dual":
        parsed = _parse_labels(ring, _DUAL_LABEL, 2)
        if parsed is None:
            raise RingError("neg_b_dual needs a ring of matrices (a b; 0 a) over Z_n")
        n, ents = parsed
        image = [(a, -b % n) for a, b in ents]
        fmt = "({},{})"
    else:
        raise RingError(f"unknown involution family {family!r}; choose from {INVOLUTION_FAMILIES}")
    return [ring.label_index[fmt.format(*img)] for img in image]


def idempotents(ring: FiniteRing) -> np.ndarray:
    return np.flatnonzero(ring.mul[np.arange(ring.size), np.arange(ring.size)] == np.arange(ring.size))


def find_idempotents(ring: FiniteRing, symmetric_only=False, involution: Optional[AntiAutomorphism] = None) -> list[int]:
    """Nontrivial idempotents (neither zero nor unity), ascending by index."""
    if symmetric_only and involution is None:
        raise ValueError("symmetric_only requires an involution")
    out = []
    for e in idempotents(ring).tolist():
        if e == ring.zero or e == ring.unity:
            continue
        if symmetric_only and involution.map[e] != e:
            continue
        out.append(e)
    return out


class PeirceSplit(NamedTuple):
    x11: int
    x12: int
    x21: int
    x22: int


@dataclass(frozen=True, eq=False)
class PeirceFrame:
    ring: FiniteRing
    e: int
    involution: Optional[AntiAutomorphism] = None

    def __post_init__(self):
        ring, e = self.ring, self.e
        if not 0 <= e < ring.size:
            raise FrameError(f"e={e} outside the carrier")
        if ring.mul[e, e] != e:
            raise FrameError(f"{ring.label(e)} is not idempotent")
        if e == ring.zero or e == ring.unity:
            raise FrameError(f"{ring.label(e)} is a trivial idempotent")
        if self.involution is not None and self.involution.map[e] != e:
            raise FrameError(f"{ring.label(e)} is not symmetric under the involution")

    @cached_property
    def projections(self) -> np.ndarray:
        """4 x size array; row k holds the k-th Peirce component of every element."""
        r, e = self.ring, self.e
        x = np.arange(r.size)
        ex = r.mul[e, x]
        xe = r.mul[x, e]
        exe = r.mul[ex, e]
        x12 = r.sub(ex, exe)
        x21 = r.sub(xe, exe)
        x22 = r.add[r.sub(r.sub(x, ex), xe), exe]
        out = np.stack([exe, x12, x21, x22])
        out.setflags(write=False)
        return out

    def project(self, x: int) -> PeirceSplit:
        return PeirceSplit(*(int(v) for v in self.projections[:, x]))

    def pi(self, ij: str) -> np.ndarray:
        return self.projections[COMPONENTS.index(ij)]

    @cached_property
    def components(self) -> dict[str, np.ndarray]:
        """Each R_ij as a sorted array of element indices."""
        return {ij: np.unique(self.pi(ij)) for ij in COMPONENTS}

    @cached_property
    def membership(self) -> dict[str, np.ndarray]:
        P, z = self.projections, self.ring.zero
        x = np.arange(self.ring.size)
        out = {}
        for k, ij in enumerate(COMPONENTS):
            others = np.delete(P, k, axis=0)
            out[ij] = (P[k] == x) & (others == z).all(axis=0)
        return out


def peirce_project(frame: PeirceFrame, x: int) -> PeirceSplit:
    frame.ring._check(x)
    return frame.project(x)


def component_of(frame: PeirceFrame, x: int) -> dict[str, bool]:
    frame.ring._check(x)
    return {ij: bool(frame.membership[ij][x]) for ij in COMPONENTS}


def check_M1(ring: FiniteRing) -> Check:
    """xR = 0 implies x = 0."""
    dead = ~(ring.mul != ring.zero).any(axis=1)
    dead[ring.zero] = False
    bad = np.flatnonzero(dead)
    return fail(int(bad[0])) if len(bad) else PASS


def _idempotent(ring, e):
    if ring.mul[e, e] != e:
        raise FrameError(f"{ring.label(e)} is not idempotent")


def check_M2(ring: FiniteRing, e: int) -> Check:
    """eRx = 0 implies x = 0. A failure lists every nonzero x with eRx = 0."""
    _idempotent(ring, e)
    eR = np.unique(ring.mul[e])
    alive = (ring.mul[eR] != ring.zero).any(axis=0)
    alive[ring.zero] = True
    bad = np.flatnonzero(~alive).tolist()
    return fail(bad[0], bad) if bad else PASS


def check_M3(ring: FiniteRing, e: int) -> Check:
    """exeR(1-e) = 0 implies exe = 0, with exe.r.(1-e) expanded as exer - exere."""
    _idempotent(ring, e)
    corner = np.unique(ring.mul[ring.mul[e], e])
    corner = corner[corner != ring.zero]
    P = ring.mul[corner]
    alive = (ring.sub(P, ring.mul[P, e]) != ring.zero).any(axis=1)
    bad = corner[~alive].tolist()
    return fail(bad[0], bad) if bad else PASS


def is_prime(ring: FiniteRing) -> Check:
    """aRb = 0 implies a = 0 or b = 0; the witness is the lowest pair (a, b)."""
    n, z = ring.size, ring.zero
    reach = np.zeros((n, n))
    reach[np.arange(n)[:, None], ring.mul] = 1.0
    hits = reach @ (ring.mul != z).astype(float)
    dead = hits == 0
    dead[z, :] = False
    dead[:, z] = False
    w = _first(dead)
    return fail(w) if w is not None else PASS


def conditions(ring: FiniteRing, e: int) -> dict[str, Check]:
    return {"M1": check_M1(ring), "M2": check_M2(ring, e), "M3": check_M3(ring, e), "prime": is_prime(ring)}
