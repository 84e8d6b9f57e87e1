"""Self-maps of a finite ring and the functional identities they may satisfy."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .peirce import AntiAutomorphism, PeirceFrame, _parse_labels, _DUAL_LABEL, _M2_LABEL
from .result import PASS, Check, fail
from .ring import FiniteRing, RingError, SchemaError, _first, make_dual, make_m2

IDENTITY_KINDS = ("additive", "derivation", "reverse_derivation", "star_reverse", "sigma_reverse")
BUILTIN_MAPS = ("example1", "example2", "zero")


class ReductionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RingMap:
    ring: FiniteRing
    image: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.image)
        if img.shape != (self.ring.size,) or not np.issubdtype(img.dtype, np.integer):
            raise SchemaError(f"map image must be {self.ring.size} integers")
        if ((img < 0) | (img >= self.ring.size)).any():
            raise SchemaError("map image entry out of range", _first((img < 0) | (img >= self.ring.size)))
        img = img.astype(np.int64)
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    def __call__(self, x):
        return self.image[x]

    def __eq__(self, other):
        return isinstance(other, RingMap) and np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash(self.key)

    @cached_property
    def key(self) -> tuple[int, ...]:
        return tuple(self.image.tolist())

    def to_dict(self) -> dict:
        return {"image": self.image.tolist()}


def zero_map(ring: FiniteRing) -> RingMap:
    return RingMap(ring, np.full(ring.size, ring.zero))


def map_from_dict(ring: FiniteRing, doc: dict) -> RingMap:
    if "image" not in doc:
        raise SchemaError("map document needs an 'image' field")
    return RingMap(ring, doc["image"])


def violations(delta: RingMap, kind: str, sigma: Optional[AntiAutomorphism] = None) -> np.ndarray:
    """Boolean size x size mask of pairs (a, b) where the identity fails."""
    r, d = delta.ring, delta.image
    if kind == "additive":
        return d[r.add] != r.add[d[:, None], d[None, :]]
    if kind == "derivation":
        # d(ab) = d(a)b + a d(b)
        rhs = r.add[r.mul[d[:, None], np.arange(r.size)[None, :]], r.mul[np.arange(r.size)[:, None], d[None, :]]]
        return d[r.mul] != rhs
    if kind == "reverse_derivation":
        s = np.arange(r.size)
    elif kind in ("star_reverse", "sigma_reverse"):
        if sigma is None:
            raise ValueError(f"{kind} needs an anti-automorphism")
        if sigma.ring is not r and sigma.ring.content_hash != r.content_hash:
            raise ValueError("anti-automorphism belongs to a different ring")
        if kind == "star_reverse" and not sigma.is_involution:
            raise ValueError("star_reverse needs an involution")
        s = sigma.map
    else:
        raise ValueError(f"unknown identity {kind!r}; choose from {IDENTITY_KINDS}")
    # d(ab) = d(b) s(a) + s(b) d(a)
    rhs = r.add[r.mul[d[None, :], s[:, None]], r.mul[s[None, :], d[:, None]]]
    return d[r.mul] != rhs


def check_identity(delta: RingMap, kind: str, sigma: Optional[AntiAutomorphism] = None) -> Check:
    """Decide the identity over all pairs; the witness is the lowest failing (a, b)."""
    w = _first(violations(delta, kind, sigma))
    return fail(w) if w is not None else PASS


def _m2_entries(ring):
    parsed = _parse_labels(ring, _M2_LABEL, 4)
    if parsed is None:
        raise RingError("example1 is defined on 2x2 matrix rings over Z_n")
    return parsed


def example1_image(ring: FiniteRing) -> RingMap:
    """(a b; c d) -> (-b 2b; a-2c-d b), entrywise mod n."""
    n, ents = _m2_entries(ring)
    img = []
    for a, b, c, d in ents:
        img.append(ring.label_index[f"[[{-b % n},{2 * b % n}],[{(a - 2 * c - d) % n},{b}]]"])
    return RingMap(ring, img)


def make_example1_map(n: int) -> RingMap:
    return example1_image(make_m2(n))


def example2_image(ring: FiniteRing) -> RingMap:
    """(a, b) -> (0, b) in the carrier coordinates of the dual ring."""
    parsed = _parse_labels(ring, _DUAL_LABEL, 2)
    if parsed is None:
        raise RingError("example2 is defined on rings of matrices (a b; 0 a)")
    _, ents = parsed
    return RingMap(ring, [ring.label_index[f"(0,{b})"] for _, b in ents])


def make_example2_map() -> RingMap:
    return example2_image(make_dual(6))


def builtin_map(ring: FiniteRing, name: str) -> RingMap:
    if name == "zero":
        return zero_map(ring)
    if name == "example1":
        return example1_image(ring)
    if name == "example2":
        return example2_image(ring)
    raise RingError(f"unknown builtin map {name!r}; choose from {BUILTIN_MAPS}")


def _require_involution(frame):
    if frame.involution is None or not frame.involution.is_involution:
        raise ReductionError("the frame needs an involution fixing e")


def build_inner_wp(frame: PeirceFrame, delta: RingMap) -> RingMap:
    """x -> [a21 - a12, x*] where a = delta(e) split along the frame."""
    _require_involution(frame)
    r = frame.ring
    a = frame.project(int(delta(frame.e)))
    c = r.minus(a.x21, a.x12)
    xs = frame.involution.map
    return RingMap(r, r.sub(r.mul[c, xs], r.mul[xs, c]))


def reduce_delta(frame: PeirceFrame, delta: RingMap) -> RingMap:
    """Delta = delta - wp, a star-reverse derivable map vanishing at e."""
    _require_involution(frame)
    verdict = check_identity(delta, "star_reverse", frame.involution)
    if not verdict:
        raise ReductionError(f"map is not *-reverse derivable: witness {verdict.witness}")
    wp = build_inner_wp(frame, delta)
    reduced = RingMap(frame.ring, frame.ring.sub(delta.image, wp.image))
    if reduced(frame.e) != frame.ring.zero:
        raise ReductionError("reduced map does not vanish at e")
    return reduced
