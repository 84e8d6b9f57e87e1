"""Finite rings given by explicit addition and multiplication tables."""
from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

DEFAULT_MAX_SIZE = 4096


class RingError(ValueError):
    """Raised when a table fails a ring axiom; carries the offending elements."""

    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message}: witness {witness}")
        self.axiom = message
        self.witness = witness


class SchemaError(RingError):
    """Malformed input: wrong shape, out-of-range entry, missing field."""


def max_ring_size() -> int:
    value = os.environ.get("WORKBENCH_MAX_RING_SIZE")
    return int(value) if value else DEFAULT_MAX_SIZE


@dataclass(frozen=True, eq=False)
class FiniteRing:
    size: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    unity: Optional[int] = None
    labels: Optional[tuple[str, ...]] = None
    validated: bool = field(default=False, repr=False)

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == self.zero, axis=1)

    @cached_property
    def add_rows(self) -> list[list[int]]:
        return self.add.tolist()

    @cached_property
    def mul_rows(self) -> list[list[int]]:
        return self.mul.tolist()

    @cached_property
    def label_index(self) -> dict[str, int]:
        if self.labels is None:
            return {}
        return {_squash(lab): i for i, lab in enumerate(self.labels)}

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def _check(self, *xs):
        for x in xs:
            if not 0 <= int(x) < self.size:
                raise IndexError(f"element {x} outside carrier of size {self.size}")

    def plus(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.add[x, y])

    def times(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.mul[x, y])

    def negate(self, x: int) -> int:
        self._check(x)
        return int(self.neg[x])

    def minus(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.add[x, self.neg[y]])

    def sub(self, x, y):
        """Vectorized subtraction over index arrays."""
        return self.add[x, self.neg[y]]

    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "add": self.add.tolist(),
            "mul": self.mul.tolist(),
            "zero": self.zero,
            "unity": self.unity,
            "labels": list(self.labels) if self.labels is not None else None,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @cached_property
    def content_hash(self) -> str:
        return content_hash(self.to_dict())


def _squash(text: str) -> str:
    return "".join(text.split())


def dumps(doc) -> str:
    """Canonical serialization used for files and content hashes."""
    return json.dumps(doc, separators=(",", ":"))


def content_hash(doc) -> str:
    return hashlib.sha256(dumps(doc).encode()).hexdigest()


def ring_from_dict(doc: dict, max_size: Optional[int] = None) -> FiniteRing:
    try:
        size = doc["size"]
        return validate_ring(
            size,
            doc["add"],
            doc["mul"],
            zero=doc["zero"],
            unity=doc.get("unity"),
            labels=doc.get("labels"),
            max_size=max_size,
        )
    except KeyError as exc:
        raise SchemaError(f"missing field {exc.args[0]!r}") from None


def ring_from_json(text: str, max_size: Optional[int] = None) -> FiniteRing:
    return ring_from_dict(json.loads(text), max_size=max_size)


def _as_table(name, table, size):
    arr = np.asarray(table)
    if arr.shape != (size, size):
        raise SchemaError(f"{name} table must be {size}x{size}, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise SchemaError(f"{name} table entries must be integers")
    bad = np.argwhere((arr < 0) | (arr >= size))
    if len(bad):
        x, y = map(int, bad[0])
        raise SchemaError(f"{name} entry out of range", (x, y))
    arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


def _first(mask):
    """Lowest index tuple where mask is true, or None."""
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def additive_generators(add, zero) -> list[int]:
    """Greedy generating set: every element is a left-normed sum of generators."""
    n = len(add)
    seen = np.zeros(n, dtype=bool)
    seen[zero] = True
    gens = []
    while not seen.all():
        gens.append(int(np.argmin(seen)))
        frontier = np.flatnonzero(seen)
        while len(frontier):
            nxt = np.unique(add[frontier][:, gens])
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
    return gens


def validate_ring(
    size: int,
    add: Sequence,
    mul: Sequence,
    zero: int = 0,
    unity: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
    max_size: Optional[int] = None,
) -> FiniteRing:
    """Check every ring axiom exhaustively and return the frozen ring.

    Associativity and distributivity hold for all triples once they hold on
    additive generators, so the scans cost O(size^2 * generators). Rings
    larger than ``max_size`` (default 4096, or ``WORKBENCH_MAX_RING_SIZE``)
    are refused.
    Raises RingError naming the first violated axiom and a witness.
    """
    if not isinstance(size, (int, np.integer)) or size < 1:
        raise SchemaError(f"size must be a positive integer, got {size!r}")
    cap = max_ring_size() if max_size is None else max_size
    if size > cap:
        raise SchemaError(f"ring of size {size} exceeds the size cap {cap}")
    n = int(size)
    A = _as_table("add", add, n)
    M = _as_table("mul", mul, n)
    for name, v in (("zero", zero), ("unity", unity)):
        if v is not None and not (isinstance(v, (int, np.integer)) and 0 <= v < n):
            raise SchemaError(f"{name} element {v!r} out of range")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise SchemaError(f"expected {n} labels, got {len(labels)}")

    idx = np.arange(n)
    w = _first(A[zero] != idx)
    if w is not None:
        raise RingError("zero is not an additive identity", (zero, w[0]))
    w = _first(A != A.T)
    if w is not None:
        raise RingError("addition not commutative", w)
    for x in range(n):
        if len(np.unique(A[x])) != n:
            raise RingError("addition row is not a permutation", (x,))
    gens = additive_generators(A, zero)
    # Light's test: the elements g with (x+g)+y = x+(g+y) form a closed set
    for g in gens:
        w = _first(A[A[:, g]] != A[:, A[g]])
        if w is not None:
            raise RingError("addition not associative", (w[0], g, w[1]))
    # with (R,+) a group, additivity of x -> ax and x -> xa need only be
    # checked against generators
    for g in gens:
        w = _first(M[:, A[:, g]] != A[M, M[:, g][:, None]])
        if w is not None:
            raise RingError("distributivity violated", (w[0], w[1], g))
        w = _first(M[A[:, g]] != A[M, M[g][None, :]])
        if w is not None:
            raise RingError("distributivity violated", (w[0], g, w[1]))
    # (ab)c - a(bc) is additive in each slot, so generator triples decide it
    G = np.asarray(gens, dtype=np.int64)
    w = _first(M[M[G[:, None], G[None, :]]][:, :, G] != M[G[:, None, None], M[G[:, None], G[None, :]][None, :, :]])
    if w is not None:
        raise RingError("multiplication not associative", tuple(int(G[k]) for k in w))
    if unity is not None:
        w = _first((M[unity] != idx) | (M[:, unity] != idx))
        if w is not None:
            raise RingError("unity is not a multiplicative identity", (unity, w[0]))
    return FiniteRing(n, A, M, int(zero), None if unity is None else int(unity), labels, True)


def make_zmod(n: int) -> FiniteRing:
    if n < 1:
        raise RingError(f"Z_n needs n >= 1, got {n}")
    r = np.arange(n)
    unity = 1 % n
    return validate_ring(
        n, (r[:, None] + r) % n, (r[:, None] * r) % n, 0, unity, [str(i) for i in range(n)]
    )


def make_null_ring(n: int) -> FiniteRing:
    """Additive group Z_n with every product zero (a ring without unity)."""
    if n < 1:
        raise RingError(f"null ring needs n >= 1, got {n}")
    r = np.arange(n)
    return validate_ring(
        n, (r[:, None] + r) % n, np.zeros((n, n), dtype=np.int64), 0, None,
        [str(i) for i in range(n)],
    )


def m2_label(a, b, c, d) -> str:
    return f"[[{a},{b}],[{c},{d}]]"


def make_m2(n: int, max_size: Optional[int] = None) -> FiniteRing:
    """All 2x2 matrices over Z_n; (a,b,c,d) has index ((a*n+b)*n+c)*n+d."""
    if n < 2:
        raise RingError(f"M2(Z_n) needs n >= 2, got {n}")
    ents = np.array(list(itertools.product(range(n), repeat=4)))
    a, b, c, d = (ents[:, k] for k in range(4))
    weights = np.array([n**3, n**2, n, 1])

    def encode(*cols):
        return sum((col % n) * wt for col, wt in zip(cols, weights))

    add = encode(*(ents[:, None, k] + ents[None, :, k] for k in range(4)))
    A, B, C, D = (x[:, None] for x in (a, b, c, d))
    mul = encode(A * a + B * c, A * b + B * d, C * a + D * c, C * b + D * d)
    labels = [m2_label(*row) for row in ents.tolist()]
    return validate_ring(n**4, add, mul, 0, int(encode(1, 0, 0, 1)), labels, max_size)


def make_dual(n: int) -> FiniteRing:
    """Matrices (a b; 0 a) over Z_n stored as (a,b) with index a*n+b."""
    if n < 2:
        raise RingError(f"dual ring needs n >= 2, got {n}")
    ents = np.array(list(itertools.product(range(n), repeat=2)))
    a, b = ents[:, 0], ents[:, 1]
    A, B = a[:, None], b[:, None]
    add = ((A + a) % n) * n + (B + b) % n
    mul = ((A * a) % n) * n + (A * b + B * a) % n
    labels = [f"({x},{y})" for x, y in ents.tolist()]
    return validate_ring(n * n, add, mul, 0, 1 * n + 0, labels)


def make_direct_sum(left: FiniteRing, right: FiniteRing) -> FiniteRing:
    """Componentwise ring left x right; (x, y) has index x*|right|+y."""
    p, q = left.size, right.size
    xs, ys = np.divmod(np.arange(p * q), q)
    add = left.add[xs[:, None], xs] * q + right.add[ys[:, None], ys]
    mul = left.mul[xs[:, None], xs] * q + right.mul[ys[:, None], ys]
    unity = None
    if left.unity is not None and right.unity is not None:
        unity = left.unity * q + right.unity
    labels = [f"({left.label(x)},{right.label(y)})" for x, y in zip(xs.tolist(), ys.tolist())]
    return validate_ring(p * q, add, mul, left.zero * q + right.zero, unity, labels)


def resolve_element(ring: FiniteRing, token) -> int:
    """Element by index, by label, or by matrix-unit name E11..E22 on M2 rings."""
    if isinstance(token, (int, np.integer)):
        ring._check(token)
        return int(token)
    text = _squash(str(token))
    if text in ring.label_index:
        return ring.label_index[text]
    if len(text) == 3 and text[0] in "Ee" and text[1] in "12" and text[2] in "12":
        ent = [0, 0, 0, 0]
        ent[2 * (int(text[1]) - 1) + int(text[2]) - 1] = 1
        key = m2_label(*ent)
        if key in ring.label_index:
            return ring.label_index[key]
    if text.lstrip("-").isdigit():
        ring._check(int(text))
        return int(text)
    raise KeyError(f"no element named {token!r}")
