"""Exhaustive search for maps d with d(ab) = d(b)s(a) + s(b)d(a).

Values are forced through products: once d(a) and d(b) are known, d(ab) is
determined, and a clash with an earlier value prunes the branch. Branching
takes the lowest unassigned element and tries candidate images in ascending
order, skipping images already refuted by one assigned partner. The tree is cut at its first branching variable; each top-level branch
is explored independently, so serial and pooled runs visit the same nodes.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .maps import RingMap, check_identity
from .peirce import AntiAutomorphism
from .ring import FiniteRing

DEFAULT_NODE_BUDGET = 10**7
NAIVE_SIZE_CAP = 8


@dataclass
class SearchConfig:
    sigma: AntiAutomorphism
    limit: int = 0
    node_budget: int = DEFAULT_NODE_BUDGET
    deterministic_order: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.limit < 0 or self.node_budget < 0:
            raise ValueError("limit and node_budget must be nonnegative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


@dataclass
class SearchOutcome:
    maps: list[RingMap]
    exhausted: bool
    nodes: int

    def summary(self) -> dict:
        return {"count": len(self.maps), "exhausted": self.exhausted, "nodes": self.nodes}


@dataclass
class _Branch:
    nodes: int = 0
    found: list = field(default_factory=list)  # (node stamp, image tuple)
    out_of_budget: bool = False
    stopped: bool = False


class _Solver:
    def __init__(self, add, mul, sigma, zero):
        self.add, self.mul, self.s = add, mul, sigma
        self.n = len(add)
        self.d = [-1] * self.n
        self.trail = []
        self.neg = [row.index(zero) for row in add]
        self.full = (1 << self.n) - 1
        self._left, self._right = {}, {}
        ok = self.assign(zero, zero)
        assert ok, "d(0) = 0 cannot conflict"

    def assign(self, x, v):
        """Set d(x) = v and force every product reachable from assigned pairs."""
        d, trail, add, mul, s = self.d, self.trail, self.add, self.mul, self.s
        d[x] = v
        trail.append(x)
        i = len(trail) - 1
        while i < len(trail):
            u = trail[i]
            i += 1
            du, su, mu = d[u], s[u], mul[u]
            mdu, msu = mul[du], mul[su]
            for k in range(i):
                w = trail[k]
                dw, sw = d[w], s[w]
                # d(uw) = d(w)s(u) + s(w)d(u)
                p = mu[w]
                val = add[mul[dw][su]][mul[sw][du]]
                cur = d[p]
                if cur < 0:
                    d[p] = val
                    trail.append(p)
                elif cur != val:
                    return False
                # d(wu) = d(u)s(w) + s(u)d(w)
                p = mul[w][u]
                val = add[mdu[sw]][msu[dw]]
                cur = d[p]
                if cur < 0:
                    d[p] = val
                    trail.append(p)
                elif cur != val:
                    return False
        return True

    def undo(self, mark):
        d, trail = self.d, self.trail
        while len(trail) > mark:
            d[trail.pop()] = -1

    def _preimages(self, t, right):
        """Bitmasks indexed by y: the v with t*v = y (or v*t = y when right)."""
        cache = self._right if right else self._left
        masks = cache.get(t)
        if masks is None:
            masks = [0] * self.n
            for v in range(self.n):
                y = self.mul[v][t] if right else self.mul[t][v]
                masks[y] |= 1 << v
            cache[t] = masks
        return masks

    def candidates(self, x):
        """Images for x not already refuted by a single assigned partner."""
        d, mul, add, neg, s = self.d, self.mul, self.add, self.neg, self.s
        sx = s[x]
        mask = self.full
        for w in self.trail:
            dw, sw = d[w], s[w]
            # d(xw) - d(w)s(x) = s(w)d(x)
            dp = d[mul[x][w]]
            if dp >= 0:
                mask &= self._preimages(sw, False)[add[dp][neg[mul[dw][sx]]]]
            # d(wx) - s(x)d(w) = d(x)s(w)
            dp = d[mul[w][x]]
            if dp >= 0:
                mask &= self._preimages(sw, True)[add[dp][neg[mul[sx][dw]]]]
            if not mask:
                return []
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def next_free(self, start=0):
        d = self.d
        for x in range(start, self.n):
            if d[x] < 0:
                return x
        return None

    def dfs(self, start, br, budget, limit, accept):
        x = self.next_free(start)
        if x is None:
            image = tuple(self.d)
            if accept is None or accept(image):
                br.found.append((br.nodes, image))
                if limit and len(br.found) >= limit:
                    br.stopped = True
            return
        for v in self.candidates(x):
            if br.nodes >= budget:
                br.out_of_budget = True
                return
            br.nodes += 1
            mark = len(self.trail)
            if self.assign(x, v):
                self.dfs(x + 1, br, budget, limit, accept)
            self.undo(mark)
            if br.out_of_budget or br.stopped:
                return


def _tables(ring, sigma):
    return ring.add_rows, ring.mul_rows, sigma.rows, ring.zero


def _root(tables):
    solver = _Solver(*tables)
    return solver, solver.next_free()


def _run_branch(tables, value, budget, limit=0, accept=None) -> _Branch:
    solver, x0 = _root(tables)
    br = _Branch()
    if budget <= 0:
        br.out_of_budget = True
        return br
    br.nodes = 1
    if solver.assign(x0, value):
        solver.dfs(x0 + 1, br, budget, limit, accept)
    return br


def _run_branch_star(args):
    return _run_branch(*args)


def _search(ring, sigma, budget, limit=0, jobs=1, accept=None):
    """Returns (images, exhausted, nodes) in depth-first order."""
    tables = _tables(ring, sigma)
    solver, x0 = _root(tables)
    if x0 is None:
        image = tuple(solver.d)
        hit = accept is None or accept(image)
        return ([image] if hit else []), True, 0

    images, used = [], 0
    values = solver.candidates(x0)
    if jobs > 1 and not limit and accept is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            branches = list(pool.map(_run_branch_star, [(tables, v, budget) for v in values]))
        for br in branches:
            remaining = budget - used
            if br.out_of_budget or br.nodes > remaining:
                # replay the serial cut: keep only what a budget of `remaining` would reach
                images.extend(img for stamp, img in br.found if stamp <= remaining)
                return images, False, budget
            images.extend(img for _, img in br.found)
            used += br.nodes
        return images, True, used

    for v in values:
        want = limit - len(images) if limit else 0
        br = _run_branch(tables, v, budget - used, want, accept)
        used += br.nodes
        images.extend(img for _, img in br.found)
        if br.out_of_budget or br.stopped:
            return images, False, used
    return images, True, used


def enumerate_reverse_maps(ring: FiniteRing, config: SearchConfig) -> SearchOutcome:
    """All maps satisfying the sigma-twisted reverse identity, within budget.

    With ``exhausted`` set the list is complete and sorted by image table;
    otherwise it is the depth-first prefix reached before ``limit`` or
    ``node_budget`` stopped the search.
    """
    sigma = config.sigma
    if sigma.ring is not ring and sigma.ring.content_hash != ring.content_hash:
        raise ValueError("anti-automorphism belongs to a different ring")
    images, exhausted, nodes = _search(ring, sigma, config.node_budget, config.limit, config.jobs)
    if exhausted:
        images.sort()
    return SearchOutcome([RingMap(ring, img) for img in images], exhausted, nodes)


def naive_enumerate(ring: FiniteRing, sigma: AntiAutomorphism, size_cap: int = NAIVE_SIZE_CAP) -> list[RingMap]:
    """Brute-force filter of every total map; the testing oracle for the search.

    Candidates are processed in blocks; a block sheds candidates as soon as
    they fail one pair, so the conjunction short-circuits but nothing else is
    assumed about the solutions.
    """
    n = ring.size
    if n > size_cap:
        raise ValueError(f"naive enumeration capped at ring size {size_cap}, got {n}")
    add, mul, s = ring.add, ring.mul, sigma.map
    pairs = list(itertools.product(range(n), repeat=2))
    total = n**n
    block = max(1, min(total, 1 << 18))
    powers = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    found = []
    for lo in range(0, total, block):
        codes = np.arange(lo, min(total, lo + block), dtype=np.int64)
        D = (codes[:, None] // powers) % n
        for a, b in pairs:
            lhs = D[:, mul[a, b]]
            rhs = add[mul[D[:, b], s[a]], mul[s[b], D[:, a]]]
            D = D[lhs == rhs]
            if not len(D):
                break
        found.extend(map(tuple, D.tolist()))
    found.sort()
    return [RingMap(ring, img) for img in found]


@dataclass
class WitnessSearch:
    map: Optional[RingMap]
    exhausted: bool
    nodes: int


def find_nonadditive_witness(ring: FiniteRing, sigma: AntiAutomorphism, budget: int = DEFAULT_NODE_BUDGET) -> WitnessSearch:
    """First solution (depth-first) that is not additive.

    ``map is None`` proves absence only when ``exhausted`` is set.
    """
    add = ring.add_rows

    def nonadditive(image):
        for x in range(ring.size):
            dx, row = image[x], add[x]
            for y in range(x, ring.size):
                if image[row[y]] != add[dx][image[y]]:
                    return True
        return False

    images, exhausted, nodes = _search(ring, sigma, budget, limit=1, accept=nonadditive)
    if images:
        witness = RingMap(ring, images[0])
        assert not check_identity(witness, "additive")
        return WitnessSearch(witness, False, nodes)
    return WitnessSearch(None, exhausted, nodes)


def sound(outcome: SearchOutcome, sigma: AntiAutomorphism) -> bool:
    """Independent re-check that every emitted map satisfies the identity."""
    return all(check_identity(m, "sigma_reverse", sigma).passed for m in outcome.maps)
