"""Exact ground truth on desk-sized instances.

Every routine here either returns an exact value or raises; nothing falls
back to a heuristic.  ``OracleLimits`` bounds the work up front (``TooLarge``)
and at run time (``BudgetExceeded``).
"""

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bitset import bits, lowest, popcount
from .errors import BudgetExceeded, NoEdges, TooLarge, Uncoverable
from .graph import (
    CoverCertificate,
    PartitionCertificate,
    _components_of,
    block_from_mask,
    color_graph,
)


@dataclass(frozen=True)
class OracleLimits:
    max_n_partition: int = 16
    max_edges_coloring_enum: int = 15
    time_budget: float = None  # seconds, None = unlimited
    max_tuples: int = 10**7

    def __post_init__(self):
        if self.max_n_partition <= 0 or self.max_edges_coloring_enum <= 0 or self.max_tuples <= 0:
            raise ValueError("oracle limits must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")


DEFAULT_LIMITS = OracleLimits()


class _Clock:
    def __init__(self, budget):
        self.deadline = None if budget is None else time.monotonic() + budget
        self.ticks = 0

    def tick(self):
        self.ticks += 1
        if self.deadline is not None and self.ticks & 255 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")


def _require_no_isolated(g):
    iso = g.isolated_vertices()
    if iso:
        raise Uncoverable(f"vertex {iso[0]} has no edges", vertex=iso[0])


# -- minimum set cover over component masks ------------------------------------

def min_set_cover(universe, sets, clock=None):
    """Indices of a minimum subfamily of ``sets`` (masks) covering ``universe``.

    Branch and bound: branch on the uncovered element with the fewest
    covering sets, bound by ``ceil(|uncovered| / largest set)``.
    """
    clock = clock or _Clock(None)
    if not universe:
        return []
    # drop duplicates and sets contained in another one
    order = sorted(range(len(sets)), key=lambda i: (-popcount(sets[i]), i))
    kept = []
    for i in order:
        s = sets[i] & universe
        if s and not any(s | sets[j] == sets[j] for j in kept):
            kept.append(i)
    missing = universe & ~_union(sets[i] for i in kept)
    if missing:
        raise Uncoverable(f"vertex {lowest(missing)} lies in no set", vertex=lowest(missing))
    biggest = max(popcount(sets[i]) for i in kept)
    covers = {}
    for e in bits(universe):
        covers[e] = [i for i in kept if sets[i] >> e & 1]

    # greedy upper bound
    best = []
    left = universe
    while left:
        i = max(kept, key=lambda j: (popcount(sets[j] & left), -j))
        best.append(i)
        left &= ~sets[i]

    def search(left, chosen):
        nonlocal best
        clock.tick()
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        need = -(-popcount(left) // biggest)
        if len(chosen) + need >= len(best):
            return
        e = min(bits(left), key=lambda x: len(covers[x]))
        for i in sorted(covers[e], key=lambda j: -popcount(sets[j] & left)):
            chosen.append(i)
            search(left & ~sets[i], chosen)
            chosen.pop()

    search(universe, [])
    return sorted(best)


def _union(masks):
    out = 0
    for m in masks:
        out |= m
    return out


def _component_list(cg):
    return [(c, comp) for c, comps in enumerate(cg.components, start=1) for comp in comps]


def tc_exact(cg, limits=DEFAULT_LIMITS):
    """Minimum number of monochromatic components covering V."""
    if cg.n == 0:
        return 0, CoverCertificate(())
    _require_no_isolated(cg.graph)
    comps = _component_list(cg)
    clock = _Clock(limits.time_budget)
    chosen = min_set_cover((1 << cg.n) - 1, [m for _, m in comps], clock)
    parts = tuple(block_from_mask(cg, comps[i][0], comps[i][1]) for i in chosen)
    return len(parts), CoverCertificate(parts)


# -- tree partitions via subset DP ---------------------------------------------

def _neighbour_union_table(masks, n):
    """``table[S]`` = union of the neighbourhoods of the members of S."""
    table = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        half = 1 << v
        table[half:2 * half] = table[:half] | masks[v]
    return table


def _connected_table(masks, n):
    """Boolean array: ``out[S]`` iff S is non-empty and connected."""
    nu = _neighbour_union_table(masks, n)
    subsets = np.arange(1 << n, dtype=np.int64)
    reach = subsets & -subsets
    while True:
        nxt = (reach | nu[reach]) & subsets
        if np.array_equal(nxt, reach):
            break
        reach = nxt
    out = reach == subsets
    out[0] = False
    return out


def block_color_table(cg):
    """``table[S]`` = lowest color in which S may be a block, 0 if none.

    A block needs at least one vertex and a spanning tree in its color; a
    single vertex counts in any color it has an edge of.
    """
    n = cg.n
    table = np.zeros(1 << n, dtype=np.int8)
    for c in range(cg.r, 0, -1):
        conn = _connected_table(cg.cmasks[c - 1], n)
        singles = [1 << v for v in range(n) if not cg.cmasks[c - 1][v]]
        conn[singles] = False
        table[conn] = c
    return table


def tp_exact(cg, limits=DEFAULT_LIMITS):
    """Minimum number of blocks, each spanned by a monochromatic tree,
    partitioning V.  Exact, by iterative deepening over subset states."""
    n = cg.n
    if n > limits.max_n_partition:
        raise TooLarge(f"n = {n} exceeds max_n_partition = {limits.max_n_partition}")
    if n == 0:
        return 0, PartitionCertificate(())
    _require_no_isolated(cg.graph)
    clock = _Clock(limits.time_budget)
    colors = block_color_table(cg)
    valid = colors > 0
    subsets = np.flatnonzero(valid)
    low = subsets & -subsets
    by_low = {}
    for v in range(n):
        blocks = subsets[low == (1 << v)]
        sizes = np.array([popcount(int(b)) for b in blocks], dtype=np.int64)
        by_low[v] = blocks[np.argsort(-sizes, kind="stable")]

    failed = set()

    def split(s, k):
        """A list of k blocks partitioning s, or None."""
        clock.tick()
        if k == 1:
            return [s] if valid[s] else None
        if (s, k) in failed:
            return None
        cand = by_low[lowest(s)]
        cand = cand[(cand & ~s) == 0]
        if k == 2:
            ok = cand[valid[s ^ cand]]
            if ok.size:
                t = int(ok[0])
                return [t, s ^ t]
        else:
            for t in cand.tolist():
                if t == s:
                    continue
                rest = split(s ^ t, k - 1)
                if rest is not None:
                    return [t] + rest
        failed.add((s, k))
        return None

    full = (1 << n) - 1
    for k in range(1, n + 1):
        found = split(full, k)
        if found is not None:
            blocks = tuple(
                block_from_mask(cg, int(colors[t]), t) for t in sorted(found, key=lowest)
            )
            return k, PartitionCertificate(blocks)
    raise AssertionError("singletons always partition a graph without isolated vertices")


# -- enumeration over all colorings --------------------------------------------

def _coloring_masks(n, r, edges, colors):
    tables = [[0] * n for _ in range(r)]
    for (u, v), c in zip(edges, colors):
        t = tables[c - 1]
        t[u] |= 1 << v
        t[v] |= 1 << u
    return tables


def _tc_of_coloring(n, r, edges, colors):
    full = (1 << n) - 1
    comps = []
    for table in _coloring_masks(n, r, edges, colors):
        comps.extend(_components_of(table, n))
    if full in comps:
        return 1
    return len(min_set_cover(full, comps))


def _tm_of_coloring(n, r, edges, colors):
    best = 0
    for table in _coloring_masks(n, r, edges, colors):
        for comp in _components_of(table, n):
            best = max(best, popcount(comp))
    return best


def _scan(task):
    """Worker: extremum of ``kind`` over colorings extending ``prefix``."""
    kind, n, r, edges, prefix, budget = task
    clock = _Clock(budget)
    score = _tc_of_coloring if kind == "tc" else _tm_of_coloring
    better = (lambda a, b: a > b) if kind == "tc" else (lambda a, b: a < b)
    best_val, best_col = None, None
    for tail in itertools.product(range(1, r + 1), repeat=len(edges) - len(prefix)):
        clock.tick()
        colors = prefix + tail
        val = score(n, r, edges, colors)
        if best_val is None or better(val, best_val):
            best_val, best_col = val, colors
    return best_val, best_col


def _enumerate(kind, g, r, limits, jobs):
    edges = g.edges()
    m = len(edges)
    if m > limits.max_edges_coloring_enum:
        raise TooLarge(f"{m} edges exceeds max_edges_coloring_enum = {limits.max_edges_coloring_enum}")
    # color 1 on the first edge quotients out one color-permutation symmetry
    depth = min(m, 2) if jobs > 1 else min(m, 1)
    prefixes = [(1,) + p for p in itertools.product(range(1, r + 1), repeat=depth - 1)]
    tasks = [(kind, g.n, r, edges, p, limits.time_budget) for p in prefixes]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan, tasks))
    else:
        results = [_scan(t) for t in tasks]
    pick = max if kind == "tc" else min
    # ties resolved by enumeration order, so the merge is order independent
    val, col = pick(results, key=lambda vc: vc[0])
    return val, color_graph(g, r, col)


def tc_graph_exact(g, r, limits=DEFAULT_LIMITS, jobs=1):
    """``tc_r(g)``: worst case of :func:`tc_exact` over all r-colorings."""
    if g.n == 0:
        return 0, color_graph(g, r, [])
    _require_no_isolated(g)
    return _enumerate("tc", g, r, limits, jobs)


def tm_graph_exact(g, r, limits=DEFAULT_LIMITS, jobs=1):
    """``tm_r(g)``: the largest monochromatic component every r-coloring has."""
    if g.num_edges == 0:
        raise NoEdges("tm is undefined without edges")
    return _enumerate("tm", g, r, limits, jobs)


# -- covers by components of distinct colors -----------------------------------

def distinct_color_cover_exists(cg, limits=DEFAULT_LIMITS):
    """Whether at most one component per color can cover V.

    Returns ``(found, certificate or None)``.
    """
    full = (1 << cg.n) - 1
    if not full:
        return True, CoverCertificate(())
    comps = cg.components
    suffix = [0] * (cg.r + 1)
    for c in range(cg.r - 1, -1, -1):
        suffix[c] = suffix[c + 1] | _union(comps[c])
    visited = 0

    def search(c, left, chosen):
        nonlocal visited
        visited += 1
        if visited > limits.max_tuples:
            raise BudgetExceeded(f"more than {limits.max_tuples} component tuples")
        if not left:
            return chosen
        if c == cg.r or left & ~suffix[c]:
            return None
        for comp in comps[c]:
            if comp & left:
                found = search(c + 1, left & ~comp, chosen + [(c + 1, comp)])
                if found is not None:
                    return found
        return search(c + 1, left, chosen)

    found = search(0, full, [])
    if found is None:
        return False, None
    return True, CoverCertificate(tuple(block_from_mask(cg, c, m) for c, m in found))
