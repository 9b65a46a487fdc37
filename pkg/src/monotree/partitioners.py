"""Constructive partitions and covers by monochromatic trees.

Every "some vertex" / "arbitrary" choice is resolved to the lowest index
(then lowest color), so results are reproducible.  Every certificate is
verified against :mod:`monotree.graph` before it is returned.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bitset import bits, lowest, popcount, to_mask
from .errors import (
    CriticalViolation,
    HypothesisViolated,
    IsolatedInH,
    LeafPartitionFailed,
    NoCrossingEdges,
    PreconditionViolated,
    RetriesExhausted,
    StepFailed,
    StructureBroken,
    WrongColorCount,
    YExhausted,
)
from .graph import (
    Block,
    CoverCertificate,
    PartitionCertificate,
    Verdict,
    _check_block,
    block_from_mask,
    largest_mono_component,
    verify_cover,
    verify_partition,
)

SLACK = 1e-9
MAX_RETRIES = 64


def _as_mask(s):
    return s if isinstance(s, int) else to_mask(s)


def _checked(cg, cert):
    verdict = verify_cover(cg, cert) if isinstance(cert, CoverCertificate) else verify_partition(cg, cert)
    if not verdict.ok:
        raise AssertionError(f"produced an invalid certificate: {verdict.violation}")
    return cert


# -- leaf partitions ----------------------------------------------------------

@dataclass(frozen=True)
class LeafPartition:
    """Split of ``y`` into parts, part ``i`` going with color ``colors[i]``.

    ``assignment[v] = (i, w)``: ``v`` in ``z`` attaches to ``w`` in part ``i``
    through an edge of color ``colors[i]``.
    """

    parts: tuple
    colors: tuple
    assignment: dict
    mode: str
    attempts: int = 1


def colored_degree_into(cg, v, ym, colors):
    m = 0
    for c in colors:
        m |= cg.cmasks[c - 1][v]
    return popcount(m & ym)


def leaf_partition(cg, y, z, k, mode="derandomized", colors=None, seed=None,
                   max_retries=MAX_RETRIES):
    """Partition ``y`` into ``k`` parts so that every ``v`` in ``z`` has, for
    some ``i``, a neighbour in part ``i`` of color ``colors[i]``.

    ``derandomized`` requires every ``v`` in ``z`` to have more than
    ``k log|z|`` neighbours in ``y`` with colors from ``colors`` (for
    ``k = 1``: at least one) and then never fails.  It places the vertices of
    ``y`` one at a time, each into the part that minimizes the pessimistic
    estimator ``sum_v (1 - 1/k)^(unplaced colored neighbours of v)`` over
    still-uncovered ``v``.  ``randomized`` draws uniform splits until one
    works.
    """
    colors = tuple(range(1, k + 1)) if colors is None else tuple(colors)
    if k < 1 or len(colors) != k or len(set(colors)) != k:
        raise PreconditionViolated(f"need {k} distinct colors, got {colors}")
    if any(not 1 <= c <= cg.r for c in colors):
        raise PreconditionViolated(f"colors {colors} outside 1..{cg.r}")
    ym, zm = _as_mask(y), _as_mask(z)
    if ym & zm:
        raise PreconditionViolated(f"y and z share vertex {lowest(ym & zm)}")
    ylist, zlist = bits(ym), bits(zm)

    if not zlist:
        parts = tuple(frozenset(ylist[i::k]) for i in range(k))
        return LeafPartition(parts, colors, {}, mode)

    tables = [cg.cmasks[c - 1] for c in colors]
    if mode == "derandomized":
        need = k * math.log(len(zlist))
        for v in zlist:
            d = colored_degree_into(cg, v, ym, colors)
            if (k == 1 and d < 1) or (k > 1 and d <= need):
                raise HypothesisViolated(
                    f"vertex {v} has {d} colored neighbours in y, needs > {need:.3f}", witness=v
                )
        return _derandomized(tables, ylist, zm, k, colors)
    if mode == "randomized":
        return _randomized(tables, ylist, zlist, k, colors, seed, max_retries)
    raise ValueError(f"unknown mode {mode!r}")


def _derandomized(tables, ylist, zm, k, colors):
    beta = 1.0 - 1.0 / k
    ym = to_mask(ylist)
    rem = {}  # unplaced colored neighbours in y
    for v in bits(zm):
        m = 0
        for t in tables:
            m |= t[v]
        rem[v] = popcount(m & ym)
    uncovered = zm
    parts = [[] for _ in range(k)]
    assignment = {}
    for w in ylist:
        adj = [t[w] & uncovered for t in tables]
        best_i, best_gain = 0, -1.0
        for i, a in enumerate(adj):
            gain = sum(beta ** (rem[v] - 1) for v in bits(a))
            if gain > best_gain:
                best_i, best_gain = i, gain
        parts[best_i].append(w)
        for i, a in enumerate(adj):
            if i == best_i:
                for v in bits(a):
                    assignment[v] = (i, w)
                uncovered &= ~a
            else:
                for v in bits(a):
                    rem[v] -= 1
    if uncovered:
        raise AssertionError(f"estimator guarantee broken at vertex {lowest(uncovered)}")
    return LeafPartition(tuple(frozenset(p) for p in parts), colors, assignment, "derandomized")


def _attach(tables, part_masks, zlist):
    assignment = {}
    for v in zlist:
        for i, t in enumerate(tables):
            hit = t[v] & part_masks[i]
            if hit:
                assignment[v] = (i, lowest(hit))
                break
        else:
            return None
    return assignment


def _randomized(tables, ylist, zlist, k, colors, seed, max_retries):
    rng = np.random.default_rng(seed)
    for attempt in range(1, max_retries + 1):
        labels = rng.integers(0, k, size=len(ylist)).tolist()
        part_masks = [0] * k
        for w, i in zip(ylist, labels):
            part_masks[i] |= 1 << w
        assignment = _attach(tables, part_masks, zlist)
        if assignment is not None:
            parts = tuple(frozenset(bits(m)) for m in part_masks)
            return LeafPartition(parts, colors, assignment, "randomized", attempt)
    raise RetriesExhausted(f"no valid split in {max_retries} random draws")


def _trees_from_leaf_partition(centers, lp, extra=()):
    """Block ``i``: ``centers[i]`` joined to part ``i`` (and to ``extra``),
    plus the z-vertices that chose part ``i``."""
    blocks = []
    for i, (x, c) in enumerate(zip(centers, lp.colors)):
        verts = {x}
        edges = []
        for w in sorted(lp.parts[i]) + list(extra):
            verts.add(w)
            edges.append((min(x, w), max(x, w)))
        for v, (j, w) in sorted(lp.assignment.items()):
            if j == i:
                verts.add(v)
                edges.append((min(v, w), max(v, w)))
        blocks.append(Block(c, frozenset(verts), tuple(edges)))
    return blocks


# -- Step 1 of the nested-neighbourhood partitions ----------------------------

@dataclass
class StepOneState:
    """Centers ``x_1..x_i`` with their colors and the nested sets
    ``Y_1 ⊇ ... ⊇ Y_i``, ``Y_j ⊆ N_{colors[j]}(x_j)``."""

    centers: list = field(default_factory=list)
    colors: list = field(default_factory=list)
    y_sizes: list = field(default_factory=list)
    exit: str = ""

    def as_dict(self):
        return {
            "centers": list(self.centers),
            "colors": list(self.colors),
            "y_sizes": list(self.y_sizes),
            "exit": self.exit,
        }


def _largest_color_neighbourhood(cg, x):
    best_c, best = 1, -1
    for c in range(1, cg.r + 1):
        d = popcount(cg.cmasks[c - 1][x])
        if d > best:
            best_c, best = c, d
    return best_c


def _majority_unused_color(cg, x, ym, used):
    best_c, best = None, -1
    for c in range(1, cg.r + 1):
        if c in used:
            continue
        d = popcount(cg.cmasks[c - 1][x] & ym)
        if d > best:
            best_c, best = c, d
    return best_c


def _used_union(cg, v, used):
    m = 0
    for c in used:
        m |= cg.cmasks[c - 1][v]
    return m


def hk_threshold(r):
    """Smallest complete-graph order covered by the partition guarantee."""
    return math.ceil(3 * r * r * math.factorial(r) * math.log(r)) if r > 1 else 1


def _is_complete(g):
    full = (1 << g.n) - 1
    return all(m | (1 << v) == full for v, m in enumerate(g.masks))


def hk_partition(cg, mode="derandomized", seed=None):
    """Partition V into at most r monochromatic trees of distinct colors and
    radius at most 2, by nested monochromatic neighbourhoods followed by a
    leaf partition.  Raises :class:`YExhausted` if the nested sets run dry
    (possible below the proven order threshold)."""
    n, r = cg.n, cg.r
    full = (1 << n) - 1
    state = StepOneState()
    logn = math.log(n) if n > 1 else 0.0

    def exhausted(msg):
        err = YExhausted(msg, trace=state.as_dict())
        if n >= hk_threshold(r) and _is_complete(cg.graph):
            raise CriticalViolation(f"complete graph of order {n} >= threshold: {msg}", instance=cg) from err
        raise err

    x = 0
    c = _largest_color_neighbourhood(cg, x)
    ym = cg.cmasks[c - 1][x]
    state.centers.append(x)
    state.colors.append(c)
    state.y_sizes.append(popcount(ym))
    centers_mask = 1 << x

    violators = [v for v in bits(full & ~ym) if not cg.cmasks[c - 1][v] & ym]
    if not violators:
        state.exit = "k1"
        verts, edges = {x}, []
        for w in bits(ym):
            verts.add(w)
            edges.append((min(x, w), max(x, w)))
        for v in bits(full & ~ym & ~centers_mask):
            w = lowest(cg.cmasks[c - 1][v] & ym)
            verts.add(v)
            edges.append((min(v, w), max(v, w)))
        cert = PartitionCertificate((Block(c, frozenset(verts), tuple(sorted(edges))),), state.as_dict())
        return _checked(cg, cert)

    i = 1
    while True:
        x = violators[0]
        c = _majority_unused_color(cg, x, ym, state.colors)
        if c is None:
            exhausted("no unused color left")
        ym &= cg.cmasks[c - 1][x]
        i += 1
        state.centers.append(x)
        state.colors.append(c)
        state.y_sizes.append(popcount(ym))
        centers_mask |= 1 << x
        if not ym:
            exhausted(f"Y_{i} is empty")
        if i == r:
            break
        violators = [
            v for v in bits(full & ~ym & ~centers_mask)
            if popcount(_used_union(cg, v, state.colors) & ym) <= i * logn
        ]
        if not violators:
            break

    k = i
    state.exit = f"step2_k{k}"
    zm = full & ~ym & ~centers_mask
    try:
        lp = leaf_partition(cg, ym, zm, k, mode=mode, colors=state.colors, seed=seed)
    except HypothesisViolated as exc:
        exhausted(f"|Y_{k}| = {popcount(ym)} too small for the leaf partition ({exc})")
    blocks = _trees_from_leaf_partition(state.centers, lp)
    return _checked(cg, PartitionCertificate(tuple(blocks), state.as_dict()))


# -- trees with many leaves ---------------------------------------------------

@dataclass(frozen=True)
class LeafyTree:
    root: int
    edges: tuple
    leaves: frozenset
    dominators: tuple  # the chosen neighbours of the root, in order

    @property
    def num_leaves(self):
        return len(self.leaves)


def _leafy_tree(masks, n, x):
    full = (1 << n) - 1
    ym = masks[x]
    zm = full & ~ym & ~(1 << x)
    edges = [(min(x, w), max(x, w)) for w in bits(ym)]
    chosen = []
    candidates = bits(ym)
    while zm:
        best, gain = None, 0
        for w in candidates:
            g = popcount(masks[w] & zm)
            if g > gain:
                best, gain = w, g
        if best is None:
            v = lowest(zm)
            raise HypothesisViolated(f"vertex {v} has no neighbour in N({x})", witness=v)
        chosen.append(best)
        candidates.remove(best)
        for v in bits(masks[best] & zm):
            edges.append((min(v, best), max(v, best)))
        zm &= ~masks[best]
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    leaves = frozenset(v for v in range(n) if deg[v] == 1)
    return LeafyTree(x, tuple(sorted(edges)), leaves, tuple(chosen))


def leafy_spanning_tree(g, x, alpha):
    """Spanning tree of depth at most 2 rooted at ``x`` whose internal
    vertices are ``x`` plus greedily chosen neighbours of ``x`` (each time
    the one dominating most of the rest).  Requires every vertex to have at
    least ``alpha * n`` neighbours in ``N(x)``; then the tree has at least
    ``n - (2/alpha) log n`` leaves once ``n`` is large enough."""
    need = alpha * g.n - SLACK
    nx = g.masks[x]
    for v in range(g.n):
        d = popcount(g.masks[v] & nx)
        if d < need:
            raise HypothesisViolated(
                f"vertex {v} has {d} < {alpha * g.n:.3f} neighbours in N({x})", witness=v
            )
    return _leafy_tree(g.masks, g.n, x)


def leafy_leaf_bound(n, alpha):
    return n - (2 / alpha) * math.log(n)


# -- absorbing tree partitions -------------------------------------------------

@dataclass(frozen=True)
class AbsorbingTreePartition:
    """Trees of distinct colors, pairwise meeting exactly in ``leaf_set``,
    whose members are leaves of every tree."""

    trees: tuple
    leaf_set: frozenset
    covered: int
    info: dict = field(default_factory=dict, compare=False)

    @property
    def k(self):
        return len(self.trees)


def check_absorbing(cg, atp):
    """The four defining properties (plus each tree being a tree)."""
    union = set()
    for t in atp.trees:
        union |= t.vertices
    if len(union) != atp.covered:
        return Verdict(False, f"trees cover {len(union)} vertices, claimed {atp.covered}")
    colors = [t.color for t in atp.trees]
    if len(set(colors)) != len(colors):
        return Verdict(False, f"tree colors {colors} not distinct")
    for i, t in enumerate(atp.trees):
        bad = _check_block(cg, i, t)
        if bad:
            return Verdict(False, bad)
        deg = {}
        for u, v in t.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        for v in atp.leaf_set:
            if deg.get(v) != 1:
                return Verdict(False, f"common leaf {v} has degree {deg.get(v, 0)} in tree {i}")
    for i in range(atp.k):
        for j in range(i + 1, atp.k):
            common = atp.trees[i].vertices & atp.trees[j].vertices
            if common != atp.leaf_set:
                return Verdict(False, f"trees {i} and {j} meet outside the common leaf set")
    return Verdict(True)


def mindeg_parameters(r, eps):
    """``(alpha, n0)`` of the minimum-degree partition theorem."""
    alpha = 1 / (math.e * math.factorial(r)) - eps
    n0 = max(
        12 / alpha**2 * math.log(6 / alpha**2),
        4 * r / alpha * math.log(2 * r / alpha),
    )
    return alpha, n0


def mindeg_absorbing_partition(cg, eps, force=False, mode="derandomized", seed=None):
    """Absorbing tree partition of an r-colored graph with
    ``delta >= (1 - eps) n``: either one spanning tree with many leaves, or
    ``2 <= k <= r`` trees of distinct colors sharing ``ceil(alpha n / 2)``
    common leaves.  ``force`` skips the ``n >= n0`` check."""
    n, r = cg.n, cg.r
    if r < 2:
        raise HypothesisViolated("needs r >= 2")
    limit = 1 / (math.e * math.factorial(r))
    if not 0 < eps < limit:
        raise HypothesisViolated(f"eps must lie in (0, {limit:.6f})")
    alpha, n0 = mindeg_parameters(r, eps)
    degs = cg.graph.degrees()
    low = min(range(n), key=lambda v: (degs[v], v))
    if degs[low] < (1 - eps) * n - SLACK:
        raise HypothesisViolated(f"vertex {low} has degree {degs[low]} < (1 - eps) n", witness=low)
    if n < n0 and not force:
        raise HypothesisViolated(f"n = {n} < n0 = {n0:.1f} (use force=True to run anyway)")

    full = (1 << n) - 1
    an = alpha * n
    state = StepOneState()
    x = 0
    c = _largest_color_neighbourhood(cg, x)
    ym = cg.cmasks[c - 1][x]
    state.centers.append(x)
    state.colors.append(c)
    state.y_sizes.append(popcount(ym))
    centers_mask = 1 << x

    violators = [v for v in bits(full & ~ym) if popcount(cg.cmasks[c - 1][v] & ym) < an]
    if not violators:
        state.exit = "k1"
        tree = _leafy_tree(cg.cmasks[c - 1], n, x)
        block = Block(c, frozenset(range(n)), tree.edges)
        atp = AbsorbingTreePartition((block,), tree.leaves, n, state.as_dict())
        return _checked_atp(cg, atp)

    i = 1
    while True:
        x = violators[0]
        c = _majority_unused_color(cg, x, ym, state.colors)
        ym &= cg.cmasks[c - 1][x]
        i += 1
        state.centers.append(x)
        state.colors.append(c)
        state.y_sizes.append(popcount(ym))
        centers_mask |= 1 << x
        if i == r:
            break
        violators = [
            v for v in bits(full & ~ym & ~centers_mask)
            if popcount(_used_union(cg, v, state.colors) & ym) < an
        ]
        if not violators:
            break

    k = i
    state.exit = f"step2_k{k}"
    ylist = bits(ym)
    nleaf = math.ceil(an / 2)
    if len(ylist) < nleaf:
        raise StepFailed(f"|Y_{k}| = {len(ylist)} < {nleaf} common leaves", trace=state.as_dict())
    leaves = ylist[:nleaf]
    rest = to_mask(ylist[nleaf:])
    zm = full & ~ym & ~centers_mask
    try:
        lp = leaf_partition(cg, rest, zm, k, mode=mode, colors=state.colors, seed=seed)
    except (HypothesisViolated, RetriesExhausted) as exc:
        raise StepFailed(f"leaf partition failed: {exc}", trace=state.as_dict()) from exc
    trees = _trees_from_leaf_partition(state.centers, lp, extra=leaves)
    atp = AbsorbingTreePartition(tuple(trees), frozenset(leaves), n, state.as_dict())
    return _checked_atp(cg, atp)


def _checked_atp(cg, atp):
    verdict = check_absorbing(cg, atp)
    if not verdict.ok:
        raise AssertionError(f"produced an invalid absorbing partition: {verdict.violation}")
    return atp


def complete_partition(atp, cg=None):
    """Hand the common leaves out round-robin; gives a partition into
    ``k`` trees.  Verified when ``cg`` is supplied."""
    if atp.k == 1:
        cert = PartitionCertificate(atp.trees, dict(atp.info))
    else:
        owner = {v: j % atp.k for j, v in enumerate(sorted(atp.leaf_set))}
        blocks = []
        for i, t in enumerate(atp.trees):
            drop = {v for v, j in owner.items() if j != i}
            verts = t.vertices - drop
            edges = tuple(e for e in t.edges if e[0] not in drop and e[1] not in drop)
            blocks.append(Block(t.color, verts, edges))
        cert = PartitionCertificate(tuple(blocks), dict(atp.info))
    return _checked(cg, cert) if cg is not None else cert


# -- covers -------------------------------------------------------------------

def _component_list(cg):
    return [(c, comp) for c, comps in enumerate(cg.components, start=1) for comp in comps]


def two_color_cover(cg):
    """Cover by at most two monochromatic components, or None.

    Exhaustive over single components and pairs, so None is a true negative.
    None on a graph with ``delta >= (2n - 5)/3`` (and no isolated vertex)
    would refute the two-color covering theorem and raises
    :class:`CriticalViolation` instead.
    """
    if cg.r != 2:
        raise WrongColorCount(f"needs exactly 2 colors, got r = {cg.r}")
    full = (1 << cg.n) - 1
    comps = _component_list(cg)
    for c, m in comps:
        if m == full:
            return _checked(cg, CoverCertificate((block_from_mask(cg, c, m),)))
    for i, (ci, mi) in enumerate(comps):
        for cj, mj in comps[i + 1:]:
            if mi | mj == full:
                parts = (block_from_mask(cg, ci, mi), block_from_mask(cg, cj, mj))
                return _checked(cg, CoverCertificate(parts))
    delta = cg.graph.min_degree()
    if cg.n >= 1 and delta >= 1 and 3 * delta >= 2 * cg.n - 5:
        raise CriticalViolation(
            f"no 2-cover although delta = {delta} >= (2n - 5)/3 with n = {cg.n}", instance=cg
        )
    return None


def greedy_component_cover(cg):
    """Repeatedly take the component covering most uncovered vertices."""
    comps = _component_list(cg)
    left = (1 << cg.n) - 1
    chosen = []
    while left:
        best, gain = None, 0
        for j, (_, m) in enumerate(comps):
            g = popcount(m & left)
            if g > gain:
                best, gain = j, g
        if best is None:
            v = lowest(left)
            raise IsolatedInH(f"vertex {v} lies in no monochromatic component", vertex=v)
        chosen.append(comps[best])
        left &= ~comps[best][1]
    return chosen


def aux_cover(cg):
    """Cover through a maximal independent set of the auxiliary graph H
    (``u ~ v`` iff some monochromatic component contains both): each other
    vertex is covered by a component it shares with an independent-set
    neighbour.  At most ``r * |MIS|`` parts, hence at most ``r^2`` when every
    ``r + 1`` vertices have a common neighbour.  The result is replaced by a
    plain greedy cover when that one is strictly smaller.
    """
    n, r = cg.n, cg.r
    index = cg.component_index
    share = []
    for v in range(n):
        m = 0
        for c in range(r):
            m |= index[c][v]
        share.append(m & ~(1 << v))
    for v in range(n):
        if not any(index[c][v] for c in range(r)):
            raise IsolatedInH(f"vertex {v} lies in no monochromatic component", vertex=v)

    mis, blocked = [], 0
    for v in range(n):
        if not blocked >> v & 1:
            mis.append(v)
            blocked |= share[v] | (1 << v)
    mis_mask = to_mask(mis)

    parts, covered = [], 0

    def take(c, m):
        nonlocal covered
        if (c, m) not in parts:
            parts.append((c, m))
        covered |= m

    for w in range(n):
        if mis_mask >> w & 1 or covered >> w & 1:
            continue
        x = lowest(share[w] & mis_mask)
        c = next(c for c in range(r) if index[c][x] >> w & 1)
        take(c + 1, index[c][x])
    for x in mis:
        if not covered >> x & 1:
            c = next(c for c in range(r) if index[c][x])
            take(c + 1, index[c][x])
    assert len(parts) <= r * len(mis)

    greedy = greedy_component_cover(cg)
    chosen = greedy if len(greedy) < len(parts) else parts
    info = {"mis": mis, "aux_parts": len(parts), "greedy_parts": len(greedy)}
    cert = CoverCertificate(tuple(block_from_mask(cg, c, m) for c, m in chosen), info)
    return _checked(cg, cert)


# -- double stars and large monochromatic structures ---------------------------

@dataclass(frozen=True)
class DoubleStar:
    centers: tuple
    vertices: frozenset
    edges: tuple

    @property
    def order(self):
        return len(self.vertices)


def double_star(g, x_side, y_side):
    """Double star on the crossing edge ``uv`` maximizing
    ``deg(u, Y) + deg(v, X)``; its order is at least the mean of that
    quantity over crossing edges, ``e(X, Y)(|X| + |Y|) / (|X||Y|)``."""
    xm, ym = _as_mask(x_side), _as_mask(y_side)
    if xm & ym:
        raise PreconditionViolated(f"sides share vertex {lowest(xm & ym)}")
    dy = {v: popcount(g.masks[v] & xm) for v in bits(ym)}
    best = None
    for u in bits(xm):
        nu = g.masks[u] & ym
        if not nu:
            continue
        du = popcount(nu)
        for v in bits(nu):
            score = du + dy[v]
            if best is None or score > best[0]:
                best = (score, u, v)
    if best is None:
        raise NoCrossingEdges("no edge between the two sides")
    _, u, v = best
    edges = [(min(u, w), max(u, w)) for w in bits(g.masks[u] & ym)]
    edges += [(min(v, w), max(v, w)) for w in bits(g.masks[v] & xm) if w != u]
    verts = frozenset(bits((g.masks[u] & ym) | (g.masks[v] & xm)))
    return DoubleStar((u, v), verts, tuple(sorted(edges)))


@dataclass(frozen=True)
class MonoStructure:
    kind: str  # "tree" or "double_star"
    color: int
    vertices: frozenset
    edges: tuple

    @property
    def order(self):
        return len(self.vertices)


def large_mono_structure(cg, eps):
    """A monochromatic tree on ``>= (1 - eps) n`` vertices or a monochromatic
    double star on ``>= (1 - 2 eps) n / (r - 1)`` vertices."""
    n, r = cg.n, cg.r
    if r < 2:
        raise HypothesisViolated("needs r >= 2")
    if not 0 < eps <= 0.5:
        raise HypothesisViolated("eps must lie in (0, 1/2]")
    delta = cg.graph.min_degree()
    if delta < (1 - eps) * n - SLACK:
        raise HypothesisViolated(f"min degree {delta} < (1 - eps) n = {(1 - eps) * n:.3f}")
    c, size, verts = largest_mono_component(cg)
    xm = to_mask(verts)
    if size >= (1 - eps) * n - SLACK:
        b = block_from_mask(cg, c, xm)
        return MonoStructure("tree", c, b.vertices, b.edges)
    ym = ((1 << n) - 1) & ~xm
    counts = {}
    for cc in range(1, r + 1):
        if cc != c:
            counts[cc] = sum(popcount(cg.cmasks[cc - 1][u] & ym) for u in bits(xm))
    maj = max(counts, key=lambda cc: (counts[cc], -cc))
    ds = double_star(cg.color_class(maj), xm, ym)
    bound = (1 - 2 * eps) * n / (r - 1)
    if ds.order < bound - SLACK:
        raise CriticalViolation(f"double star of order {ds.order} < {bound:.3f}", instance=cg)
    return MonoStructure("double_star", maj, ds.vertices, ds.edges)


# -- two colors on random graphs ----------------------------------------------

def gnp_two_color_partition(cg, mode="derandomized", seed=None):
    """Partition a 2-colored graph into at most two monochromatic trees.

    Either a color has a spanning component, or there is a pair ``u, v``
    joined by no monochromatic path.  Then their common neighbourhood W
    splits into ``A = N_1(u) ∩ N_2(v)`` and ``B = N_2(u) ∩ N_1(v)`` with no
    A-B edge; when W is connected one side is empty, and a leaf partition of
    W hangs everything else off two radius-2 trees centered at u and v.
    """
    if cg.r != 2:
        raise WrongColorCount(f"needs exactly 2 colors, got r = {cg.r}")
    n = cg.n
    full = (1 << n) - 1
    for c in (1, 2):
        for comp in cg.components[c - 1]:
            if comp == full:
                b = block_from_mask(cg, c, comp)
                return _checked(cg, PartitionCertificate((b,), {"k": 1}))

    index = cg.component_index
    pair = None
    for u in range(n):
        linked = index[0][u] | index[1][u] | ((1 << (u + 1)) - 1)
        others = full & ~linked
        if others:
            pair = (u, lowest(others))
            break
    if pair is None:
        raise AssertionError("no separated pair, yet no spanning component")
    u, v = pair
    red, blue = cg.cmasks[0], cg.cmasks[1]
    wm = cg.graph.masks[u] & cg.graph.masks[v]
    if not wm:
        raise StructureBroken(f"{u} and {v} have no common neighbour", "empty", pair)
    am = red[u] & blue[v] & wm
    bm = blue[u] & red[v] & wm
    if am | bm != wm:
        w = lowest(wm & ~(am | bm))
        raise StructureBroken(f"common neighbour {w} in one color of both", "dichotomy", (u, v, w))
    for a in bits(am):
        hit = cg.graph.masks[a] & bm
        if hit:
            raise StructureBroken("edge between A and B", "ab_edge", (a, lowest(hit)))
    if am and bm:
        raise StructureBroken(
            "common neighbourhood is split (not connected)", "both_sides", (lowest(am), lowest(bm))
        )
    centers = (u, v) if am else (v, u)  # center of the color-1 tree first
    zm = full & ~wm & ~(1 << u) & ~(1 << v)
    try:
        lp = leaf_partition(cg, wm, zm, 2, mode=mode, colors=(1, 2), seed=seed)
    except (HypothesisViolated, RetriesExhausted) as exc:
        raise LeafPartitionFailed(str(exc)) from exc
    blocks = _trees_from_leaf_partition(centers, lp)
    info = {"k": 2, "pair": list(pair), "common": popcount(wm)}
    return _checked(cg, PartitionCertificate(tuple(blocks), info))
