"""Extremal graphs and colorings with promised, checkable properties."""

import math
from dataclasses import dataclass

import numpy as np

from .bitset import bits, popcount, to_mask
from .errors import NotIndependent, NotPrime, PreconditionViolated, TooSmall
from .graph import ColoredGraph, Graph, color_graph


@dataclass(frozen=True)
class ConstructionMeta:
    """What a construction promises.

    ``bound_kind`` is one of

    * ``"tc_gt"``: the tree-cover number exceeds ``promised_lower_bound - 1``;
    * ``"tcr_distinct_fail"``: no cover by components of distinct colors;
    * ``"tm_eq"``: the largest monochromatic component has exactly
      ``promised_lower_bound`` vertices.
    """

    name: str
    promised_min_degree: int
    promised_lower_bound: int
    bound_kind: str

    def to_json(self):
        return {
            "name": self.name,
            "promised_min_degree": self.promised_min_degree,
            "promised_lower_bound": self.promised_lower_bound,
            "bound_kind": self.bound_kind,
        }


def _check_independent(g, xs, exc=NotIndependent):
    m = to_mask(xs)
    if popcount(m) != len(xs):
        raise exc(f"repeated vertex in {list(xs)}")
    for x in xs:
        if g.masks[x] & m:
            other = bits(g.masks[x] & m)[0]
            raise exc(f"{x} and {other} are adjacent")
    return m


def build_obs32_coloring(g, xs):
    """Color every edge at ``xs[i]`` with color ``i + 1``; everything else
    with the last color ``r = len(xs)``.  No two ``xs`` then share a
    monochromatic component."""
    xs = list(xs)
    r = len(xs)
    if r == 0:
        raise PreconditionViolated("need at least one vertex")
    _check_independent(g, xs)
    us, vs = g.edge_arrays()
    colors = np.full(us.shape, r, dtype=np.int64)
    for i, x in enumerate(xs, start=1):
        colors[(us == x) | (vs == x)] = i
    return color_graph(g, r, colors)


def build_obs34_coloring(g, x, r):
    """Adversarial coloring around a witness set ``x``.

    Edges outside ``x`` get color ``r``; the (at most ``r - 1``) edges from
    each outside vertex into ``x`` get colors ``1, 2, ...`` in increasing
    order of their endpoint in ``x``.  Then no two members of ``x`` share a
    component and some color-``r`` component avoids ``x``.
    """
    x = sorted(set(x))
    if r < 1:
        raise PreconditionViolated("r must be positive")
    if len(x) < r:
        raise PreconditionViolated(f"|x| = {len(x)} < r = {r}")
    xm = _check_independent(g, x, PreconditionViolated)
    dominated = 0
    for v in x:
        dominated |= g.masks[v]
    for v in range(g.n):
        if not xm >> v & 1 and popcount(g.masks[v] & xm) > r - 1:
            raise PreconditionViolated(
                f"vertex {v} has {popcount(g.masks[v] & xm)} > r - 1 neighbours in x"
            )
    undominated = ((1 << g.n) - 1) & ~(dominated | xm)
    if not undominated:
        raise PreconditionViolated("x is a dominating set")

    us, vs = g.edge_arrays()
    colors = np.full(us.shape, r, dtype=np.int64)
    in_x = np.zeros(g.n, dtype=bool)
    in_x[x] = True
    touching = np.flatnonzero(in_x[us] | in_x[vs])
    outside = np.where(in_x[us[touching]], vs[touching], us[touching])
    inside = np.where(in_x[us[touching]], us[touching], vs[touching])
    # rank of each edge among the x-edges of its outside endpoint
    order = np.lexsort((inside, outside))
    ranks = np.empty(order.size, dtype=np.int64)
    sorted_out = outside[order]
    first = np.searchsorted(sorted_out, sorted_out, side="left")
    ranks[order] = np.arange(order.size) - first
    colors[touching] = ranks + 1
    return color_graph(g, r, colors)


def example35_min_degree(r, n):
    return -(-(r * (n - r - 1) + 1) // (r + 1)) - 1


def build_example35(r, n):
    """Graph with minimum degree one below the covering threshold and
    ``tc_r > r``: hubs ``u_1..u_{r+1}`` (vertices ``0..r``) and an equitable
    split ``V_1..V_{r+1}`` of the rest."""
    if r < 1 or n < 2 * r + 2:
        raise TooSmall(f"need n >= 2r + 2 = {2 * r + 2}, got n = {n}")
    m, q = divmod(n, r + 1)
    sizes = [m - 1] * (r + 1 - q) + [m] * q
    hubs = list(range(r + 1))
    parts = []
    start = r + 1
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s

    edges = {}

    def join(a, b, c):
        for u in a:
            for v in b:
                edges[(min(u, v), max(u, v))] = c

    for i in range(1, r + 2):
        for j in range(1, r + 2):
            if i < j:
                join([hubs[i - 1]], parts[j - 1], i)
            elif j < i:
                # r = 1 would ask for color 0 here; the only color is 1
                join([hubs[i - 1]], parts[j - 1], max(i - 1, 1))
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            join(parts[i - 1], parts[j - 1], r)
    for i in range(2, r + 1):
        join(parts[r], parts[i - 1], 1)
    for part in parts:
        for a in range(len(part)):
            for b in range(a + 1, len(part)):
                edges[(part[a], part[b])] = r

    keys = sorted(edges)
    g = Graph.from_edges(n, keys)
    cg = color_graph(g, r, [edges[k] for k in keys])

    promised = example35_min_degree(r, n)
    # the hub u_{r+1} should be the unique bottleneck; re-check the split
    deg_last_hub = g.degree(hubs[r])
    if parts[0] and g.degree(parts[0][0]) < deg_last_hub:
        raise AssertionError("V_1 vertex below u_{r+1}: equitable split is wrong")
    if g.min_degree() != promised or deg_last_hub != promised:
        raise AssertionError(f"min degree {g.min_degree()} != promised {promised}")
    meta = ConstructionMeta("ex35", promised, r + 1, "tc_gt")
    return cg, meta


def example37_min_degree(r, n):
    return (n * (2**r - 1)) // 2**r - 1


def build_example37(r, n):
    """``2^r`` classes indexed by bit strings; vertices adjacent iff their
    strings agree somewhere, colored by the first agreeing coordinate."""
    if r < 1 or n < 2**r:
        raise TooSmall(f"need n >= 2^r = {2**r}, got n = {n}")
    k = 2**r
    m, q = divmod(n, k)
    sizes = [m + 1] * q + [m] * (k - q)
    label = np.repeat(np.arange(k), sizes)
    # coordinate 1 is the most significant bit of the class label
    coord = (label[:, None] >> np.arange(r - 1, -1, -1)[None, :]) & 1
    us, vs = np.triu_indices(n, 1)
    agree = coord[us] == coord[vs]
    has = agree.any(axis=1)
    us, vs = us[has], vs[has]
    colors = agree[has].argmax(axis=1) + 1
    cg = ColoredGraph.from_arrays(n, r, us, vs, colors)
    promised = example37_min_degree(r, n)
    if cg.graph.min_degree() != promised:
        raise AssertionError(f"min degree {cg.graph.min_degree()} != promised {promised}")
    return cg, ConstructionMeta("ex37", promised, r + 1, "tcr_distinct_fail")


def is_prime(q):
    if q < 2:
        return False
    return all(q % d for d in range(2, math.isqrt(q) + 1))


def affine_point_class(p1, p2, q):
    """Parallel class (0..q) of the line through two distinct points of
    AG(2, q): slope ``0..q-1``, or ``q`` for vertical lines."""
    dx = (p2[0] - p1[0]) % q
    dy = (p2[1] - p1[1]) % q
    if dx == 0:
        return q
    return dy * pow(dx, -1, q) % q


def build_affine_coloring(q, blowup=1):
    """``K_{q^2 * blowup}`` colored by the parallel classes of AG(2, q).

    Point ``(a, b)`` owns vertices ``(a*q + b)*blowup .. +blowup-1``; copies of
    one point are joined in color 1.  ``r = q + 1`` colors, and every
    monochromatic component is a line of ``q * blowup`` vertices.
    """
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if blowup < 1:
        raise PreconditionViolated("blowup must be at least 1")
    pts = [(a, b) for a in range(q) for b in range(q)]
    n = q * q * blowup
    point = np.arange(n) // blowup
    us, vs = np.triu_indices(n, 1)
    cls = np.zeros((q * q, q * q), dtype=np.int64)
    for i, p1 in enumerate(pts):
        for j, p2 in enumerate(pts):
            if i != j:
                cls[i, j] = affine_point_class(p1, p2, q) + 1
    colors = cls[point[us], point[vs]]
    colors[colors == 0] = 1
    cg = ColoredGraph.from_arrays(n, q + 1, us, vs, colors)
    return cg, ConstructionMeta("affine", n - 1, q * blowup, "tm_eq")
