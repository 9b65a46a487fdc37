"""Edge-colored graphs, monochromatic components and certificate checking.

Vertices are ``0..n-1`` and colors are ``1..r``.  Adjacency is kept as one
int bitmask per vertex (see :mod:`monotree.bitset`); a colored graph keeps one
such table per color, and the uncolored union table as ``cg.graph``.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .bitset import bits, lowest, masks_from_pairs, popcount, to_mask
from .errors import (
    ColorOutOfRange,
    DuplicateEdge,
    EmptyQuery,
    LoopEdge,
    NoEdges,
    VertexOutOfRange,
)


def _as_mask(s):
    return s if isinstance(s, int) else to_mask(s)


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    masks: tuple

    @classmethod
    def from_edges(cls, n, edges):
        edges = list(edges)
        us = [min(e) for e in edges]
        vs = [max(e) for e in edges]
        return cls(n, masks_from_pairs(n, us, vs))

    @classmethod
    def from_arrays(cls, n, us, vs):
        return cls(n, masks_from_pairs(n, us, vs))

    @classmethod
    def complete(cls, n):
        allv = (1 << n) - 1
        return cls(n, tuple(allv ^ (1 << v) for v in range(n)))

    @classmethod
    def empty(cls, n):
        return cls(n, (0,) * n)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.masks == other.masks

    def __hash__(self):
        return hash((self.n, self.masks))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    def nbr_mask(self, v):
        return self.masks[v]

    def neighbors(self, v):
        return frozenset(bits(self.masks[v]))

    def degree(self, v):
        return popcount(self.masks[v])

    def degrees(self):
        return [popcount(m) for m in self.masks]

    def min_degree(self):
        return min(self.degrees()) if self.n else 0

    def has_edge(self, u, v):
        return bool(self.masks[u] >> v & 1)

    def deg_into(self, v, s):
        """Number of neighbours of ``v`` inside ``s`` (mask or iterable)."""
        return popcount(self.masks[v] & _as_mask(s))

    def e_between(self, x, y):
        """Edges with one end in ``x`` and the other in ``y`` (disjoint sets)."""
        ym = _as_mask(y)
        return sum(popcount(self.masks[u] & ym) for u in bits(_as_mask(x)))

    @cached_property
    def num_edges(self):
        return sum(popcount(m) for m in self.masks) // 2

    def edges(self):
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        out = []
        for u, m in enumerate(self.masks):
            out.extend((u, v) for v in bits(m >> (u + 1) << (u + 1)))
        return out

    def edge_arrays(self):
        us, vs = [], []
        for u, m in enumerate(self.masks):
            hi = bits(m >> (u + 1) << (u + 1))
            us.extend([u] * len(hi))
            vs.extend(hi)
        return np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)

    def isolated_vertices(self):
        return [v for v, m in enumerate(self.masks) if m == 0]

    def is_connected_on(self, mask):
        """Whether ``mask`` induces a connected subgraph (empty -> False)."""
        if not mask:
            return False
        return _reach(self.masks, lowest(mask), mask) == mask


def _reach(masks, start, within):
    comp = 1 << start
    frontier = comp
    while frontier:
        new = 0
        for u in bits(frontier):
            new |= masks[u]
        new &= within & ~comp
        comp |= new
        frontier = new
    return comp


def _components_of(masks, n):
    """Connected components (as masks) of the non-isolated vertices."""
    seen = 0
    comps = []
    for v in range(n):
        if seen >> v & 1 or not masks[v]:
            continue
        comp = _reach(masks, v, -1)
        seen |= comp
        comps.append(comp)
    return comps


@dataclass(frozen=True, eq=False)
class ColoredGraph:
    n: int
    r: int
    cmasks: tuple  # cmasks[c - 1][v]: color-c neighbours of v
    graph: Graph = field(init=False, repr=False)

    def __post_init__(self):
        union = [0] * self.n
        for table in self.cmasks:
            for v, m in enumerate(table):
                union[v] |= m
        object.__setattr__(self, "graph", Graph(self.n, tuple(union)))

    @classmethod
    def from_arrays(cls, n, r, us, vs, cs):
        """Build from aligned numpy arrays without per-edge Python checks."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        cs = np.asarray(cs, dtype=np.int64)
        tables = []
        for c in range(1, r + 1):
            sel = cs == c
            tables.append(masks_from_pairs(n, us[sel], vs[sel]))
        return cls(n, r, tuple(tables))

    def __eq__(self, other):
        return (
            isinstance(other, ColoredGraph)
            and (self.n, self.r, self.cmasks) == (other.n, other.r, other.cmasks)
        )

    def __hash__(self):
        return hash((self.n, self.r, self.cmasks))

    def __repr__(self):
        return f"ColoredGraph(n={self.n}, r={self.r}, m={self.graph.num_edges})"

    def color(self, u, v):
        for c, table in enumerate(self.cmasks, start=1):
            if table[u] >> v & 1:
                return c
        return None

    def color_nbr_mask(self, v, c):
        return self.cmasks[c - 1][v]

    def color_neighbors(self, v, c):
        return frozenset(bits(self.cmasks[c - 1][v]))

    def deg_c(self, v, c, s=None):
        m = self.cmasks[c - 1][v]
        if s is not None:
            m &= _as_mask(s)
        return popcount(m)

    def color_class(self, c):
        return Graph(self.n, self.cmasks[c - 1])

    def edges(self):
        """``(u, v, c)`` triples with ``u < v``, sorted by ``(u, v)``."""
        out = []
        for c, table in enumerate(self.cmasks, start=1):
            for u, m in enumerate(table):
                out.extend((u, v, c) for v in bits(m >> (u + 1) << (u + 1)))
        out.sort()
        return out

    @cached_property
    def components(self):
        """Per color (index ``c - 1``), the color-``c`` components as masks,
        ordered by smallest vertex."""
        return tuple(_components_of(table, self.n) for table in self.cmasks)

    @cached_property
    def component_index(self):
        """``component_index[c - 1][v]`` is the mask of v's color-c component
        (0 if v has no color-c edge)."""
        out = []
        for comps in self.components:
            where = [0] * self.n
            for comp in comps:
                for v in bits(comp):
                    where[v] = comp
            out.append(tuple(where))
        return tuple(out)


def build_colored_graph(n, r, edges):
    """Validate ``(u, v, c)`` triples and build a :class:`ColoredGraph`."""
    seen = set()
    us, vs, cs = [], [], []
    for e in edges:
        u, v, c = e
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange("vertex out of range", tuple(e))
        if u == v:
            raise LoopEdge("loop edge", tuple(e))
        if not 1 <= c <= r:
            raise ColorOutOfRange(f"color outside 1..{r}", tuple(e))
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge("duplicate edge", tuple(e))
        seen.add(key)
        us.append(key[0])
        vs.append(key[1])
        cs.append(c)
    return ColoredGraph.from_arrays(n, r, us, vs, cs)


def color_graph(g, r, colors):
    """Attach ``colors`` (aligned with ``g.edge_arrays()``) to ``g``."""
    us, vs = g.edge_arrays()
    colors = np.asarray(colors, dtype=np.int64)
    if colors.shape != us.shape:
        raise ValueError("one color per edge required")
    if colors.size and (colors.min() < 1 or colors.max() > r):
        i = int(np.flatnonzero((colors < 1) | (colors > r))[0])
        raise ColorOutOfRange(
            f"color outside 1..{r}", (int(us[i]), int(vs[i]), int(colors[i]))
        )
    return ColoredGraph.from_arrays(g.n, r, us, vs, colors)


# -- monochromatic components --------------------------------------------------

class MonoComponent(NamedTuple):
    color: int
    vertices: frozenset


def mono_components(cg):
    """All monochromatic components, ordered by color then smallest vertex.

    Vertices without a color-c edge are not reported for color c.
    """
    return [
        MonoComponent(c, frozenset(bits(comp)))
        for c, comps in enumerate(cg.components, start=1)
        for comp in comps
    ]


def largest_mono_component(cg):
    """``(color, size, vertices)`` of a largest monochromatic component."""
    best = None
    for c, comps in enumerate(cg.components, start=1):
        for comp in comps:
            size = popcount(comp)
            if best is None or size > best[1]:
                best = (c, size, comp)
    if best is None:
        raise NoEdges("graph has no edges")
    c, size, comp = best
    return c, size, frozenset(bits(comp))


def common_neighborhood_mask(g, s):
    s = _as_mask(s)
    if not s:
        raise EmptyQuery("common neighbourhood of the empty set")
    out = -1
    for v in bits(s):
        out &= g.masks[v]
    return out


def common_neighborhood(g, s):
    """Vertices adjacent to every member of ``s``."""
    return frozenset(bits(common_neighborhood_mask(g, s)))


# -- certificates -------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """A vertex set with a spanning tree whose edges all have ``color``."""

    color: int
    vertices: frozenset
    edges: tuple = ()

    def to_json(self):
        return {
            "color": self.color,
            "vertices": sorted(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, d):
        return cls(int(d["color"]), frozenset(d["vertices"]), tuple(tuple(e) for e in d["edges"]))


@dataclass(frozen=True)
class PartitionCertificate:
    blocks: tuple
    info: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.blocks)

    def to_json(self):
        return {"kind": "partition", "blocks": [b.to_json() for b in self.blocks]}


@dataclass(frozen=True)
class CoverCertificate:
    parts: tuple
    info: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.parts)

    def to_json(self):
        return {"kind": "cover", "blocks": [b.to_json() for b in self.parts]}


def certificate_from_json(d):
    blocks = tuple(Block.from_json(b) for b in d["blocks"])
    if d.get("kind", "partition") == "cover":
        return CoverCertificate(blocks)
    return PartitionCertificate(blocks)


def spanning_tree_edges(cg, color, mask):
    """BFS tree of ``mask`` in the color class; None if not connected."""
    table = cg.cmasks[color - 1]
    root = lowest(mask)
    seen = 1 << root
    frontier = [root]
    edges = []
    while frontier:
        nxt = []
        for u in frontier:
            new = table[u] & mask & ~seen
            if new:
                seen |= new
                for w in bits(new):
                    edges.append((min(u, w), max(u, w)))
                    nxt.append(w)
        frontier = nxt
    return edges if seen == mask else None


def block_from_mask(cg, color, mask):
    edges = spanning_tree_edges(cg, color, mask)
    if edges is None:
        raise ValueError(f"vertex set is not connected in color {color}")
    return Block(color, frozenset(bits(mask)), tuple(edges))


class Verdict(NamedTuple):
    ok: bool
    violation: str = None

    def __bool__(self):
        return self.ok


def _check_block(cg, i, block):
    verts = block.vertices
    if not verts:
        return f"block {i} is empty"
    for v in verts:
        if not 0 <= v < cg.n:
            return f"block {i}: vertex {v} out of range"
    if not 1 <= block.color <= cg.r:
        return f"block {i}: color {block.color} out of range"
    if len(block.edges) != len(verts) - 1:
        return f"block {i}: {len(block.edges)} tree edges for {len(verts)} vertices"
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    table = cg.cmasks[block.color - 1]
    for u, v in block.edges:
        if u not in parent or v not in parent:
            return f"block {i}: tree edge ({u}, {v}) leaves the block"
        if not table[u] >> v & 1:
            return f"block {i}: ({u}, {v}) is not an edge of color {block.color}"
        ru, rv = find(u), find(v)
        if ru == rv:
            return f"block {i}: tree edges contain a cycle at ({u}, {v})"
        parent[ru] = rv
    return None


def _verify(cg, blocks, disjoint):
    covered = 0
    for i, block in enumerate(blocks):
        bad = _check_block(cg, i, block)
        if bad:
            return Verdict(False, bad)
        m = to_mask(block.vertices)
        if disjoint and covered & m:
            return Verdict(False, f"vertex {lowest(covered & m)} lies in two blocks")
        covered |= m
    missing = ((1 << cg.n) - 1) & ~covered
    if missing:
        return Verdict(False, f"vertex {lowest(missing)} is not covered")
    return Verdict(True)


def verify_partition(cg, cert):
    """Check that the blocks are disjoint, exhaustive and each spanned by a
    tree in its own color."""
    return _verify(cg, cert.blocks, disjoint=True)


def verify_cover(cg, cert):
    return _verify(cg, cert.parts, disjoint=False)


# -- independence number -------------------------------------------------------

def _mis_exact(masks, n):
    cache = {}

    def mis(p):
        if p in cache:
            return cache[p]
        if not p:
            return 0
        pick, pick_deg = -1, -1
        for v in bits(p):
            d = popcount(masks[v] & p)
            if d > pick_deg:
                pick, pick_deg = v, d
        if pick_deg == 0:
            val = popcount(p)
        else:
            with_v = 1 + mis(p & ~masks[pick] & ~(1 << pick))
            without = mis(p & ~(1 << pick)) if with_v < popcount(p) - 1 else 0
            val = max(with_v, without)
        cache[p] = val
        return val

    return mis((1 << n) - 1)


def greedy_independent_set(g):
    """Min-degree greedy; returns a maximal independent set as a mask."""
    alive = (1 << g.n) - 1
    chosen = 0
    while alive:
        v = min(bits(alive), key=lambda u: (popcount(g.masks[u] & alive), u))
        chosen |= 1 << v
        alive &= ~g.masks[v] & ~(1 << v)
    return chosen


def independence_number(g, exact_limit=40):
    """``(alpha, is_exact)``; greedy lower bound above ``exact_limit``."""
    if g.n <= exact_limit:
        return _mis_exact(g.masks, g.n), True
    return popcount(greedy_independent_set(g)), False
