import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st

from monotree.graph import ColoredGraph, Graph, color_graph


@st.composite
def graphs(draw, min_n=1, max_n=9, p=None):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def colored_graphs(draw, min_n=1, max_n=9, max_r=3, min_r=1, no_isolated=False, complete=False):
    n = draw(st.integers(max(min_n, 2) if no_isolated else min_n, max_n))
    r = draw(st.integers(min_r, max_r))
    pairs = list(itertools.combinations(range(n), 2))
    if complete:
        keep = [True] * len(pairs)
    else:
        keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, k in zip(pairs, keep) if k]
    if no_isolated:
        touched = {v for e in edges for v in e}
        for v in range(n):
            if v not in touched:
                w = (v + 1) % n
                e = (min(v, w), max(v, w))
                if n > 1 and e not in edges:
                    edges.append(e)
                touched.update(e)
    colors = draw(st.lists(st.integers(1, r), min_size=len(edges), max_size=len(edges)))
    edges = sorted(zip(edges, colors))
    g = Graph.from_edges(n, [e for e, _ in edges])
    return color_graph(g, r, [c for _, c in edges])


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def color_nx(cg, c):
    h = nx.Graph()
    h.add_nodes_from(range(cg.n))
    h.add_edges_from((u, v) for u, v, col in cg.edges() if col == c)
    return h


def nx_components(cg):
    """(color, frozenset) for every component with at least one edge."""
    out = set()
    for c in range(1, cg.r + 1):
        h = color_nx(cg, c)
        for comp in nx.connected_components(h):
            if len(comp) > 1:
                out.add((c, frozenset(comp)))
    return out


def random_colored(n, r, p, seed):
    rng = np.random.default_rng(seed)
    a = np.triu(rng.random((n, n)) < p, 1)
    us, vs = np.nonzero(a)
    return ColoredGraph.from_arrays(n, r, us, vs, rng.integers(1, r + 1, us.size))


def leaf_instance(rng, k, ny, nz, r=None, slack=1):
    """Random y/z instance whose z-vertices have more than k log|z| colored
    neighbours in y (colors 1..k)."""
    r = r or k
    n = ny + nz
    y, z = list(range(ny)), list(range(ny, n))
    need = math.floor(k * math.log(nz)) + slack if nz > 1 else 1
    us, vs, cs = [], [], []
    for v in z:
        d = int(rng.integers(need, ny + 1))
        for w in rng.choice(ny, size=d, replace=False).tolist():
            us.append(w)
            vs.append(v)
            cs.append(int(rng.integers(1, r + 1)) if r > k else int(rng.integers(1, k + 1)))
    return ColoredGraph.from_arrays(n, r, us, vs, cs), y, z


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
