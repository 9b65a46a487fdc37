import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monotree.bitset import to_mask
from monotree.constructions import (
    affine_point_class,
    build_affine_coloring,
    build_example35,
    build_example37,
    build_obs32_coloring,
    build_obs34_coloring,
    example35_min_degree,
    example37_min_degree,
    is_prime,
)
from monotree.errors import NotIndependent, NotPrime, PreconditionViolated, TooSmall
from monotree.graph import Graph, largest_mono_component, mono_components
from monotree.oracles import distinct_color_cover_exists, tc_exact, tp_exact

from conftest import graphs, nx_components, to_nx


def _shares(cg, a, b):
    return any(a in comp and b in comp for _, comp in mono_components(cg))


# -- independent-set colorings --------------------------------------------------

@given(graphs(min_n=2, max_n=10), st.data())
def test_obs32_separates_the_independent_set(g, data):
    h = to_nx(g)
    indep = nx.maximal_independent_set(h, seed=data.draw(st.integers(0, 100)))
    xs = sorted(indep)[: data.draw(st.integers(1, len(indep)))]
    cg = build_obs32_coloring(g, xs)
    assert cg.r == len(xs)
    for a, b in itertools.combinations(xs, 2):
        assert not _shares(cg, a, b)
    if not g.isolated_vertices() and len(xs) >= 1:
        assert tc_exact(cg)[0] >= len(xs)


def test_obs32_rejects_adjacent():
    with pytest.raises(NotIndependent):
        build_obs32_coloring(Graph.complete(3), [0, 1])


def _witnesses(g, r, s):
    full = set(range(g.n))
    for xs in itertools.combinations(range(g.n), s):
        m = to_mask(xs)
        if any(g.masks[x] & m for x in xs):
            continue
        closed = set(xs).union(*(g.neighbors(x) for x in xs))
        if closed == full:
            continue
        if all(bin(g.masks[v] & m).count("1") <= r - 1 for v in range(g.n)):
            yield list(xs)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=4, max_n=9), st.integers(2, 3))
def test_obs34_forces_s_plus_one(g, r):
    if g.isolated_vertices():
        return
    for s in (r, r + 1):
        for xs in itertools.islice(_witnesses(g, r, s), 2):
            cg = build_obs34_coloring(g, xs, r)
            assert tc_exact(cg)[0] >= s + 1
            for a, b in itertools.combinations(xs, 2):
                assert not _shares(cg, a, b)


def test_obs34_preconditions():
    path = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    with pytest.raises(PreconditionViolated, match="r ="):
        build_obs34_coloring(path, [0], 2)
    with pytest.raises(PreconditionViolated, match="adjacent"):
        build_obs34_coloring(path, [0, 1], 2)
    with pytest.raises(PreconditionViolated, match="neighbours in x"):
        build_obs34_coloring(path, [0, 2], 2)  # vertex 1 sees both
    with pytest.raises(PreconditionViolated, match="dominating"):
        build_obs34_coloring(Graph.from_edges(4, [(0, 1), (2, 3)]), [0, 2], 2)
    longer = Graph.from_edges(6, [(i, i + 1) for i in range(5)])
    cg = build_obs34_coloring(longer, [0, 3], 2)
    assert tc_exact(cg)[0] >= 3


# -- Example with minimum degree one below the cover threshold --------------------

@pytest.mark.parametrize("r,n", [(1, 4), (1, 7), (2, 6), (2, 8), (2, 11), (2, 14), (3, 8), (3, 12), (3, 13), (4, 10), (4, 23)])
def test_example35_min_degree(r, n):
    cg, meta = build_example35(r, n)
    h = to_nx(cg.graph)
    assert min(d for _, d in h.degree()) == meta.promised_min_degree == example35_min_degree(r, n)
    assert meta.bound_kind == "tc_gt" and meta.promised_lower_bound == r + 1
    threshold = -(-(r * (n - r - 1) + 1) // (r + 1))
    assert meta.promised_min_degree == threshold - 1


@pytest.mark.parametrize("r,n", [(2, 6), (2, 8), (2, 9), (2, 11), (3, 8), (3, 9), (3, 10), (3, 12)])
def test_example35_needs_more_than_r(r, n):
    cg, _ = build_example35(r, n)
    assert tc_exact(cg)[0] > r


def test_example35_too_small():
    with pytest.raises(TooSmall):
        build_example35(2, 5)


# -- Example without a distinct-color cover ----------------------------------------

@pytest.mark.parametrize("r,n", [(1, 2), (1, 5), (2, 4), (2, 8), (2, 9), (2, 13), (3, 8), (3, 11), (3, 16)])
def test_example37(r, n):
    cg, meta = build_example37(r, n)
    h = to_nx(cg.graph)
    assert min(d for _, d in h.degree()) == meta.promised_min_degree == example37_min_degree(r, n)
    found, _ = distinct_color_cover_exists(cg)
    assert not found


def test_example37_edge_colors_are_first_agreeing_coordinate():
    cg, _ = build_example37(2, 8)
    # classes of size 2: 00 {0,1}, 01 {2,3}, 10 {4,5}, 11 {6,7}
    assert cg.color(0, 2) == 1  # 00 vs 01 agree first in coordinate 1
    assert cg.color(0, 4) == 2  # 00 vs 10 agree only in coordinate 2
    assert not cg.graph.has_edge(0, 6)
    assert cg.color(0, 1) == 1


def test_example37_too_small():
    with pytest.raises(TooSmall):
        build_example37(3, 7)


# -- affine planes ---------------------------------------------------------------------

def test_is_prime():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("q", [2, 3, 5])
def test_affine_lines_are_the_components(q):
    cg, meta = build_affine_coloring(q)
    comps = nx_components(cg)
    assert len(comps) == q * (q + 1)
    assert all(len(c) == q for _, c in comps)
    assert cg.graph.num_edges == q * q * (q * q - 1) // 2
    assert largest_mono_component(cg)[1] == meta.promised_lower_bound == q
    # each color class is q disjoint cliques
    for c in range(1, q + 2):
        assert sum(1 for col, _ in comps if col == c) == q


@pytest.mark.parametrize("q,b", [(2, 2), (2, 3), (3, 2)])
def test_affine_blowup(q, b):
    cg, meta = build_affine_coloring(q, b)
    assert cg.n == q * q * b
    assert largest_mono_component(cg)[1] == q * b == meta.promised_lower_bound
    assert cg.graph.min_degree() == cg.n - 1


def test_affine_point_class_is_symmetric():
    q = 5
    pts = [(a, b) for a in range(q) for b in range(q)]
    for p1, p2 in itertools.combinations(pts, 2):
        assert affine_point_class(p1, p2, q) == affine_point_class(p2, p1, q)


def test_affine_k4_partition_number():
    cg, _ = build_affine_coloring(2)
    assert tp_exact(cg)[0] == tc_exact(cg)[0] == 2 == cg.r - 1


def test_affine_requires_prime():
    with pytest.raises(NotPrime):
        build_affine_coloring(4)
