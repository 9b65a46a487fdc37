import itertools
import math
from pathlib import Path

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monotree.ecg import dumps_ecg
from monotree.errors import InputError, PreconditionViolated
from monotree.graph import Graph, mono_components
from monotree.oracles import tc_exact
from monotree.random_lab import (
    SweepConfig,
    adversarial_tc_lower_bound,
    affine_projection_coloring,
    check_common_neighborhoods,
    check_leaf_degradation,
    check_local_connectivity,
    find_witness_set,
    gnp_edge_arrays,
    p_formula,
    planted_two_coloring,
    random_coloring,
    sample_gnp,
    sample_min_degree,
    structural_lower_bound,
    threshold_sweep,
    tm_experiment,
    trial_seed,
    verify_witness,
)

from conftest import graphs, to_nx

GOLDEN = Path(__file__).parent / "golden"


# -- sampling -------------------------------------------------------------------

def test_gnp_extremes():
    assert sample_gnp(7, 0.0, 1).num_edges == 0
    assert sample_gnp(7, 1.0, 1) == Graph.complete(7)
    assert sample_gnp(1, 0.5, 1).num_edges == 0
    with pytest.raises(InputError):
        sample_gnp(5, 1.5, 0)


def test_gnp_reproducible():
    assert sample_gnp(300, 0.1, 42) == sample_gnp(300, 0.1, 42)
    assert sample_gnp(300, 0.1, (4, 2)) == sample_gnp(300, 0.1, (4, 2))
    assert sample_gnp(300, 0.1, 42) != sample_gnp(300, 0.1, 43)


def test_gnp_edge_count_within_four_sigma():
    n, p = 10**4, 0.01
    slots = n * (n - 1) // 2
    mean, sd = p * slots, math.sqrt(slots * p * (1 - p))
    for seed in range(100):
        us, vs = gnp_edge_arrays(n, p, seed)
        assert abs(us.size - mean) <= 4 * sd
        assert (us < vs).all() and vs.max() < n


def test_gnp_slots_are_uniform():
    # every slot should appear with frequency p; chi-square over the 15 slots of K_6
    n, p, reps = 6, 0.3, 4000
    counts = np.zeros((n, n))
    for seed in range(reps):
        us, vs = gnp_edge_arrays(n, p, seed)
        counts[us, vs] += 1
    obs = counts[np.triu_indices(n, 1)]
    expected = reps * p
    chi2 = (((obs - expected) ** 2) / (expected * (1 - p))).sum()
    assert chi2 < 40  # 15 degrees of freedom, p-value about 5e-4


def test_gnp_edges_distinct_and_in_range():
    us, vs = gnp_edge_arrays(500, 0.2, 3)
    pairs = set(zip(us.tolist(), vs.tolist()))
    assert len(pairs) == us.size


def test_random_coloring():
    g = Graph.complete(30)
    one = random_coloring(g, 1, 5)
    assert {c for _, _, c in one.edges()} == {1}
    cg = random_coloring(g, 3, 5)
    assert cg == random_coloring(g, 3, 5)
    counts = np.bincount([c for _, _, c in cg.edges()], minlength=4)[1:]
    exp = g.num_edges / 3
    assert (((counts - exp) ** 2) / exp).sum() < 14  # 2 degrees of freedom


def test_random_coloring_golden():
    cg = random_coloring(Graph.complete(4), 2, 2024)
    assert dumps_ecg(cg) == (GOLDEN / "k4_seed2024.ecg").read_text()


def test_planted_coloring_separates_pair():
    g = sample_gnp(60, 0.5, 1)
    cg = planted_two_coloring(g, 1)
    v = min(set(range(1, 60)) - set(g.neighbors(0)))
    assert not any(0 in c and v in c for _, c in mono_components(cg))


def test_sample_min_degree():
    for seed in range(5):
        g = sample_min_degree(40, 25, seed)
        assert g.min_degree() >= 25


# -- lemma checks -------------------------------------------------------------------------

def test_common_neighborhoods_r1_is_min_degree():
    g = sample_gnp(40, 0.3, 0)
    st_ = check_common_neighborhoods(g, 1, 0.3, samples=100)
    assert st_.exhaustive and st_.minimum == g.min_degree()
    assert st_.violations == sum(1 for v in range(40) if g.degree(v) < 40 * 0.3 / 2)


def test_common_neighborhoods_complete():
    st_ = check_common_neighborhoods(Graph.complete(12), 3, 1.0, samples=10**4)
    assert st_.minimum == st_.mean == 12 - 3 and st_.violations == 0


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=3, max_n=9), st.integers(1, 3))
def test_common_neighborhoods_exhaustive_matches_networkx(g, r):
    h = to_nx(g)
    sizes = [
        len(set.intersection(*(set(h[v]) for v in R)))
        for R in itertools.combinations(range(g.n), r)
    ]
    st_ = check_common_neighborhoods(g, r, 0.5, samples=10**6)
    assert st_.exhaustive and st_.minimum == min(sizes)
    assert st_.mean == pytest.approx(np.mean(sizes))


def test_common_neighborhoods_sampled_sets_are_sets():
    g = sample_gnp(50, 0.5, 1)
    st_ = check_common_neighborhoods(g, 3, 0.5, samples=500, seed=3)
    assert not st_.exhaustive and st_.sampled == 500 and len(set(st_.worst)) == 3


def test_checks_are_repeatable():
    g = sample_gnp(80, 0.4, 2)
    assert check_common_neighborhoods(g, 2, 0.4, 300, seed=1) == check_common_neighborhoods(g, 2, 0.4, 300, seed=1)
    assert check_local_connectivity(g, 2, 300, seed=1) == check_local_connectivity(g, 2, 300, seed=1)


def test_local_connectivity_complete():
    assert check_local_connectivity(Graph.complete(10), 2, 100).fraction == 1.0


def test_local_connectivity_detects_pendant_path():
    # 0 has neighbours 1 and 3 which are far apart on a path
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)])
    st_ = check_local_connectivity(g, 1, 100)
    assert st_.fraction < 1.0
    assert (0,) in st_.failures


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=3, max_n=8), st.integers(1, 2))
def test_local_connectivity_matches_networkx(g, r):
    h = to_nx(g)
    good = 0
    sets = list(itertools.combinations(range(g.n), r))
    for R in sets:
        common = set.intersection(*(set(h[v]) for v in R))
        good += bool(common) and nx.is_connected(h.subgraph(common))
    assert check_local_connectivity(g, r, 10**6).fraction == pytest.approx(good / len(sets))


def test_leaf_degradation():
    g = Graph.complete(30)
    res = check_leaf_degradation(g, [v for v in range(30) if v != 4], 1.0)
    assert res.bad == [] and res.bound == pytest.approx(9 * math.log(30))
    g = sample_gnp(200, 0.1, 1)
    res = check_leaf_degradation(g, range(100), 0.1)
    assert res.warn
    brute = [v for v in range(100, 200) if len(set(g.neighbors(v)) & set(range(100))) < 100 * 0.1 / 2]
    assert res.bad == brute


# -- witness sets ----------------------------------------------------------------------------

def brute_witness_exists(g, r, s):
    for xs in itertools.combinations(range(g.n), s):
        if verify_witness(g, r, xs).ok:
            return True
    return False


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=2, max_n=9), st.integers(1, 2))
def test_exact_witness_search(g, r):
    res = find_witness_set(g, r, r)
    assert res.exact
    assert (res.witness is not None) == brute_witness_exists(g, r, r)
    if res.witness is not None:
        assert verify_witness(g, r, res.witness).ok


def test_witness_complete_graph_none():
    res = find_witness_set(Graph.complete(8), 2, 2)
    assert res.witness is None and res.exact


def test_witness_r1_isolated_vertex():
    g = Graph.from_edges(4, [(0, 1), (1, 2)])
    assert find_witness_set(g, 1, 1).witness == frozenset({3})


def test_greedy_witness_is_valid_and_flagged():
    g = sample_gnp(200, 0.05, 0)
    res = find_witness_set(g, 3, 4, budget=50, seed=1)
    assert not res.exact
    if res.witness is not None:
        assert len(res.witness) == 4 and verify_witness(g, 3, res.witness).ok
    with pytest.raises(PreconditionViolated):
        find_witness_set(g, 3, 2)


def test_verify_witness_reports():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert "neighbour inside" in verify_witness(g, 2, [0, 1]).violation
    assert "dominates" in verify_witness(g, 2, [0, 2]).violation
    star = Graph.from_edges(5, [(0, 1), (0, 3), (2, 4)])
    assert "> r - 1" in verify_witness(star, 2, [1, 3]).violation
    assert verify_witness(star, 3, [1, 3]).ok


def test_adversarial_small_instances_agree_with_oracle():
    hits = 0
    for seed in range(300):
        n = 8 + seed % 5
        g = sample_gnp(n, 0.3, seed)
        if g.isolated_vertices():
            continue
        for r, s in ((2, 2), (2, 3)):
            res = adversarial_tc_lower_bound(g, r, s, budget=30, seed=seed)
            if res is None:
                continue
            hits += 1
            assert res.bound == s + 1
            assert tc_exact(res.coloring)[0] >= s + 1
    assert hits >= 20


def test_adversarial_complete_graph_none():
    assert adversarial_tc_lower_bound(Graph.complete(10), 2) is None


def test_structural_bound_rejects_shared_component():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    from monotree.graph import color_graph

    cg = color_graph(g, 2, [1, 1, 2])
    assert structural_lower_bound(cg, [0, 2]) is None


# -- tm experiments ---------------------------------------------------------------------------

def test_tm_experiment_empty():
    st_ = tm_experiment(20, 0.5, 3, 0, seed=1)
    assert st_.minimum is None and st_.flagged == []


def test_tm_affine_projection_on_k9():
    # 9 vertices onto the 4 points of AG(2, 2): class sizes 3, 2, 2, 2
    st_ = tm_experiment(9, 1.0, 3, 1, seed=0)
    assert st_.values["affine"] == [5]
    cg = affine_projection_coloring(Graph.complete(9), 2)
    assert max(len(c) for _, c in mono_components(cg)) == 5


def test_tm_experiment_flags():
    st_ = tm_experiment(60, 0.5, 3, 3, seed=2, eps=0.1)
    for kind, t, val in st_.flagged:
        assert val < st_.bound
    assert all(len(v) <= 3 for v in st_.values.values())


# -- sweeps --------------------------------------------------------------------------------------

def test_p_formulas():
    n = 2000
    assert p_formula("thm16i", n, 2) == pytest.approx((27 * math.log(n) / n) ** (1 / 3))
    assert p_formula("thm16i", 2000, 2) == pytest.approx(0.4682, abs=1e-4)
    assert p_formula("thm16ii", n, 2, C=40) == pytest.approx((40 * math.log(n) / n) ** (1 / 3))
    assert p_formula("thm16iii", n, 2, C=40) == pytest.approx((40 * math.log(n) / n) ** 0.5)
    w = 3 * math.log(math.log(n))
    assert p_formula("lem64i", n, 2) == pytest.approx(((2 * math.log(n) - w) / n) ** 0.5)
    assert p_formula("scaled", n, 3) == pytest.approx((3 * math.log(n) / n) ** (1 / 3))


def test_sweep_config_validation():
    with pytest.raises(InputError):
        SweepConfig(r=2, n_grid=[100], p_rule="nope", trials=1)
    with pytest.raises(InputError):
        SweepConfig(r=2, n_grid=[100], p_rule=[0.5], trials=0)
    with pytest.raises(InputError):
        SweepConfig(r=2, n_grid=[100], p_rule=[1.5], trials=1)
    with pytest.raises(InputError):
        SweepConfig.from_json({"r": 2, "n_grid": [10], "p_rule": [0.5], "trials": 1, "bogus": 1})


def test_trial_seeds_are_distinct():
    seeds = {trial_seed(7, c, t) for c in range(5) for t in range(50)}
    assert len(seeds) == 250


def test_sweep_deterministic_and_parallel_safe():
    cfg = SweepConfig(r=2, n_grid=[60, 90], p_rule="thm16i", trials=3, seed=11, record_time=False)
    a = threshold_sweep(cfg)
    assert len(a.rows) == 6
    assert a.to_csv() == threshold_sweep(cfg).to_csv()
    assert a.to_csv() == threshold_sweep(cfg, jobs=2).to_csv()
    assert a.to_csv().splitlines()[0] == "n,p,r,seed,outcome,parts,witness,millis"


def test_sweep_golden_row():
    cfg = SweepConfig(r=2, n_grid=[400], p_rule="thm16i", trials=1, seed=5, record_time=False)
    assert threshold_sweep(cfg).to_csv() == (GOLDEN / "sweep_thm16i.csv").read_text()


def test_sweep_witness_solver_and_error_tags():
    cfg = SweepConfig(r=2, n_grid=[300], p_rule="lem64i", multiplier=0.9, trials=4, seed=1, solver="witness")
    rep = threshold_sweep(cfg)
    assert rep.success_fraction() >= 0.5
    for row in rep.rows:
        if row.outcome == "success":
            assert row.parts == 3 and len(row.witness.split()) == 2
    cfg = SweepConfig(r=3, n_grid=[40], p_rule=[0.5], trials=2, seed=1, solver="gnp2")
    assert {row.outcome for row in threshold_sweep(cfg).rows} == {"error:WrongColorCount"}
