"""Random graphs, empirical checks of the random-graph lemmas, witness
search for the adversarial lower bound, and a seeded sweep harness."""

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .bitset import bits, lowest, popcount, to_mask
from .constructions import affine_point_class, build_obs32_coloring, build_obs34_coloring, is_prime
from .errors import InputError, MonoTreeError, PreconditionViolated
from .graph import ColoredGraph, Graph, Verdict, color_graph, largest_mono_component, verify_cover, verify_partition


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


# -- sampling ------------------------------------------------------------------

def gnp_edge_arrays(n, p, seed=None):
    """Endpoint arrays ``(us, vs)``, ``u < v``, of a G(n, p) sample.

    Geometric skipping over the ``n choose 2`` edge slots (row-major upper
    triangle), so the cost is proportional to the number of edges."""
    if not 0 <= p <= 1:
        raise InputError(f"p = {p} outside [0, 1]")
    if n < 0:
        raise InputError("n must be non-negative")
    slots = n * (n - 1) // 2
    if p == 0 or slots == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    if p == 1:
        us, vs = np.triu_indices(n, 1)
        return us.astype(np.int64), vs.astype(np.int64)
    rng = _rng(seed)
    chunks, pos = [], -1
    expected = slots * p
    size = int(expected + 5 * math.sqrt(expected) + 64)
    while True:
        gaps = rng.geometric(p, size=size)
        idx = pos + np.cumsum(gaps)
        chunks.append(idx[idx < slots])
        if idx[-1] >= slots:
            break
        pos = int(idx[-1])
        size = max(64, int((slots - pos) * p * 1.2) + 64)
    k = np.concatenate(chunks)
    # first slot of row u is u*n - u(u+1)/2
    rows = np.arange(n, dtype=np.int64)
    offsets = rows * n - rows * (rows + 1) // 2
    us = np.searchsorted(offsets, k, side="right") - 1
    vs = k - offsets[us] + us + 1
    return us, vs


def sample_gnp(n, p, seed=None):
    """G(n, p); ``seed`` may be an int, a tuple of ints or a Generator."""
    return Graph.from_arrays(n, *gnp_edge_arrays(n, p, seed))


def random_coloring(g, r, seed=None):
    """Uniform i.i.d. colors, aligned with ``g.edge_arrays()``."""
    if r < 1:
        raise InputError("r must be positive")
    us, _ = g.edge_arrays()
    return color_graph(g, r, _rng(seed).integers(1, r + 1, size=us.size))


def planted_two_coloring(g, seed=None):
    """Random 2-coloring, except that the edges at vertex 0 get color 1 and
    the edges at the lowest non-neighbour ``v`` of 0 get color 2.  Then 0 and
    ``v`` share no monochromatic component, which forces the two-tree branch
    of :func:`monotree.partitioners.gnp_two_color_partition`."""
    non = ((1 << g.n) - 1) & ~g.masks[0] & ~1
    if not non:
        raise PreconditionViolated("vertex 0 is adjacent to everything")
    v = lowest(non)
    us, vs = g.edge_arrays()
    colors = _rng(seed).integers(1, 3, size=us.size)
    colors[(us == 0) | (vs == 0)] = 1
    colors[(us == v) | (vs == v)] = 2
    return color_graph(g, 2, colors)


def sample_min_degree(n, min_deg, seed=None, p=None):
    """Random graph with minimum degree at least ``min_deg``: start from
    G(n, p) (default: dense enough) and add edges from each deficient vertex
    to random non-neighbours."""
    if not 0 <= min_deg <= n - 1:
        raise InputError(f"min degree {min_deg} impossible on {n} vertices")
    rng = _rng(seed)
    if p is None:
        p = min(1.0, (min_deg + 1) / max(n - 1, 1))
    g = sample_gnp(n, p, rng)
    adj = [set(g.neighbors(v)) for v in range(n)]
    for v in range(n):
        short = min_deg - len(adj[v])
        if short > 0:
            pool = np.array([w for w in range(n) if w != v and w not in adj[v]])
            for w in rng.choice(pool, size=short, replace=False).tolist():
                adj[v].add(w)
                adj[w].add(v)
    return Graph.from_edges(n, [(u, w) for u in range(n) for w in adj[u] if u < w])


# -- lemma checks ----------------------------------------------------------------

def _sample_rsets(n, r, samples, rng):
    """``samples`` random r-subsets (rows), or all of them when there are
    at most ``samples``.  Returns (array, exhaustive)."""
    if math.comb(n, r) <= samples:
        return np.array(list(combinations(range(n), r)), dtype=np.int64).reshape(-1, r), True
    out = rng.integers(0, n, size=(samples, r))
    while True:
        s = np.sort(out, axis=1)
        dup = (np.diff(s, axis=1) == 0).any(axis=1) if r > 1 else np.zeros(samples, dtype=bool)
        if not dup.any():
            return out, False
        out[dup] = rng.integers(0, n, size=(int(dup.sum()), r))


def _common(g, row):
    m = -1
    for v in row:
        m &= g.masks[v]
    return m


class CommonNeighbourhoodStats(NamedTuple):
    minimum: int
    mean: float
    violations: int
    sampled: int
    exhaustive: bool
    bound: float
    worst: tuple


def check_common_neighborhoods(g, r, p, samples=10**5, seed=None):
    """Sizes of ``N(R)`` (vertices adjacent to all of R) over random r-sets R,
    against the bound ``n p^r / 2``."""
    sets, exhaustive = _sample_rsets(g.n, r, samples, _rng(seed))
    bound = g.n * p**r / 2
    sizes = np.array([popcount(_common(g, row)) for row in sets.tolist()], dtype=np.int64)
    if sizes.size == 0:
        return CommonNeighbourhoodStats(0, 0.0, 0, 0, exhaustive, bound, ())
    i = int(sizes.argmin())
    return CommonNeighbourhoodStats(
        int(sizes[i]), float(sizes.mean()), int((sizes < bound).sum()),
        int(sizes.size), exhaustive, bound, tuple(sets[i].tolist()),
    )


class ConnectivityStats(NamedTuple):
    fraction: float
    sampled: int
    failures: tuple  # first few r-sets whose common neighbourhood is not connected
    exhaustive: bool


def check_local_connectivity(g, r, samples=10**4, seed=None, keep=5):
    """Fraction of sampled r-sets whose common neighbourhood induces a
    connected graph.  An empty common neighbourhood counts as a failure."""
    sets, exhaustive = _sample_rsets(g.n, r, samples, _rng(seed))
    good, failures = 0, []
    for row in sets.tolist():
        m = _common(g, row) & ((1 << g.n) - 1)
        if m and g.is_connected_on(m):
            good += 1
        elif len(failures) < keep:
            failures.append(tuple(row))
    total = len(sets)
    return ConnectivityStats(good / total if total else 1.0, total, tuple(failures), exhaustive)


class LeafDegradation(NamedTuple):
    bad: list
    warn: bool  # |l| below 80 log n / p, the size the bound is stated for
    bound: float  # 9 log n / p


def check_leaf_degradation(g, l, p):
    """Vertices outside ``l`` with fewer than ``|l| p / 2`` neighbours in it."""
    lm = to_mask(l) if not isinstance(l, int) else l
    size = popcount(lm)
    n = g.n
    logn = math.log(n) if n > 1 else 0.0
    need = size * p / 2
    bad = [v for v in range(n) if not lm >> v & 1 and popcount(g.masks[v] & lm) < need]
    warn = size < 80 * logn / p
    return LeafDegradation(bad, warn, 9 * logn / p)


# -- witness sets ------------------------------------------------------------------

def verify_witness(g, r, s):
    """Independent, not dominating, and no vertex with ``r`` or more
    neighbours in the set."""
    sm = to_mask(s)
    if not sm:
        return Verdict(False, "empty set")
    closed = sm
    for x in bits(sm):
        if g.masks[x] & sm:
            return Verdict(False, f"{x} has a neighbour inside the set")
        closed |= g.masks[x]
    if closed == (1 << g.n) - 1:
        return Verdict(False, "the set dominates every vertex")
    for v in range(g.n):
        d = popcount(g.masks[v] & sm)
        if d > r - 1:
            return Verdict(False, f"vertex {v} has {d} > r - 1 neighbours in the set")
    return Verdict(True)


class WitnessResult(NamedTuple):
    witness: frozenset  # None if nothing was found
    exact: bool  # True when None means "no such set exists"
    tries: int


def _witness_exact(g, r):
    n = g.n
    full = (1 << n) - 1
    if r == 1:
        for v in range(n):
            if not g.masks[v] and n > 1:
                return frozenset({v})
        return None
    for a in range(n):
        ma = g.masks[a]
        closed_a = ma | (1 << a)
        for b in bits(full & ~closed_a & ~((1 << (a + 1)) - 1)):
            mb = g.masks[b]
            if not ma & mb and closed_a | mb | (1 << b) != full:
                return frozenset({a, b})
    return None


def _witness_greedy(g, r, s, budget, rng):
    n = g.n
    full = (1 << n) - 1
    nbrs = [np.array(bits(g.masks[v]), dtype=np.int64) for v in range(n)]
    for attempt in range(1, budget + 1):
        order = rng.permutation(n).tolist()
        count = np.zeros(n, dtype=np.int64)
        chosen, blocked, closed = [], 0, 0
        for x in order:
            if blocked >> x & 1:
                continue
            nx = nbrs[x]
            if nx.size and count[nx].max() >= r - 1:
                continue
            chosen.append(x)
            count[nx] += 1
            blocked |= g.masks[x] | (1 << x)
            closed |= g.masks[x] | (1 << x)
            if len(chosen) == s:
                break
        if len(chosen) == s and closed != full:
            return frozenset(chosen), attempt
    return None, budget


def find_witness_set(g, r, s, budget=200, seed=None):
    """A set of ``s`` vertices that is independent, not dominating, and has
    at most ``r - 1`` neighbours at every vertex.

    For ``s = r <= 2`` the search is exhaustive (``exact=True``, and None
    means none exists).  Otherwise randomized greedy with ``budget``
    restarts; None is then inconclusive."""
    if r < 1 or s < r:
        raise PreconditionViolated(f"need s >= r >= 1, got r = {r}, s = {s}")
    if s == r <= 2:
        w = _witness_exact(g, r)
        tries = 1
        exact = True
    else:
        w, tries = _witness_greedy(g, r, s, budget, _rng(seed))
        exact = False
    if w is not None:
        verdict = verify_witness(g, r, w)
        if not verdict.ok:
            raise AssertionError(f"witness search returned a bad set: {verdict.violation}")
    return WitnessResult(w, exact, tries)


class AdversarialResult(NamedTuple):
    coloring: ColoredGraph
    bound: int  # the coloring needs at least this many components
    witness: frozenset
    spare: int  # a vertex that no witness component reaches


def structural_lower_bound(cg, witness):
    """``len(witness) + 1`` if no monochromatic component holds two witness
    vertices and some vertex with a color-r edge lies in no component of a
    witness vertex; otherwise None.  Either way it is a valid lower bound
    on the cover number when it is returned."""
    w = sorted(witness)
    wm = to_mask(w)
    reach = 0
    for comps in cg.components:
        for comp in comps:
            hit = comp & wm
            if hit & (hit - 1):
                return None
            if hit:
                reach |= comp
    spare = cg.cmasks[cg.r - 1]
    for v in range(cg.n):
        if spare[v] and not (reach | wm) >> v & 1:
            return len(w) + 1, v
    return None


def adversarial_tc_lower_bound(g, r, s=None, budget=200, seed=None):
    """Witness set followed by the adversarial coloring around it.  On
    success the returned coloring has cover number at least ``s + 1``,
    checked structurally."""
    s = r if s is None else s
    res = find_witness_set(g, r, s, budget, seed)
    if res.witness is None:
        return None
    cg = build_obs34_coloring(g, res.witness, r)
    cert = structural_lower_bound(cg, res.witness)
    if cert is None:
        raise AssertionError("adversarial coloring failed its structural check")
    return AdversarialResult(cg, cert[0], res.witness, cert[1])


# -- largest monochromatic components ------------------------------------------------

def affine_projection_coloring(g, q):
    """Color ``uv`` by the parallel class of the line through the affine
    points ``u mod q^2`` and ``v mod q^2`` (color 1 when they coincide)."""
    if not is_prime(q):
        raise PreconditionViolated(f"{q} is not prime")
    k = q * q
    cls = np.ones((k, k), dtype=np.int64)
    pts = [(a, b) for a in range(q) for b in range(q)]
    for i in range(k):
        for j in range(k):
            if i != j:
                cls[i, j] = affine_point_class(pts[i], pts[j], q) + 1
    us, vs = g.edge_arrays()
    return color_graph(g, q + 1, cls[us % k, vs % k])


def _greedy_independent(g, r, rng):
    blocked, out = 0, []
    for v in rng.permutation(g.n).tolist():
        if not blocked >> v & 1:
            out.append(v)
            blocked |= g.masks[v] | (1 << v)
            if len(out) == r:
                return sorted(out)
    return None


@dataclass
class TmStats:
    values: dict = field(default_factory=dict)  # coloring kind -> list of largest component orders
    bound: float = 0.0
    flagged: list = field(default_factory=list)  # (kind, trial, value) below the bound

    @property
    def minimum(self):
        allv = [v for vals in self.values.values() for v in vals]
        return min(allv) if allv else None


def tm_experiment(n, p, r, trials, seed=None, eps=0.1, kinds=("random", "obs32", "affine")):
    """Largest monochromatic component over random and crafted colorings of
    G(n, p), flagged against ``(1 - eps) n / (r - 1)``."""
    stats = TmStats({k: [] for k in kinds}, (1 - eps) * n / (r - 1) if r > 1 else float(n))
    ss = np.random.SeedSequence(seed)
    for t, child in enumerate(ss.spawn(trials)):
        rng = np.random.default_rng(child)
        g = sample_gnp(n, p, rng)
        if g.num_edges == 0:
            continue
        for kind in kinds:
            if kind == "random":
                cg = random_coloring(g, r, rng)
            elif kind == "obs32":
                xs = _greedy_independent(g, r, rng)
                if xs is None:
                    continue
                cg = build_obs32_coloring(g, xs)
            elif kind == "affine":
                if r < 3 or not is_prime(r - 1):
                    continue
                cg = affine_projection_coloring(g, r - 1)
            else:
                raise InputError(f"unknown coloring kind {kind!r}")
            val = largest_mono_component(cg)[1]
            stats.values[kind].append(val)
            if val < stats.bound:
                stats.flagged.append((kind, t, val))
    return stats


# -- sweeps -------------------------------------------------------------------------

P_TAGS = ("thm16i", "thm16ii", "thm16iii", "lem64i", "scaled")
SOLVERS = ("gnp2", "aux", "hk", "cover2", "witness")
CSV_COLUMNS = ("n", "p", "r", "seed", "outcome", "parts", "witness", "millis")


def p_formula(tag, n, r, C=40.0, omega_factor=3.0):
    logn = math.log(n)
    if tag == "thm16i":
        return (27 * logn / n) ** (1 / 3)
    if tag == "thm16ii":
        return (C * logn / n) ** (1 / (r + 1))
    if tag == "thm16iii":
        return (C * logn / n) ** (1 / r)
    if tag == "lem64i":
        omega = omega_factor * math.log(logn)
        return max(r * logn - omega, 0.0) ** (1 / r) / n ** (1 / r)
    if tag == "scaled":
        return (r * logn / n) ** (1 / r)
    raise InputError(f"unknown p rule {tag!r}")


@dataclass
class SweepConfig:
    r: int
    n_grid: list
    p_rule: object  # list of p values, or a tag from P_TAGS
    trials: int
    seed: int = 0
    solver: str = "gnp2"
    multiplier: float = 1.0
    C: float = 40.0
    omega_factor: float = 3.0
    s: int = None  # witness size for the "witness" solver, default r
    record_time: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise InputError("trials must be at least 1")
        if self.r < 1:
            raise InputError("r must be positive")
        if self.solver not in SOLVERS:
            raise InputError(f"unknown solver {self.solver!r}")
        if isinstance(self.p_rule, str) and self.p_rule not in P_TAGS:
            raise InputError(f"unknown p rule {self.p_rule!r}")
        self.n_grid = [int(n) for n in self.n_grid]
        for n, p in self.cells():
            if not 0 < p <= 1:
                raise InputError(f"p = {p} for n = {n} outside (0, 1]")

    def cells(self):
        if isinstance(self.p_rule, str):
            return [
                (n, min(1.0, self.multiplier * p_formula(self.p_rule, n, self.r, self.C, self.omega_factor)))
                for n in self.n_grid
            ]
        return [(n, float(p)) for n in self.n_grid for p in self.p_rule]

    @classmethod
    def from_json(cls, d):
        known = {k: d[k] for k in cls.__dataclass_fields__ if k in d}
        extra = set(d) - set(known)
        if extra:
            raise InputError(f"unknown config keys {sorted(extra)}")
        return cls(**known)

    def to_json(self):
        return asdict(self)


class SweepRow(NamedTuple):
    n: int
    p: float
    r: int
    seed: int
    outcome: str
    parts: int
    witness: str
    millis: int

    def csv_fields(self):
        return [self.n, f"{self.p:.6g}", self.r, self.seed, self.outcome, self.parts, self.witness, self.millis]


@dataclass
class ExperimentReport:
    config: SweepConfig
    rows: list

    def success_fraction(self, n=None):
        rows = [row for row in self.rows if n is None or row.n == n]
        return sum(row.outcome == "success" for row in rows) / len(rows) if rows else 0.0

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in self.rows:
            w.writerow(row.csv_fields())
        return buf.getvalue()


def trial_seed(base, cell, trial):
    """Counter-based seed, independent of execution order."""
    return int(np.random.SeedSequence([base, cell, trial]).generate_state(1)[0])


def _run_trial(task):
    from . import partitioners as P

    cfg, n, p, seed = task
    start = time.perf_counter()
    parts, witness = 0, ""
    try:
        g = sample_gnp(n, p, (seed, 0))
        if cfg.solver == "witness":
            res = adversarial_tc_lower_bound(g, cfg.r, cfg.s, seed=(seed, 2))
            if res is None:
                outcome = "fail"
            else:
                outcome, parts = "success", res.bound
                witness = " ".join(map(str, sorted(res.witness)))
        else:
            cg = random_coloring(g, cfg.r, (seed, 1))
            if cfg.solver == "gnp2":
                cert = P.gnp_two_color_partition(cg)
                limit = 2
            elif cfg.solver == "hk":
                cert = P.hk_partition(cg)
                limit = cfg.r
            elif cfg.solver == "cover2":
                cert = P.two_color_cover(cg)
                limit = 2
            else:
                cert = P.aux_cover(cg)
                limit = cfg.r**2
            if cert is None:
                outcome = "fail"
            else:
                parts = len(cert)
                check = verify_cover if cfg.solver in ("aux", "cover2") else verify_partition
                ok = check(cg, cert).ok and parts <= limit
                outcome = "success" if ok else "fail"
    except MonoTreeError as exc:
        outcome = "error:" + type(exc).__name__
    millis = int(round((time.perf_counter() - start) * 1000)) if cfg.record_time else 0
    return SweepRow(n, p, cfg.r, seed, outcome, parts, witness, millis)


def threshold_sweep(cfg, jobs=1):
    """One row per (cell, trial).  Per-trial failures become error tags."""
    tasks = [
        (cfg, n, p, trial_seed(cfg.seed, ci, t))
        for ci, (n, p) in enumerate(cfg.cells())
        for t in range(cfg.trials)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_trial, tasks))
    else:
        rows = [_run_trial(t) for t in tasks]
    return ExperimentReport(cfg, rows)
