"""Acceptance suite. Run with ``pytest tests/test_acceptance.py`` for a per-criterion summary."""

import csv
import io
import math
import random
import time
from fractions import Fraction

import pytest

from blackbox_sampling import calculator
from blackbox_sampling.calculator import delta_star, fidelity_bound, max_c, objective, runtime
from blackbox_sampling.cli import main
from blackbox_sampling.framework import (
    RunConfig,
    brute_force_solver,
    sampling_with_a_black_box,
    t_star,
)
from blackbox_sampling.hypergraph import gen_random, parse, remove_vertex, serialize
from blackbox_sampling.oracle import brute_opt, estimate_driver_success, estimate_sampling_success
from blackbox_sampling.problems import get_problem
from blackbox_sampling.procedure import multi_sample
from blackbox_sampling.rng import Rng
from blackbox_sampling.sampling import core, step_for

TABLE_TOL = 1.5e-3
CASES = 10_000

FVS_OURS = {
    "1.1": 2.483, "1.2": 2.284, "1.3": 2.101, "1.4": 1.932, "1.5": 1.732,
    "1.6": 1.552, "1.7": 1.390, "1.8": 1.246, "1.9": 1.116,
}
PVC_OURS = {
    "1.1": 1.6345, "1.2": 1.5641, "1.3": 1.4968, "1.4": 1.4323, "1.5": 1.3707,
    "1.6": 1.3117, "1.7": 1.2311, "1.8": 1.1487, "1.9": 1.0718,
}
PVC_FELLOWS = {
    "1.1": 1.6628, "1.2": 1.6189, "1.3": 1.5762, "1.4": 1.5345, "1.5": 1.4940,
    "1.6": 1.4545, "1.7": 1.416, "1.8": 1.3787, "1.9": 1.3423,
}
POVD_OURS = {"1.1": 3.6412, "1.5": 2.8010, "2": 2.0417, "3": 1.4115, "5": 1.0624, "6.9": 1.0001}


def table_via_cli(tmp_path, problem, columns, *beta_args):
    out = tmp_path / f"{problem}.csv"
    code = main(["table", "--problem", problem, *beta_args, "--columns", columns, "-o", str(out)])
    assert code == 0
    raw = (tmp_path / f"{problem}.raw.csv").read_text()
    return {row["beta"]: row for row in csv.DictReader(io.StringIO(raw))}


# --- 1-3: tables ----------------------------------------------------------------


@pytest.mark.criterion(1)
def test_criterion_1_fvs_table(tmp_path, capsys):
    start = time.perf_counter()
    rows = table_via_cli(tmp_path, "fvs", "ours", "--beta-range", "1.1:1.9:0.1")
    elapsed = time.perf_counter() - start
    assert list(rows) == list(FVS_OURS)
    for beta, expected in FVS_OURS.items():
        assert abs(float(rows[beta]["ours"]) - expected) <= TABLE_TOL, beta
    assert elapsed < 1.0


@pytest.fixture(scope="module")
def pvc_table(tmp_path_factory):
    start = time.perf_counter()
    rows = table_via_cli(tmp_path_factory.mktemp("pvc"), "3pvc", "ours,fellows", "--beta-range", "1.1:1.9:0.1")
    return rows, time.perf_counter() - start


@pytest.mark.criterion(2)
@pytest.mark.parametrize("beta", list(PVC_OURS))
def test_criterion_2_pvc_table_row(pvc_table, beta):
    rows, elapsed = pvc_table
    assert elapsed < 1.0
    ours, fellows = float(rows[beta]["ours"]), float(rows[beta]["fellows"])
    assert abs(fellows - PVC_FELLOWS[beta]) <= TABLE_TOL, (beta, fellows)
    assert abs(ours - PVC_OURS[beta]) <= TABLE_TOL, (beta, ours, PVC_OURS[beta])


@pytest.mark.criterion(3)
def test_criterion_3_povd_table(tmp_path):
    start = time.perf_counter()
    rows = table_via_cli(tmp_path, "povd", "ours", "--betas", ",".join(POVD_OURS))
    elapsed = time.perf_counter() - start
    for beta, expected in POVD_OURS.items():
        assert abs(float(rows[beta]["ours"]) - expected) <= TABLE_TOL, beta
    assert elapsed < 1.0


# --- 4-6: calculator --------------------------------------------------------------


@pytest.mark.criterion(4)
def test_criterion_4_delta_star_closed_forms():
    start = time.perf_counter()
    points = 0
    for i in range(20):
        q = 0.03 + 0.94 * i / 19
        for j in range(25):
            c = 1.0 + (1.0 / q - 1.0) * j / 24
            assert abs(delta_star("right", 1, c, q) - 1.0 / (q * c)) <= 1e-8, (c, q)
            points += 1
    assert points == 500
    for i in range(1, 201):
        q = 0.5 * i / 200
        assert abs(delta_star("left", 2, 1, q) - 1.0 / (1.0 - q)) <= 1e-8, q
    assert abs(delta_star("left", 3, 1, 0.25) - 2.357) <= 5e-4
    assert abs(delta_star("left", 7 / 6, 1, 0.5) - 1.008) <= 5e-4
    assert time.perf_counter() - start < 5.0


@pytest.mark.criterion(5)
def test_criterion_5_dominates_fidelity_transformations():
    start = time.perf_counter()
    points = 0
    for eta in range(2, 8):
        c = Fraction(11, 10)
        while c < eta:
            beta = Fraction(105, 100)
            while beta <= eta - Fraction(5, 100):
                ours = runtime(1, float(beta), float(c), 1 / eta).d
                theirs = fidelity_bound(float(beta), float(c), eta)
                assert ours < theirs, (eta, c, beta, ours, theirs)
                points += 1
                beta += Fraction(5, 100)
            c += Fraction(2, 10)
    assert points >= 1000
    assert time.perf_counter() - start < 5.0


def random_query(rng):
    while True:
        q = rng.uniform(0.1, 0.5)
        alpha = rng.choice([1.0, rng.uniform(1.0, 1.0 / q)])
        c = rng.uniform(1.0, max_c(alpha, q))
        beta = rng.uniform(1.0, 1.0 / q - 0.01)
        if abs(beta - alpha) > 0.01:
            return alpha, beta, c, q


@pytest.mark.criterion(6)
def test_criterion_6_grid_minimum():
    start = time.perf_counter()
    rng = random.Random(6)
    branches = set()
    for _ in range(50):
        alpha, beta, c, q = random_query(rng)
        lo, hi = (beta, 1.0 / q) if beta > alpha else (1.0, beta)
        grid = (lo + (hi - lo) * i / 9999 for i in range(10_000))
        best = min(objective(d, alpha, beta, c, q) for d in grid if d != alpha)
        result = runtime(alpha, beta, c, q)
        branches.add(result.branch)
        assert abs(best - result.d) <= 1e-4, (alpha, beta, c, q, best, result)
    assert branches == {"left", "right", "middle"}
    assert time.perf_counter() - start < 10.0


# --- 7-8: statistical guarantees -------------------------------------------------


def random_instance(name, rng, n_max=12):
    n = rng.randint(3, n_max)
    seed = rng.randrange(2**32)
    if name == "dfvt":
        return gen_random("tournament", n, seed=seed)
    if name == "3hs":
        return gen_random("uniform_hyper", n, 0.1, seed=seed)
    return gen_random("gnp", n, 0.3, seed)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", ["vc", "3hs", "3pvc", "fvs", "povd", "dfvt"])
def test_criterion_7_sampling_step(name):
    spec = get_problem(name)
    step = step_for(spec)
    draws = 2000
    floor = float(spec.q) - 3 * math.sqrt(1 / (2 * draws))
    rng = random.Random(f"criterion-7-{name}")
    done = 0
    while done < 100:
        g = random_instance(name, rng)
        if spec.in_property(g):
            continue
        report = estimate_sampling_success(step, g, draws, Rng(7).spawn(done))
        assert report.estimate >= floor, (name, serialize(g), report)
        done += 1


def driver_instances(name, opt, count, seed):
    spec = get_problem(name)
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        g = gen_random("gnp", rng.randint(7, 12), rng.choice([0.2, 0.25, 0.3]), rng.randrange(2**32))
        if brute_opt(spec, g).opt == opt:
            found.append(g)
    return found


@pytest.mark.criterion(8)
@pytest.mark.parametrize("name, opt", [("fvs", 2), ("vc", 3)])
def test_criterion_8_driver(name, opt):
    spec = get_problem(name)
    step = step_for(spec)
    solver = brute_force_solver(spec)
    config = RunConfig(Fraction(3, 2), seed=8)
    for g in driver_instances(name, opt, 20, f"criterion-8-{name}"):
        sample = sampling_with_a_black_box(spec, step, solver, g, opt, config)
        assert not sample.exact_path and not sample.capped
        report = estimate_driver_success(spec, step, solver, g, opt, config, 200)
        assert report.invalid == 0, serialize(g)
        assert report.estimate >= 0.5, (serialize(g), report)


# --- 9: structural invariants ---------------------------------------------------

INVARIANT_PROBLEMS = ["vc", "3pvc", "fvs", "povd", "3hs", "dfvt"]


def _peel_randomly(g, rng):
    alive = set(g.vertices)
    nbrs = g.neighbors
    while True:
        low = [v for v in alive if len(nbrs[v] & alive) <= 1]
        if not low:
            return tuple(sorted(alive))
        alive.discard(rng.choice(low))


@pytest.mark.criterion(9)
def test_criterion_9_multi_sample_size():
    rng = random.Random(91)
    for i in range(CASES):
        spec = get_problem(rng.choice(INVARIANT_PROBLEMS))
        g = random_instance(spec.name, rng, 10)
        delta = Fraction(rng.randint(10, int(10 / spec.q)), 10)
        t = rng.randint(0, 4)
        s = multi_sample(step_for(spec), delta, g, t, Rng(i))
        assert len(set(s)) == len(s) <= math.floor(delta * t)


@pytest.mark.criterion(9)
def test_criterion_9_core_confluence():
    rng = random.Random(92)
    for _ in range(CASES):
        g = gen_random("gnp", rng.randint(1, 12), rng.choice([0.1, 0.2, 0.3]), rng.randrange(2**32))
        assert core(g)[1] == _peel_randomly(g, rng)


@pytest.mark.criterion(9)
def test_criterion_9_core_preserves_fvs_opt():
    fvs = get_problem("fvs")
    rng = random.Random(93)
    for _ in range(CASES):
        g = gen_random("gnp", rng.randint(1, 10), rng.choice([0.15, 0.25, 0.35]), rng.randrange(2**32))
        assert brute_opt(fvs, core(g)[0]).opt == brute_opt(fvs, g).opt


@pytest.mark.criterion(9)
def test_criterion_9_opt_drops_by_at_most_one():
    rng = random.Random(94)
    for _ in range(CASES):
        spec = get_problem(rng.choice(INVARIANT_PROBLEMS))
        g = random_instance(spec.name, rng, 8)
        v = rng.randrange(g.n)
        assert 0 <= brute_opt(spec, g).opt - brute_opt(spec, remove_vertex(g, v)).opt <= 1


@pytest.mark.criterion(9)
def test_criterion_9_t_star_bounds():
    rng = random.Random(95)
    checked = 0
    while checked < CASES:
        alpha = Fraction(rng.randint(10, 50), 10)
        beta = Fraction(rng.randint(10, 50), 10)
        if beta == alpha:
            continue
        if beta > alpha:
            delta = beta + Fraction(rng.randint(0, 30), 10)
        else:
            delta = Fraction(rng.randint(10, int(beta * 10)), 10)
        k = rng.randint(0, 100)
        t = t_star(alpha, beta, delta, k)
        x = (beta - alpha) / (delta - alpha) * k
        assert max(0, x - 1) <= t <= x + 1
        assert delta * t <= beta * k
        checked += 1


@pytest.mark.criterion(9)
def test_criterion_9_parse_serialize_round_trip():
    rng = random.Random(96)
    for _ in range(CASES):
        model = rng.choice(["gnp", "tournament", "uniform_hyper"])
        g = gen_random(model, rng.randint(1, 12), rng.random(), seed=rng.randrange(2**32), d=rng.randint(2, 4))
        text = serialize(g)
        h = parse(text, tournament=model == "tournament")
        assert h == g and serialize(h) == text


@pytest.mark.criterion(9)
def test_criterion_9_deterministic_replay():
    rng = random.Random(97)
    for i in range(CASES):
        spec = get_problem(rng.choice(INVARIANT_PROBLEMS))
        g = random_instance(spec.name, rng, 10)
        delta = Fraction(rng.randint(10, int(10 / spec.q)), 10)
        t = rng.randint(0, 4)
        seed = rng.randrange(2**63)
        step = step_for(spec)
        assert multi_sample(step, delta, g, t, Rng(seed)) == multi_sample(step, delta, g, t, Rng(seed))
    fvs = get_problem("fvs")
    solver = brute_force_solver(fvs)
    g = gen_random("gnp", 10, 0.35, 12)
    k = brute_opt(fvs, g).opt
    config = RunConfig(Fraction(3, 2), seed=3, repeat_override=100)
    assert sampling_with_a_black_box(fvs, step_for(fvs), solver, g, k, config) == \
        sampling_with_a_black_box(fvs, step_for(fvs), solver, g, k, config)
    assert calculator.make_table(fvs, ["1.1", "1.5"]) == calculator.make_table(fvs, ["1.1", "1.5"])
