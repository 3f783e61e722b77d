import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blackbox_sampling.errors import ConfigError, PreconditionError, ResourceError
from blackbox_sampling.framework import RunConfig, brute_force_solver
from blackbox_sampling.hypergraph import (
    Hypergraph,
    complete_graph,
    cycle_graph,
    delete,
    disjoint_union,
    gen_random,
    path_graph,
    remove_vertex,
    spider_t2,
)
from blackbox_sampling.oracle import (
    brute_opt,
    estimate_driver_success,
    estimate_sampling_success,
    has_solution_of_size,
    hoeffding_lower,
)
from blackbox_sampling.problems import get_problem, verify_solution
from blackbox_sampling.rng import Rng
from blackbox_sampling.sampling import step_for

NAMES = ["vc", "3hs", "3pvc", "4pvc", "fvs", "povd", "dfvt"]


def instance(name, n, seed):
    if name == "dfvt":
        return gen_random("tournament", n, seed=seed)
    if name == "3hs":
        return gen_random("uniform_hyper", max(n, 3), 0.2, seed=seed)
    return gen_random("gnp", n, 0.35, seed)


@pytest.mark.parametrize("name, g, opt", [
    ("fvs", cycle_graph(5), 1),
    ("fvs", complete_graph(5), 3),
    ("fvs", complete_graph(4), 2),
    ("povd", spider_t2(), 1),
    ("vc", path_graph(1), 0),
])
def test_brute_opt_examples(name, g, opt):
    result = brute_opt(get_problem(name), g)
    assert result.opt == opt
    assert verify_solution(get_problem(name), g, result.witness)


def test_brute_opt_witness_is_lexicographically_first():
    assert brute_opt(get_problem("fvs"), cycle_graph(5)).witness == (0,)
    assert brute_opt(get_problem("vc"), path_graph(3)).witness == (1,)


def test_brute_opt_bound():
    with pytest.raises(ResourceError):
        brute_opt(get_problem("vc"), Hypergraph(23))
    with pytest.raises(ResourceError):
        brute_opt(get_problem("vc"), Hypergraph(9), max_n=8)


def _descending_opt(spec, g):
    best = g.n
    for size in range(g.n, -1, -1):
        if any(spec.in_property(delete(g, w)[0]) for w in combinations(range(g.n), size)):
            best = size
        else:
            break
    return best


def test_brute_opt_against_descending_scan():
    rng = random.Random(0)
    for i in range(140):
        name = NAMES[i % len(NAMES)]
        spec = get_problem(name)
        g = instance(name, rng.randint(1, 8), rng.randrange(10**9))
        result = brute_opt(spec, g)
        assert result.opt == _descending_opt(spec, g)
        assert verify_solution(spec, g, result.witness)
        assert result.opt == 0 or not has_solution_of_size(spec, g, result.opt - 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.integers(1, 9), st.integers(0, 10**9))
def test_opt_drops_by_at_most_one(name, n, seed):
    spec = get_problem(name)
    g = instance(name, n, seed)
    opt = brute_opt(spec, g).opt
    for v in range(g.n):
        assert opt - brute_opt(spec, remove_vertex(g, v)).opt in (0, 1)


def test_hoeffding_formula():
    assert hoeffding_lower(90, 100, 0.999) == pytest.approx(0.9 - math.sqrt(math.log(1000) / 200))
    assert hoeffding_lower(0, 10) == 0.0
    with pytest.raises(ConfigError):
        hoeffding_lower(1, 0)
    with pytest.raises(ConfigError):
        hoeffding_lower(1, 10, 1.0)


def test_estimate_sampling_examples():
    vc = get_problem("vc")
    report = estimate_sampling_success(step_for(vc), path_graph(2), 200, Rng())
    assert report.estimate == 1.0 and report.lower_bound <= report.estimate
    fvs = get_problem("fvs")
    assert estimate_sampling_success(step_for(fvs), cycle_graph(5), 200, Rng()).estimate == 1.0


def test_estimate_sampling_triangle_with_pendant_path():
    # the core is the triangle, each of whose vertices breaks the only cycle
    g = Hypergraph(6, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)))
    report = estimate_sampling_success(step_for(get_problem("fvs")), g, 500, Rng(1))
    assert report.estimate == 1.0


def test_estimate_sampling_claw_of_triangles():
    g = Hypergraph(10, (
        (0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8), (6, 8),
        (0, 9), (3, 9), (6, 9),
    ))
    draws = 4000
    report = estimate_sampling_success(step_for(get_problem("fvs")), g, draws, Rng(2))
    assert abs(report.estimate - 0.75) <= 3 * math.sqrt(0.75 * 0.25 / draws)


def test_estimate_sampling_preconditions():
    step = step_for(get_problem("fvs"))
    with pytest.raises(PreconditionError):
        estimate_sampling_success(step, path_graph(4), 10, Rng())
    with pytest.raises(ConfigError):
        estimate_sampling_success(step, cycle_graph(4), 0, Rng())


def test_estimate_driver_on_property_member():
    fvs = get_problem("fvs")
    report = estimate_driver_success(
        fvs, step_for(fvs), brute_force_solver(fvs), path_graph(6), 0, RunConfig(Fraction(3, 2)), 20,
    )
    assert report.estimate == 1.0 and report.invalid == 0


def test_estimate_driver_two_triangles():
    fvs = get_problem("fvs")
    g = disjoint_union(cycle_graph(3), cycle_graph(3))
    report = estimate_driver_success(
        fvs, step_for(fvs), brute_force_solver(fvs), g, 2, RunConfig(Fraction(3, 2), repeat_override=20), 200,
    )
    assert report.estimate >= 0.5 and report.invalid == 0


def test_estimate_driver_vc_random():
    vc = get_problem("vc")
    g = gen_random("gnp", 10, 0.4, 3)
    k = brute_opt(vc, g).opt
    report = estimate_driver_success(
        vc, step_for(vc), brute_force_solver(vc), g, k, RunConfig(Fraction(3, 2), repeat_override=30), 40,
    )
    assert report.estimate >= 0.5 and report.invalid == 0


def test_estimate_driver_preconditions():
    fvs = get_problem("fvs")
    with pytest.raises(PreconditionError):
        estimate_driver_success(
            fvs, step_for(fvs), brute_force_solver(fvs), complete_graph(4), 1, RunConfig(Fraction(3, 2)), 5,
        )
    with pytest.raises(ConfigError):
        estimate_driver_success(
            fvs, step_for(fvs), brute_force_solver(fvs), cycle_graph(4), 1, RunConfig(Fraction(3, 2)), 0,
        )
