"""RandAndExtend, the iterated black-box driver, and two reference black-box solvers."""

import math
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable

from . import calculator
from .errors import ConfigError, DomainError, ResourceError
from .hypergraph import Hypergraph, delete, vertex_set
from .problems import ProblemSpec, find_t2, verify_solution
from .procedure import ProcedureParams, as_fraction, build_procedure, multi_sample
from .rng import Rng
from .sampling import SamplingStep, core, first_witness

DEFAULT_MAX_N = 22
DEFAULT_MAX_TRIALS = 10**6
DELTA_DENOMINATOR = 10**6


@dataclass(frozen=True)
class BlackBoxSolver:
    """Parameterized ``alpha``-approximation with declared running-time base ``c``.

    ``solve(g, k, rng)`` must always return a valid solution (sorted ids of ``g``).
    ``ratio_sound`` is False for solvers that are valid but carry no ratio guarantee.
    """

    name: str
    alpha: Fraction
    c: float
    solve: Callable[[Hypergraph, int, Rng], tuple[int, ...]] = field(repr=False, compare=False)
    ratio_sound: bool = True


@dataclass(frozen=True)
class RunConfig:
    beta: Fraction
    delta: Fraction | None = None
    repeat_override: int | None = None
    seed: int = 0
    max_trials_safety: int = DEFAULT_MAX_TRIALS


@dataclass(frozen=True)
class RunReport:
    solution: tuple[int, ...]
    solution_size: int
    k: int
    beta: Fraction
    delta: Fraction
    t_star: int
    threshold: int
    trials_planned: int | None
    trials_executed: int
    trial_sizes: tuple[int, ...]
    capped: bool = False
    exact_path: bool = False
    budget_infeasible: bool = False
    wall_time: float = field(default=0.0, compare=False)

    @property
    def within_ratio(self) -> bool:
        return self.solution_size <= self.beta * self.k


# --- parameters ----------------------------------------------------------------


def interval_contains(alpha, beta, delta) -> bool:
    alpha, beta, delta = as_fraction(alpha), as_fraction(beta), as_fraction(delta)
    if beta == alpha:
        raise ConfigError("beta must differ from the black box ratio alpha")
    if beta > alpha:
        return delta >= beta
    return 1 <= delta <= beta


def t_star(alpha, beta, delta, k: int) -> int:
    """Units of the optimum the procedure removes before the black box takes over."""
    alpha, beta, delta = as_fraction(alpha), as_fraction(beta), as_fraction(delta)
    if delta == alpha:
        raise ConfigError("delta must differ from alpha")
    x = (beta - alpha) / (delta - alpha) * k
    return math.ceil(x) if beta < alpha else math.floor(x)


def optimize_delta(spec: ProblemSpec, solver: BlackBoxSolver, beta) -> Fraction:
    """Budget factor minimizing the running-time base, as a bounded-denominator rational."""
    alpha, beta, q = as_fraction(solver.alpha), as_fraction(beta), spec.q
    if beta == alpha:
        raise ConfigError("beta must differ from the black box ratio alpha")
    calculator.check_query(float(alpha), float(beta), solver.c, float(q))
    if beta > alpha:
        root = calculator.delta_star("right", float(alpha), solver.c, float(q))
        delta = Fraction(root).limit_denominator(DELTA_DENOMINATOR) if beta < root else beta
        return min(max(delta, beta), 1 / q)
    root = calculator.delta_star("left", float(alpha), solver.c, float(q))
    delta = Fraction(root).limit_denominator(DELTA_DENOMINATOR) if beta > root else beta
    return min(max(delta, Fraction(1)), beta)


def trial_count(p: float, t: int, r: int) -> int | None:
    """``ceil(2 p^-t (t+1)^r)``, or ``None`` when it does not fit in a float."""
    log_n = math.log(2) - t * math.log(p) + r * math.log(t + 1)
    if log_n > 700:
        return None
    # shave rounding noise so exact integers such as 2 * 1 * 1 do not round up
    return max(1, math.ceil(math.exp(log_n) * (1 - 1e-12)))


# --- algorithms ----------------------------------------------------------------


def rand_and_extend(
    step: SamplingStep,
    params: ProcedureParams,
    solver: BlackBoxSolver,
    g: Hypergraph,
    k: int,
    t: int,
    beta,
    rng: Rng,
) -> tuple[int, ...]:
    """Sample away ``t`` units of the optimum, then let the black box finish on the rest."""
    beta = as_fraction(beta)
    if not 0 <= k <= g.n:
        raise ConfigError(f"k={k} outside [0, n={g.n}]")
    if not params.T <= t <= beta / params.delta * k:
        raise ConfigError(f"t={t} outside [T={params.T}, (beta/delta)*k={float(beta / params.delta * k):g}]")
    s = multi_sample(step, params.delta, g, t, rng)
    rest, old_to_new = delete(g, s)
    new_to_old = {new: old for old, new in old_to_new.items()}
    budget = math.floor((beta * k - params.delta * t) / solver.alpha)
    y = solver.solve(rest, max(budget, 0), rng)
    return tuple(sorted(set(s) | {new_to_old[v] for v in y}))


def _exact_small(spec: ProblemSpec, g: Hypergraph, k: int) -> tuple[tuple[int, ...], bool]:
    for size in range(min(k, g.n) + 1):
        for w in combinations(range(g.n), size):
            if verify_solution(spec, g, w):
                return w, False
    # no solution within the budget: complete every k-subset greedily, keep the smallest
    greedy = greedy_eta_solver(spec)
    best = None
    for w in combinations(range(g.n), min(k, g.n)):
        rest, old_to_new = delete(g, w)
        new_to_old = {new: old for old, new in old_to_new.items()}
        extra = greedy.solve(rest, 0, Rng())
        cand = tuple(sorted(set(w) | {new_to_old[v] for v in extra}))
        if best is None or len(cand) < len(best):
            best = cand
    return best, True


def sampling_with_a_black_box(
    spec: ProblemSpec,
    step: SamplingStep,
    solver: BlackBoxSolver,
    g: Hypergraph,
    k: int,
    config: RunConfig,
    rng: Rng | None = None,
) -> RunReport:
    """Run RandAndExtend the prescribed number of times and keep the smallest result.

    When ``t*`` falls below the procedure threshold the instance is solved by
    enumerating vertex sets of size at most ``k`` instead.
    """
    started = time.perf_counter()
    if not spec.validate(g):
        raise DomainError(f"graph is not a valid {spec.name} instance")
    if not 0 <= k <= g.n:
        raise ConfigError(f"k={k} outside [0, n={g.n}]")
    alpha, beta = as_fraction(solver.alpha), as_fraction(config.beta)
    if beta == alpha:
        raise ConfigError("beta must differ from the black box ratio alpha")
    if not 1 <= beta <= 1 / spec.q:
        raise ConfigError(f"beta={beta} outside [1, 1/q={1 / spec.q}]")
    delta = as_fraction(config.delta) if config.delta is not None else optimize_delta(spec, solver, beta)
    if not interval_contains(alpha, beta, delta):
        side = f"[{beta}, inf)" if beta > alpha else f"[1, {beta}]"
        raise ConfigError(f"delta={delta} outside interval(alpha, beta) = {side}")
    if not 1 <= delta <= 1 / spec.q:
        raise ConfigError(f"delta={delta} outside [1, 1/q={1 / spec.q}]")
    if config.repeat_override is not None and config.repeat_override < 1:
        raise ConfigError("repeat_override must be at least 1")
    if config.max_trials_safety < 1:
        raise ConfigError("max_trials_safety must be at least 1")

    params = build_procedure(step, delta)
    ts = t_star(alpha, beta, delta, k)
    common = dict(k=k, beta=beta, delta=delta, t_star=ts, threshold=params.T)

    if ts < params.T:
        solution, infeasible = _exact_small(spec, g, k)
        _check(spec, g, solution)
        return RunReport(
            solution, len(solution), trials_planned=0, trials_executed=0, trial_sizes=(),
            exact_path=True, budget_infeasible=infeasible,
            wall_time=time.perf_counter() - started, **common,
        )

    planned = trial_count(params.p, ts, params.r)
    limit = planned
    if config.repeat_override is not None:
        limit = config.repeat_override if limit is None else min(limit, config.repeat_override)
    if limit is None or limit > config.max_trials_safety:
        limit = config.max_trials_safety
    base = rng if rng is not None else Rng(config.seed)
    best = None
    sizes = []
    for i in range(limit):
        result = rand_and_extend(step, params, solver, g, k, ts, beta, base.spawn(i))
        sizes.append(len(result))
        if best is None or len(result) < len(best):
            best = result
    _check(spec, g, best)
    return RunReport(
        best, len(best), trials_planned=planned, trials_executed=limit,
        trial_sizes=tuple(sizes), capped=planned is None or limit < planned,
        wall_time=time.perf_counter() - started, **common,
    )


def _check(spec, g, solution):
    if not verify_solution(spec, g, solution):
        raise AssertionError(f"driver produced an invalid {spec.name} solution {solution}")


# --- reference black boxes ------------------------------------------------------


def brute_force_solver(spec: ProblemSpec, c: float | None = None, max_n: int = DEFAULT_MAX_N) -> BlackBoxSolver:
    """Exact solver by subset enumeration. It ignores ``k`` and always returns an optimum.

    For FVS the search runs on the 2-core, which has the same cycles.
    Results are memoized per instance, which is sound because the search is deterministic.
    """
    if c is None:
        c = spec.exact_c() or float(1 / spec.q)

    @lru_cache(maxsize=1 << 16)
    def optimum(g: Hypergraph) -> tuple[int, ...]:
        if spec.name == "fvs":
            h, ids = core(g)
        else:
            h, ids = g, tuple(g.vertices)
        if h.n > max_n:
            raise ResourceError(f"brute force limited to n <= {max_n}, got {h.n}")
        for size in range(h.n + 1):
            for w in combinations(range(h.n), size):
                if spec.in_property(delete(h, w)[0]):
                    return tuple(ids[v] for v in w)
        raise AssertionError("deleting every vertex must reach the property")

    def solve(g: Hypergraph, k: int, rng: Rng) -> tuple[int, ...]:
        return optimum(g)

    return BlackBoxSolver(f"brute-{spec.name}", Fraction(1), c, solve)


def shortest_cycle(g: Hypergraph) -> tuple[int, ...] | None:
    """Vertices of a shortest cycle, found by a BFS per edge with that edge removed."""
    nbrs = g.neighbors
    best = None
    for u, v in g.edges:
        parent = {u: None}
        queue = deque([u])
        while queue and v not in parent:
            x = queue.popleft()
            for y in sorted(nbrs[x]):
                if (x, y) in ((u, v), (v, u)) or y in parent:
                    continue
                parent[y] = x
                queue.append(y)
        if v in parent:
            cycle = []
            x = v
            while x is not None:
                cycle.append(x)
                x = parent[x]
            if best is None or len(cycle) < len(best):
                best = cycle
    return None if best is None else tuple(sorted(best))


def greedy_eta_solver(spec: ProblemSpec) -> BlackBoxSolver:
    """Delete every vertex of a forbidden witness until none is left.

    Sound with ratio ``eta`` for finite forbidden sets. For FVS and POVD the
    witnesses are shortest cycles (and T2 copies), which gives a valid but
    unbounded-ratio solver.
    """
    if spec.finite_forbidden:
        witness = lambda g: first_witness(g, spec.patterns)
        alpha, sound = Fraction(spec.eta), True
    elif spec.name == "fvs":
        witness = shortest_cycle
        alpha, sound = 1 / spec.q, False
    elif spec.name == "povd":
        witness = lambda g: find_t2(g) or shortest_cycle(g)
        alpha, sound = 1 / spec.q, False
    else:
        raise ConfigError(f"no greedy witness search for {spec.name}")

    def solve(g: Hypergraph, k: int, rng: Rng) -> tuple[int, ...]:
        ids = list(g.vertices)
        current = g
        chosen = []
        while not spec.in_property(current):
            z = witness(current)
            if z is None:
                raise AssertionError(f"{spec.name}: graph outside the property has no witness")
            chosen.extend(ids[v] for v in z)
            current, old_to_new = delete(current, z)
            ids = [ids[old] for old in sorted(old_to_new)]
        return vertex_set(g, chosen)

    return BlackBoxSolver(f"greedy-{spec.name}", alpha, 1.0, solve, ratio_sound=sound)
