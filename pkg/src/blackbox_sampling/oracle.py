"""Ground truth by exhaustive search, and Monte-Carlo success estimators built on it."""

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import ConfigError, PreconditionError, ResourceError
from .framework import BlackBoxSolver, RunConfig, sampling_with_a_black_box
from .hypergraph import Hypergraph, delete, remove_vertex
from .problems import ProblemSpec
from .procedure import as_fraction
from .rng import Rng
from .sampling import SamplingStep

DEFAULT_MAX_N = 22
DEFAULT_CONFIDENCE = 0.999


@dataclass(frozen=True)
class OptResult:
    opt: int
    witness: tuple[int, ...]
    explored: int


def brute_opt(spec: ProblemSpec, g: Hypergraph, max_n: int = DEFAULT_MAX_N) -> OptResult:
    """Minimum solution; sizes ascending, lexicographic within a size."""
    if g.n > max_n:
        raise ResourceError(f"exhaustive search limited to n <= {max_n}, got {g.n}")
    explored = 0
    for size in range(g.n + 1):
        for w in combinations(range(g.n), size):
            explored += 1
            if spec.in_property(delete(g, w)[0]):
                return OptResult(size, w, explored)
    raise AssertionError("the empty graph must have every hereditary property")


def has_solution_of_size(spec: ProblemSpec, g: Hypergraph, size: int) -> bool:
    if size < 0:
        return False
    size = min(size, g.n)
    return any(spec.in_property(delete(g, w)[0]) for w in combinations(range(g.n), size))


@dataclass(frozen=True)
class EstimateReport:
    trials: int
    successes: int
    estimate: float
    lower_bound: float
    confidence: float
    invalid: int = 0


def hoeffding_lower(successes: int, trials: int, confidence: float = DEFAULT_CONFIDENCE) -> float:
    if trials <= 0:
        raise ConfigError("trials must be positive")
    if not 0.0 < confidence < 1.0:
        raise ConfigError("confidence must lie in (0, 1)")
    estimate = successes / trials
    return max(0.0, estimate - math.sqrt(math.log(1.0 / (1.0 - confidence)) / (2.0 * trials)))


def _report(successes, trials, confidence, invalid=0):
    return EstimateReport(
        trials, successes, successes / trials,
        hoeffding_lower(successes, trials, confidence), confidence, invalid,
    )


def estimate_sampling_success(
    step: SamplingStep,
    g: Hypergraph,
    trials: int,
    rng: Rng,
    confidence: float = DEFAULT_CONFIDENCE,
) -> EstimateReport:
    """Fraction of draws ``v`` with ``OPT(g - v) = OPT(g) - 1``."""
    spec = step.problem
    if trials <= 0:
        raise ConfigError("trials must be positive")
    if spec.in_property(g):
        raise PreconditionError("graph already has the property")
    opt = brute_opt(spec, g).opt
    drops: dict[int, bool] = {}
    successes = 0
    for _ in range(trials):
        v = step(g, rng)
        if v not in drops:
            drops[v] = has_solution_of_size(spec, remove_vertex(g, v), opt - 1)
        successes += drops[v]
    return _report(successes, trials, confidence)


def estimate_driver_success(
    spec: ProblemSpec,
    step: SamplingStep,
    solver: BlackBoxSolver,
    g: Hypergraph,
    k: int,
    config: RunConfig,
    runs: int,
    confidence: float = DEFAULT_CONFIDENCE,
) -> EstimateReport:
    """Fraction of independent driver runs returning at most ``beta * k`` vertices.

    Run ``i`` uses stream ``i`` of ``config.seed``. Every returned set is also
    re-checked here; failures are counted in ``invalid``.
    """
    if runs <= 0:
        raise ConfigError("runs must be positive")
    if brute_opt(spec, g).opt > k:
        raise PreconditionError(f"OPT exceeds k={k}")
    beta = as_fraction(config.beta)
    base = Rng(config.seed)
    successes = invalid = 0
    for i in range(runs):
        report = sampling_with_a_black_box(spec, step, solver, g, k, config, rng=base.spawn(i))
        if not spec.in_property(delete(g, report.solution)[0]):
            invalid += 1
        elif len(report.solution) <= beta * k:
            successes += 1
    return _report(successes, runs, confidence, invalid)
