"""Approximate vertex deletion by combining a sampling step with an approximation black box."""

from .errors import (
    BlackBoxError,
    ConfigError,
    DomainError,
    InputError,
    ParseError,
    PreconditionError,
    ResourceError,
    UnsupportedOperation,
)
from .framework import (
    BlackBoxSolver,
    RunConfig,
    RunReport,
    brute_force_solver,
    greedy_eta_solver,
    optimize_delta,
    rand_and_extend,
    sampling_with_a_black_box,
    t_star,
)
from .hypergraph import Hypergraph, Pattern, parse, serialize
from .problems import get_problem, registry, verify_solution
from .rng import Rng
from .sampling import step_for

__version__ = "0.1.0"
