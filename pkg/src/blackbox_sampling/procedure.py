"""MultiSample: repeated sampling turned into a budgeted deletion procedure."""

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .calculator import phi
from .errors import ConfigError
from .hypergraph import Hypergraph, remove_vertex
from .rng import Rng
from .sampling import SamplingStep

DEFAULT_R = 4


def as_fraction(x) -> Fraction:
    """Exact rational view of ``x``; floats convert exactly, strings via ``Fraction``."""
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(float(x))


def threshold(delta) -> int:
    """Smallest ``t`` for which the procedure's success bound is claimed."""
    delta = as_fraction(delta)
    if delta < 1:
        raise ConfigError(f"delta={delta} must be >= 1")
    if delta == 1:
        return 1
    return max(math.ceil(delta), math.ceil(1 / (delta - 1)))


@dataclass(frozen=True)
class ProcedureParams:
    delta: Fraction
    p: float
    r: int = DEFAULT_R
    T: int = 1


def budget(delta, t: int) -> int:
    """``floor(delta * t)`` in exact arithmetic."""
    return math.floor(as_fraction(delta) * t)


def build_procedure(step: SamplingStep, delta) -> ProcedureParams:
    delta = as_fraction(delta)
    if not 1 <= delta <= 1 / step.q:
        raise ConfigError(f"delta={delta} outside [1, 1/q={1 / step.q}]")
    return ProcedureParams(delta, phi(delta, step.q), DEFAULT_R, threshold(delta))


def multi_sample(step: SamplingStep, delta, g: Hypergraph, t: int, rng: Rng) -> tuple[int, ...]:
    """Delete sampled vertices until ``floor(delta*t)`` are gone or the rest has the property.

    Returns the deleted vertices as sorted ids of ``g``.
    """
    if t < 0:
        raise ConfigError(f"t={t} must be non-negative")
    if as_fraction(delta) < 1:
        raise ConfigError(f"delta={delta} must be >= 1")
    if not step.problem.validate(g):
        raise ConfigError(f"graph is not a valid {step.problem.name} instance")
    cap = budget(delta, t)
    ids = list(g.vertices)
    current = g
    chosen = []
    while len(chosen) < cap and not step.problem.in_property(current):
        v = step(current, rng)
        chosen.append(ids.pop(v))
        current = remove_vertex(current, v)
    return tuple(sorted(chosen))
