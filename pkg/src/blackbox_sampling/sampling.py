"""Randomized sampling steps: each maps a graph outside the property to one vertex."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import PreconditionError, UnsupportedOperation
from .hypergraph import Hypergraph, Pattern, find_pattern, induced_with_ids
from .problems import ProblemSpec, find_t2, is_acyclic
from .rng import Rng


@dataclass(frozen=True)
class SamplingStep:
    problem: ProblemSpec
    q: Fraction
    draw: Callable[[Hypergraph, Rng], int] = field(repr=False)

    def __call__(self, g: Hypergraph, rng: Rng) -> int:
        v = self.draw(g, rng)
        assert 0 <= v < g.n
        return v


def core(g: Hypergraph) -> tuple[Hypergraph, tuple[int, ...]]:
    """Strip degree <= 1 vertices until none remain.

    Returns the core and its new-to-old vertex id table. The surviving vertex
    set does not depend on removal order.
    """
    if not g.is_graph:
        raise UnsupportedOperation("core() needs an undirected graph")
    deg = [len(row) for row in g.incident]
    nbrs = g.neighbors
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for u in nbrs[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] == 1:
                    stack.append(u)
    return induced_with_ids(g, (v for v in range(g.n) if alive[v]))


def _components(g: Hypergraph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        for x in comp:
            for y in g.neighbors[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
        out.append(sorted(comp))
    return out


def fvs_weights(g: Hypergraph) -> tuple[tuple[int, ...], list[int] | None, list[int]]:
    """Deterministic part of the FVS step.

    Returns ``(core_ids, bare_cycle, weights)``: if some core component is a
    bare cycle, ``bare_cycle`` lists its vertices (core ids) and the step picks
    one uniformly; otherwise vertex ``v`` of the core has weight ``deg(v)``,
    or zero when ``deg(v) == 2``.
    """
    c, ids = core(g)
    if c.n == 0:
        raise PreconditionError("graph is acyclic; the FVS step needs a cycle")
    deg = [len(row) for row in c.incident]
    for comp in _components(c):
        if max(deg[v] for v in comp) == 2:
            return ids, comp, []
    return ids, None, [0 if d == 2 else d for d in deg]


def fvs_step(g: Hypergraph, rng: Rng) -> int:
    ids, cycle, weights = fvs_weights(g)
    if cycle is not None:
        return ids[cycle[rng.below(len(cycle))]]
    return ids[rng.weighted(weights)]


def povd_step(g: Hypergraph, rng: Rng) -> int:
    witness = find_t2(g)
    if witness is not None:
        return witness[rng.below(len(witness))]
    if is_acyclic(g):
        raise PreconditionError("graph has pathwidth at most 1; nothing to sample")
    return fvs_step(g, rng)


def forbidden_step(g: Hypergraph, patterns, rng: Rng) -> int:
    """Uniform vertex of the first witness of the first pattern that occurs."""
    z = first_witness(g, patterns)
    if z is None:
        raise PreconditionError("graph contains none of the forbidden patterns")
    return z[rng.below(len(z))]


def first_witness(g: Hypergraph, patterns) -> tuple[int, ...] | None:
    for p in patterns:
        z = find_pattern(g, p)
        if z is not None:
            return z
    return None


def step_for(spec: ProblemSpec) -> SamplingStep:
    if spec.name == "fvs":
        draw = fvs_step
    elif spec.name == "povd":
        draw = povd_step
    elif spec.finite_forbidden:
        patterns: tuple[Pattern, ...] = spec.patterns
        draw = lambda g, rng: forbidden_step(g, patterns, rng)
    else:
        raise UnsupportedOperation(f"no sampling step for {spec.name}")
    return SamplingStep(spec, spec.q, draw)

