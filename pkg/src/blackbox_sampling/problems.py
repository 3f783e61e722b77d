"""Registry of the vertex-deletion problems and their property deciders."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ConfigError, DomainError
from .hypergraph import (
    Hypergraph,
    Pattern,
    delete,
    directed_triangle,
    find_pattern,
    path_graph,
    spider_t2,
    tournament_defect,
)


@dataclass(frozen=True)
class KnownAlgorithm:
    """Published (ratio, exponent base) pair. Data only; never executed here."""

    alpha: Fraction
    c: float
    source: str = ""


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    title: str
    validate: Callable[[Hypergraph], bool] = field(repr=False)
    in_property: Callable[[Hypergraph], bool] = field(repr=False)
    q: Fraction
    patterns: tuple[Pattern, ...] = ()
    known_algorithms: tuple[KnownAlgorithm, ...] = ()
    eta: int | None = None
    tournament: bool = False

    @property
    def finite_forbidden(self) -> bool:
        """Property is given by the finite pattern list alone (no cycles)."""
        return self.eta is not None and bool(self.patterns)

    def exact_c(self) -> float | None:
        """Base of the fastest listed exact (ratio 1) algorithm."""
        exact = [a.c for a in self.known_algorithms if a.alpha == 1]
        return min(exact) if exact else None


# --- deciders ----------------------------------------------------------------


def _is_graph(g: Hypergraph) -> bool:
    return g.is_graph


def _max_degree(g: Hypergraph) -> int:
    return max((len(row) for row in g.incident), default=0)


def is_acyclic(g: Hypergraph) -> bool:
    """Undirected forest test by union-find."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def find_t2(g: Hypergraph) -> tuple[int, ...] | None:
    """First ``T2`` subgraph as ``(center, u1, u2, u3, w1, w2, w3)``.

    Centers are tried in ascending order, neighbor triples in lexicographic
    order, then leaves ``w_i`` adjacent to ``u_i`` and outside the star.
    """
    nbrs = g.neighbors
    for center in range(g.n):
        if len(nbrs[center]) < 3:
            continue
        around = sorted(nbrs[center])
        for i, u1 in enumerate(around):
            for j in range(i + 1, len(around)):
                u2 = around[j]
                for u3 in around[j + 1:]:
                    star = {center, u1, u2, u3}
                    legs = _pick_leaves((u1, u2, u3), star, nbrs)
                    if legs is not None:
                        return (center, u1, u2, u3) + legs
    return None


def _pick_leaves(middles, used, nbrs):
    if not middles:
        return ()
    for w in sorted(nbrs[middles[0]] - used):
        rest = _pick_leaves(middles[1:], used | {w}, nbrs)
        if rest is not None:
            return (w,) + rest
    return None


def _no_p4(g: Hypergraph) -> bool:
    # connected P4-free graphs on >= 4 vertices are exactly the stars
    seen = [False] * g.n
    nbrs = g.neighbors
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        for x in comp:
            for y in nbrs[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
        if len(comp) <= 3:
            continue
        edges = sum(len(nbrs[x]) for x in comp) // 2
        if edges != len(comp) - 1 or max(len(nbrs[x]) for x in comp) != len(comp) - 1:
            return False
    return True


def _has_directed_triangle(g: Hypergraph) -> bool:
    succ = g.successors
    for u, v in g.edges:
        if any(u in succ[w] for w in succ[v]):
            return True
    return False


def _is_tournament(g: Hypergraph) -> bool:
    return tournament_defect(g) is None


# --- registry ----------------------------------------------------------------

K2 = Pattern(Hypergraph(2, ((0, 1),)), "induced", "K2")
HYPEREDGE3 = Pattern(Hypergraph(3, ((0, 1, 2),)), "induced", "3-edge")
P3 = Pattern(path_graph(3), "subgraph", "P3")
P4 = Pattern(path_graph(4), "subgraph", "P4")
T2 = Pattern(spider_t2(), "subgraph", "T2")
DIRECTED_C3 = Pattern(directed_triangle(), "induced", "directed C3")


def _build_registry() -> dict[str, ProblemSpec]:
    edgeless = lambda g: g.m == 0
    specs = [
        ProblemSpec(
            "vc", "Vertex Cover",
            validate=_is_graph, in_property=edgeless, q=Fraction(1, 2),
            patterns=(K2,), eta=2,
            known_algorithms=(KnownAlgorithm(Fraction(1), 1.2738), KnownAlgorithm(Fraction(2), 1.0)),
        ),
        ProblemSpec(
            "vc-deg3", "Vertex Cover on graphs of maximum degree 3",
            validate=lambda g: g.is_graph and _max_degree(g) <= 3, in_property=edgeless,
            q=Fraction(1, 2), patterns=(K2,), eta=2,
            known_algorithms=(KnownAlgorithm(Fraction(1), 1.1616), KnownAlgorithm(Fraction(7, 6), 1.0)),
        ),
        ProblemSpec(
            "3hs", "3-Hitting Set",
            validate=lambda g: not g.directed and all(len(e) == 3 for e in g.edges),
            in_property=edgeless, q=Fraction(1, 3), patterns=(HYPEREDGE3,), eta=3,
            known_algorithms=(KnownAlgorithm(Fraction(1), 2.076),),
        ),
        ProblemSpec(
            "3pvc", "3-Path Vertex Cover",
            validate=_is_graph, in_property=lambda g: _max_degree(g) <= 1,
            q=Fraction(1, 3), patterns=(P3,), eta=3,
            known_algorithms=(KnownAlgorithm(Fraction(1), 1.708), KnownAlgorithm(Fraction(2), 1.0)),
        ),
        ProblemSpec(
            "4pvc", "4-Path Vertex Cover",
            validate=_is_graph, in_property=_no_p4, q=Fraction(1, 4), patterns=(P4,), eta=4,
            known_algorithms=(KnownAlgorithm(Fraction(1), 2.138), KnownAlgorithm(Fraction(3), 1.0)),
        ),
        ProblemSpec(
            "fvs", "Feedback Vertex Set",
            validate=_is_graph, in_property=is_acyclic, q=Fraction(1, 4),
            known_algorithms=(KnownAlgorithm(Fraction(1), 2.7), KnownAlgorithm(Fraction(2), 1.0)),
        ),
        ProblemSpec(
            "povd", "Pathwidth One Vertex Deletion",
            validate=_is_graph,
            in_property=lambda g: is_acyclic(g) and find_t2(g) is None,
            q=Fraction(1, 7), patterns=(T2,),
            known_algorithms=(KnownAlgorithm(Fraction(1), 3.888),),
        ),
        ProblemSpec(
            "dfvt", "Directed Feedback Vertex Set on Tournaments",
            validate=_is_tournament, in_property=lambda g: not _has_directed_triangle(g),
            q=Fraction(1, 3), patterns=(DIRECTED_C3,), eta=3, tournament=True,
            known_algorithms=(KnownAlgorithm(Fraction(1), 1.618), KnownAlgorithm(Fraction(2), 1.0)),
        ),
    ]
    return {s.name: s for s in specs}


_REGISTRY = _build_registry()


def registry() -> list[ProblemSpec]:
    return list(_REGISTRY.values())


def get_problem(name: str) -> ProblemSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ConfigError(
            f"unknown problem {name!r}; choose from {', '.join(_REGISTRY)}"
        ) from None


def check_in_property(spec: ProblemSpec, g: Hypergraph) -> bool:
    if not spec.validate(g):
        raise DomainError(f"graph is not a valid {spec.name} instance")
    return spec.in_property(g)


def pattern_free(spec: ProblemSpec, g: Hypergraph) -> bool:
    """Decide membership by searching every pattern (slow reference decider)."""
    return all(find_pattern(g, p) is None for p in spec.patterns)


def verify_solution(spec: ProblemSpec, g: Hypergraph, s) -> bool:
    return spec.in_property(delete(g, s)[0])
