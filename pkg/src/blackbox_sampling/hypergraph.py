"""Hypergraphs on dense vertex ids, small-pattern containment and instance I/O."""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Literal

from .errors import ConfigError, InputError, ParseError, UnsupportedOperation
from .rng import Rng

MAX_PATTERN_SIZE = 8


@dataclass(frozen=True)
class Hypergraph:
    """Vertices are ``0..n-1``. Undirected edges are stored as ascending tuples.

    A directed hypergraph is a digraph: every edge is an ordered pair ``(u, v)``.
    Instances are immutable; derived structures are cached on first use.
    """

    n: int
    edges: tuple[tuple[int, ...], ...] = ()
    directed: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        normalized = []
        seen = set()
        for edge in self.edges:
            edge = tuple(int(v) for v in edge)
            if not edge:
                raise InputError("empty edge")
            if len(set(edge)) != len(edge):
                raise InputError(f"edge {edge} repeats a vertex")
            for v in edge:
                if not 0 <= v < self.n:
                    raise InputError(f"vertex {v} out of range for n={self.n}")
            if self.directed:
                if len(edge) != 2:
                    raise InputError(f"directed edge {edge} must have exactly 2 vertices")
                key = edge
            else:
                edge = tuple(sorted(edge))
                key = edge
            if key in seen:
                raise InputError(f"parallel edge {edge}")
            seen.add(key)
            normalized.append(edge)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def is_graph(self) -> bool:
        """True for a simple undirected graph (every edge has two endpoints)."""
        return not self.directed and all(len(e) == 2 for e in self.edges)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices touching each vertex."""
        table = [[] for _ in range(self.n)]
        for i, edge in enumerate(self.edges):
            for v in edge:
                table[v].append(i)
        return tuple(tuple(row) for row in table)

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        """Undirected neighborhoods; for digraphs, arcs in either direction count."""
        table = [set() for _ in range(self.n)]
        for edge in self.edges:
            for u in edge:
                table[u].update(edge)
        for v, row in enumerate(table):
            row.discard(v)
        return tuple(frozenset(row) for row in table)

    @cached_property
    def successors(self) -> tuple[frozenset, ...]:
        if not self.directed:
            raise UnsupportedOperation("successors() is defined for digraphs only")
        table = [set() for _ in range(self.n)]
        for u, v in self.edges:
            table[u].add(v)
        return tuple(frozenset(row) for row in table)

    @classmethod
    def _trusted(cls, n: int, edges: tuple, directed: bool) -> "Hypergraph":
        # edges already normalized and validated (derived from a valid graph)
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "edges", edges)
        object.__setattr__(g, "directed", directed)
        return g

    def __str__(self):
        return serialize(self).rstrip("\n")


@dataclass(frozen=True)
class Pattern:
    """A small forbidden structure. ``mode`` picks induced or plain subgraph containment."""

    graph: Hypergraph
    mode: Literal["induced", "subgraph"] = "induced"
    name: str = ""

    def __post_init__(self):
        if self.mode not in ("induced", "subgraph"):
            raise ConfigError(f"unknown pattern mode {self.mode!r}")

    @property
    def size(self) -> int:
        return self.graph.n


def vertex_set(g: Hypergraph, vertices: Iterable[int]) -> tuple[int, ...]:
    """Sorted, deduplicated tuple of vertex ids, validated against ``g``."""
    out = tuple(sorted(set(int(v) for v in vertices)))
    for v in out:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
    return out


def induced_with_ids(g: Hypergraph, u: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
    """``G[U]`` re-indexed by ascending original id, plus the new-to-old id table."""
    kept = vertex_set(g, u)
    new_id = {old: new for new, old in enumerate(kept)}
    edges = tuple(
        tuple(new_id[v] for v in edge)
        for edge in g.edges
        if all(v in new_id for v in edge)
    )
    # relabeling is monotone, so undirected edges stay sorted
    return Hypergraph._trusted(len(kept), edges, g.directed), kept


def induced(g: Hypergraph, u: Iterable[int]) -> Hypergraph:
    return induced_with_ids(g, u)[0]


def delete(g: Hypergraph, s: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """``G \\ S`` together with the old-to-new id mapping of surviving vertices."""
    removed = set(vertex_set(g, s))
    h, kept = induced_with_ids(g, (v for v in g.vertices if v not in removed))
    return h, {old: new for new, old in enumerate(kept)}


def remove_vertex(g: Hypergraph, v: int) -> Hypergraph:
    """Delete a single vertex; ids above ``v`` shift down by one."""
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range for n={g.n}")
    edges = tuple(
        tuple(x - (x > v) for x in edge) for edge in g.edges if v not in edge
    )
    return Hypergraph._trusted(g.n - 1, edges, g.directed)


def degree(g: Hypergraph, v: int) -> int:
    if not g.is_graph:
        raise UnsupportedOperation("degree() needs an undirected graph with 2-vertex edges")
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range for n={g.n}")
    return len(g.incident[v])


def isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    """Brute-force isomorphism test; only meant for pattern-sized graphs."""
    if a.n != b.n or a.m != b.m or a.directed != b.directed:
        return False
    if a.n > MAX_PATTERN_SIZE:
        raise ConfigError(f"isomorphism test limited to {MAX_PATTERN_SIZE} vertices")
    return find_pattern(b, Pattern(a, "induced")) is not None


def _normalize(edge, directed):
    return edge if directed else tuple(sorted(edge))


def find_pattern(g: Hypergraph, p: Pattern) -> tuple[int, ...] | None:
    """First witness ``Z`` (sorted) with ``G[Z]`` matching ``p``, or ``None``.

    Ordered vertex tuples are enumerated lexicographically and extended one
    pattern vertex at a time; a partial assignment is abandoned as soon as a
    fully-mapped pattern edge is missing from ``g`` or, in induced mode, ``g``
    has an extra edge among the mapped vertices.
    """
    pg = p.graph
    if pg.n > MAX_PATTERN_SIZE:
        raise ConfigError(f"pattern has {pg.n} vertices, limit is {MAX_PATTERN_SIZE}")
    if pg.directed != g.directed:
        raise UnsupportedOperation("pattern and graph must agree on directedness")
    if pg.n == 0:
        return ()
    if pg.n > g.n:
        return None

    # pattern edges grouped by the last pattern vertex they need
    closing = [[] for _ in range(pg.n)]
    for edge in pg.edges:
        closing[max(edge)].append(edge)
    pattern_inside = [0] * pg.n
    running = 0
    for i in range(pg.n):
        running += len(closing[i])
        pattern_inside[i] = running

    induced_mode = p.mode == "induced"
    edge_set = g.edge_set
    incident = g.incident
    g_edges = g.edges
    image: list[int] = []
    position: dict[int, int] = {}

    def extend(i: int, inside: int):
        if i == pg.n:
            return True
        for v in range(g.n):
            if v in position:
                continue
            image.append(v)
            position[v] = i
            ok = True
            for edge in closing[i]:
                if _normalize(tuple(image[x] for x in edge), g.directed) not in edge_set:
                    ok = False
                    break
            new_inside = inside
            if ok and induced_mode:
                for e in incident[v]:
                    if all(x in position for x in g_edges[e]):
                        new_inside += 1
                ok = new_inside == pattern_inside[i]
            if ok and extend(i + 1, new_inside):
                return True
            image.pop()
            del position[v]
        return False

    if extend(0, 0):
        return tuple(sorted(image))
    return None


def contains_pattern(g: Hypergraph, z: Iterable[int], p: Pattern) -> bool:
    """Check that ``G[Z]`` matches ``p`` (used to re-verify witnesses)."""
    h = induced(g, z)
    if h.n != p.size:
        return False
    return find_pattern(h, p) is not None


# --- text format -----------------------------------------------------------


def parse(text: str, tournament: bool = False) -> Hypergraph:
    """Read the whitespace-separated instance format.

    Header ``[D] n m``, then ``m`` edge lines: ``k v1 .. vk`` for undirected
    hypergraphs, ``u v`` for digraphs. Lines starting with ``#`` are skipped.
    With ``tournament=True`` the input must be a digraph with exactly one arc
    per vertex pair.
    """
    lines = [
        (number, line.split())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("missing header", 1)
    number, header = lines[0]
    directed = False
    if header and header[0] == "D":
        directed = True
        header = header[1:]
    if len(header) != 2:
        raise ParseError("header must be '[D] n m'", number)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError("header values must be integers", number) from None
    if n < 0 or m < 0:
        raise ParseError("header values must be non-negative", number)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else number
        raise ParseError(f"expected {m} edge lines, found {len(body)}", last)

    edges = []
    seen = set()
    for number, tokens in body:
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise ParseError("non-integer token", number) from None
        if directed:
            if len(values) != 2:
                raise ParseError("directed edge line must be 'u v'", number)
            edge = tuple(values)
        else:
            if not values or values[0] != len(values) - 1 or values[0] < 1:
                raise ParseError("edge line must be 'k v1 .. vk' with k >= 1", number)
            edge = tuple(values[1:])
        for v in edge:
            if not 0 <= v < n:
                raise ParseError(f"vertex {v} out of range for n={n}", number)
        if len(set(edge)) != len(edge):
            raise ParseError("edge repeats a vertex", number)
        key = edge if directed else tuple(sorted(edge))
        if key in seen:
            raise ParseError("parallel edge", number)
        seen.add(key)
        edges.append(edge)

    g = Hypergraph(n, tuple(edges), directed)
    if tournament:
        problem = tournament_defect(g)
        if problem:
            raise ParseError(f"not a tournament: {problem}", lines[0][0])
    return g


def serialize(g: Hypergraph) -> str:
    out = [f"{'D ' if g.directed else ''}{g.n} {g.m}"]
    for edge in g.edges:
        if g.directed:
            out.append(f"{edge[0]} {edge[1]}")
        else:
            out.append(" ".join(map(str, (len(edge),) + edge)))
    return "\n".join(out) + "\n"


def read_instance(path, tournament: bool = False) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), tournament=tournament)


def write_instance(g: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(g))


def tournament_defect(g: Hypergraph) -> str | None:
    """Describe why ``g`` is not a tournament, or ``None`` if it is one."""
    if not g.directed:
        return "graph is undirected"
    arcs = g.edge_set
    for u, v in combinations(range(g.n), 2):
        count = ((u, v) in arcs) + ((v, u) in arcs)
        if count != 1:
            return f"pair ({u}, {v}) has {count} arcs"
    return None


# --- generators ------------------------------------------------------------


def gen_random(model: str, n: int, param: float = 0.5, seed: int = 0, d: int = 3) -> Hypergraph:
    """Deterministic random instance for fixed ``(model, n, param, seed)``.

    ``gnp`` keeps each vertex pair with probability ``param``; ``tournament``
    orients every pair by a fair coin; ``uniform_hyper`` keeps each ``d``-subset
    with probability ``param``.
    """
    if n < 1:
        raise ConfigError("n must be at least 1")
    if not 0.0 <= param <= 1.0:
        raise ConfigError("param must lie in [0, 1]")
    rng = Rng(seed)
    if model == "gnp":
        edges = [pair for pair in combinations(range(n), 2) if rng.random() < param]
        return Hypergraph(n, tuple(edges))
    if model == "tournament":
        edges = [
            (u, v) if rng.random() < 0.5 else (v, u)
            for u, v in combinations(range(n), 2)
        ]
        return Hypergraph(n, tuple(edges), directed=True)
    if model == "uniform_hyper":
        if d < 1:
            raise ConfigError("hyperedge size d must be at least 1")
        edges = [s for s in combinations(range(n), d) if rng.random() < param]
        return Hypergraph(n, tuple(edges))
    raise ConfigError(f"unknown model {model!r}")


# --- named small graphs used across the package and tests -----------------


def path_graph(n: int) -> Hypergraph:
    return Hypergraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Hypergraph:
    return Hypergraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Hypergraph:
    return Hypergraph(n, tuple(combinations(range(n), 2)))


def star_graph(leaves: int) -> Hypergraph:
    return Hypergraph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def spider_t2() -> Hypergraph:
    """Three 3-vertex paths glued at one endpoint: center 0, legs 0-1-4, 0-2-5, 0-3-6."""
    return Hypergraph(7, ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)))


def directed_triangle() -> Hypergraph:
    return Hypergraph(3, ((0, 1), (1, 2), (2, 0)), directed=True)


def disjoint_union(*graphs: Hypergraph) -> Hypergraph:
    directed = {g.directed for g in graphs}
    if len(directed) > 1:
        raise InputError("cannot mix directed and undirected graphs")
    edges = []
    offset = 0
    for g in graphs:
        edges.extend(tuple(v + offset for v in e) for e in g.edges)
        offset += g.n
    return Hypergraph(offset, tuple(edges), directed.pop() if directed else False)
