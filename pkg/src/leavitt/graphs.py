"""Finite directed graphs, path combinatorics and tail equivalence.

A graph is a finite set of named vertices and named edges with source and
range maps.  On top of it live finite paths, closed paths up to rotation,
boundary paths (finite paths into sinks, and eventually periodic infinite
paths stored as canonical lassos) and the lag sets of the tail-equivalence
relation.  Everything is an immutable value.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Union

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class GraphError(ValueError):
    """Malformed graph data or an invalid path construction."""


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    rng: str


class Graph:
    """A finite directed graph with named vertices and edges.

    Immutable after construction.  Vertex and edge names share one
    namespace of word characters so that the textual path grammar
    (dot-separated edge names, bare vertex names) is unambiguous.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | tuple | dict]):
        vs = list(vertices)
        es = []
        for e in edges:
            if isinstance(e, Edge):
                es.append(e)
            elif isinstance(e, dict):
                es.append(Edge(e["name"], e["src"], e["rng"]))
            else:
                es.append(Edge(*e))
        errors = _validate_data(vs, es)
        if errors:
            raise GraphError("; ".join(errors))
        self._vertices = tuple(sorted(vs))
        self._edges = tuple(sorted(es, key=lambda e: e.name))
        self._by_name = {e.name: e for e in self._edges}
        self._out = {v: tuple(e for e in self._edges if e.src == v) for v in self._vertices}
        self._in = {v: tuple(e for e in self._edges if e.rng == v) for v in self._vertices}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def is_vertex(self, v: str) -> bool:
        return v in self._out

    def edge(self, name: str) -> Edge:
        try:
            return self._by_name[name]
        except KeyError:
            raise GraphError(f"unknown edge {name!r}") from None

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return self._out[v]

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        return self._in[v]

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def is_regular(self, v: str) -> bool:
        return bool(self._out[v])

    @property
    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self._vertices if self.is_sink(v))

    # -- path constructors ------------------------------------------------

    def vertex_path(self, v: str) -> "FinitePath":
        if not self.is_vertex(v):
            raise GraphError(f"unknown vertex {v!r}")
        return FinitePath((), v, v)

    def path(self, edge_names: Iterable[str]) -> "FinitePath":
        names = tuple(edge_names)
        if not names:
            raise GraphError("empty edge sequence; use vertex_path for length 0")
        es = [self.edge(n) for n in names]
        for a, b in zip(es, es[1:]):
            if a.rng != b.src:
                raise GraphError(f"edges {a.name!r} and {b.name!r} do not compose")
        return FinitePath(names, es[0].src, es[-1].rng)

    def vertex_sequence(self, p: "FinitePath") -> tuple[str, ...]:
        """Vertices visited by p, sources first: s(e_1), ..., s(e_n), r(e_n)."""
        if not p.edges:
            return (p.src,)
        return tuple(self.edge(n).src for n in p.edges) + (p.rng,)

    # -- serialization ----------------------------------------------------

    @classmethod
    def from_json_dict(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise GraphError('graph JSON must have "vertices" and "edges" keys')
        return cls(data["vertices"], data["edges"])

    @classmethod
    def from_file(cls, path: str) -> "Graph":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "edges": [{"name": e.name, "src": e.src, "rng": e.rng} for e in self._edges],
        }


def _validate_data(vertices: list[str], edges: list[Edge]) -> list[str]:
    errors = []
    if not vertices:
        errors.append("vertex set is empty")
    seen: set[str] = set()
    for v in vertices:
        if not isinstance(v, str) or not _NAME_RE.match(v):
            errors.append(f"bad vertex name {v!r}")
        elif v in seen:
            errors.append(f"duplicate name {v!r}")
        else:
            seen.add(v)
    vset = set(vertices)
    for e in edges:
        if not isinstance(e.name, str) or not _NAME_RE.match(e.name):
            errors.append(f"bad edge name {e.name!r}")
        elif e.name in seen:
            errors.append(f"duplicate name {e.name!r}")
        else:
            seen.add(e.name)
        if e.src not in vset:
            errors.append(f"dangling endpoint: edge {e.name!r} has undeclared source {e.src!r}")
        if e.rng not in vset:
            errors.append(f"dangling endpoint: edge {e.name!r} has undeclared range {e.rng!r}")
    return errors


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    sinks: tuple[str, ...]
    regular: tuple[str, ...]
    errors: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "sinks": list(self.sinks),
            "regular": list(self.regular),
            "errors": list(self.errors),
        }


def validate(graph: Graph) -> ValidationReport:
    """Re-check graph invariants and classify vertices (sink vs regular)."""
    errors = tuple(_validate_data(list(graph.vertices), list(graph.edges)))
    return ValidationReport(
        ok=not errors,
        sinks=graph.sinks,
        regular=tuple(v for v in graph.vertices if graph.is_regular(v)),
        errors=errors,
    )


# ---------------------------------------------------------------------------
# Finite paths


@dataclass(frozen=True)
class FinitePath:
    """A path given by its edge-name sequence plus endpoints.

    A length-0 path carries only a vertex (src == rng, no edges).
    """

    edges: tuple[str, ...]
    src: str
    rng: str

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else self.src

    def sort_key(self):
        return (len(self.edges), self.edges, self.src)


def concat(p: FinitePath, q: FinitePath) -> FinitePath:
    if p.rng != q.src:
        raise GraphError(f"cannot concatenate {p} (range {p.rng}) with {q} (source {q.src})")
    return FinitePath(p.edges + q.edges, p.src, q.rng)


def initial_remainder(mu: FinitePath, p: FinitePath) -> FinitePath | None:
    """The unique q with p = mu.q, or None when mu is not an initial subpath."""
    if mu.src != p.src:
        return None
    n = len(mu.edges)
    if n > len(p.edges) or p.edges[:n] != mu.edges:
        return None
    return FinitePath(p.edges[n:], mu.rng, p.rng)


# ---------------------------------------------------------------------------
# Closed paths and rotations


def rotations(edge_names: tuple[str, ...]) -> list[tuple[str, ...]]:
    return [edge_names[i:] + edge_names[:i] for i in range(len(edge_names))]


def canonical_rotation(edge_names: tuple[str, ...]) -> tuple[str, ...]:
    """Lexicographically least rotation of a closed edge sequence."""
    return min(rotations(edge_names))


def primitive_root(edge_names: tuple[str, ...]) -> tuple[str, ...]:
    """The shortest w with edge_names = w^k."""
    n = len(edge_names)
    for d in range(1, n + 1):
        if n % d == 0 and edge_names[:d] * (n // d) == edge_names:
            return edge_names[:d]
    return edge_names


def is_proper_power(edge_names: tuple[str, ...]) -> bool:
    return len(primitive_root(edge_names)) < len(edge_names)


@dataclass(frozen=True)
class ClosedPath:
    """A closed finite path together with its derived flags."""

    path: FinitePath
    is_simple: bool   # not c^n for n >= 2
    is_cycle: bool    # no repeated vertex
    has_exit: bool    # some vertex on it emits an edge not used at that step

    @classmethod
    def analyze(cls, graph: Graph, path: FinitePath) -> "ClosedPath":
        if path.src != path.rng or not path.edges:
            raise GraphError(f"{path} is not a closed path of positive length")
        simple = not is_proper_power(path.edges)
        verts = graph.vertex_sequence(path)[:-1]
        cyc = len(set(verts)) == len(verts)
        exit_ = any(
            out.name != name
            for name in path.edges
            for out in graph.out_edges(graph.edge(name).src)
        )
        return cls(path=path, is_simple=simple, is_cycle=cyc, has_exit=exit_)


def _rotate_path(graph: Graph, edge_names: tuple[str, ...], i: int) -> FinitePath:
    names = edge_names[i:] + edge_names[:i]
    return graph.path(names)


def canonical_cycle(graph: Graph, path: FinitePath) -> FinitePath:
    """Rotation representative (lex-least edge-name sequence) of a closed path."""
    if path.src != path.rng or not path.edges:
        raise GraphError(f"{path} is not closed")
    return graph.path(canonical_rotation(path.edges))


# ---------------------------------------------------------------------------
# Boundary paths


@dataclass(frozen=True)
class SinkPath:
    """A finite boundary path: a path whose range is a sink."""

    path: FinitePath

    @property
    def source(self) -> str:
        return self.path.src

    def __str__(self) -> str:
        return str(self.path)

    def sort_key(self):
        return (0, self.path.sort_key(), ())


@dataclass(frozen=True)
class Lasso:
    """The eventually periodic infinite path prefix.(c_rotation)^inf.

    Canonical form: ``cycle`` is the lex-least rotation representative of a
    simple closed path, ``rotation`` selects where the tail enters it, and
    ``prefix`` is minimal (it does not end with the cycle edge entering the
    rotation point, which would otherwise be absorbed).
    """

    prefix: FinitePath
    cycle: tuple[str, ...]
    rotation: int

    @property
    def source(self) -> str:
        return self.prefix.src

    @property
    def period(self) -> int:
        return len(self.cycle)

    def rotated_cycle(self) -> tuple[str, ...]:
        return self.cycle[self.rotation:] + self.cycle[: self.rotation]

    def __str__(self) -> str:
        body = "(" + ".".join(self.rotated_cycle()) + ")^inf"
        if self.prefix.is_trivial:
            return body
        return f"{self.prefix}.{body}"

    def sort_key(self):
        return (1, self.prefix.sort_key(), (self.cycle, self.rotation))


BoundaryPath = Union[SinkPath, Lasso]


def sink_path(graph: Graph, path: FinitePath) -> SinkPath:
    if not graph.is_sink(path.rng):
        raise GraphError(f"range {path.rng!r} of {path} is not a sink")
    return SinkPath(path)


def lasso(graph: Graph, prefix: FinitePath, cycle_seq: Iterable[str]) -> Lasso:
    """Canonical lasso denoting prefix.(cycle_seq)^inf.

    ``cycle_seq`` is the periodic tail as it starts right after the prefix;
    it is reduced to its primitive root, replaced by the canonical rotation
    representative, and trailing prefix edges are absorbed into the rotation.
    """
    seq = tuple(cycle_seq)
    cyc = graph.path(seq)
    if cyc.src != cyc.rng:
        raise GraphError(f"{cyc} is not closed")
    if prefix.rng != cyc.src:
        raise GraphError(f"prefix {prefix} does not reach the cycle at {cyc.src}")
    seq = primitive_root(seq)
    star = canonical_rotation(seq)
    n = len(star)
    rot = next(i for i in range(n) if star[i:] + star[:i] == seq)
    pref = prefix
    while pref.edges and pref.edges[-1] == star[(rot - 1) % n]:
        last = graph.edge(pref.edges[-1])
        pref = FinitePath(pref.edges[:-1], pref.src, last.src)
        rot = (rot - 1) % n
    return Lasso(pref, star, rot)


def boundary_source(x: BoundaryPath) -> str:
    return x.source


def unroll(x: BoundaryPath, length: int) -> tuple[str, ...]:
    """First `length` edge names of x (shorter for a sink path that ends)."""
    if isinstance(x, SinkPath):
        return x.path.edges[:length]
    names = list(x.prefix.edges)
    body = x.rotated_cycle()
    while len(names) < length:
        names.extend(body)
    return tuple(names[:length])


def strip_prefix(graph: Graph, mu: FinitePath, x: BoundaryPath) -> BoundaryPath | None:
    """The unique boundary path p with x = mu.p, or None.

    For a lasso the cycle is unrolled as far as |mu| requires.
    """
    if mu.src != x.source:
        return None
    m = len(mu.edges)
    if isinstance(x, SinkPath):
        rest = initial_remainder(mu, x.path)
        return SinkPath(rest) if rest is not None else None
    if unroll(x, m) != mu.edges:
        return None
    pre = x.prefix.edges
    if m <= len(pre):
        rest = FinitePath(pre[m:], mu.rng, x.prefix.rng)
        return lasso(graph, rest, x.rotated_cycle())
    extra = m - len(pre)
    rot = (x.rotation + extra) % x.period
    start = graph.edge(x.cycle[rot]).src
    return lasso(graph, FinitePath((), start, start), x.cycle[rot:] + x.cycle[:rot])


def prepend(graph: Graph, mu: FinitePath, x: BoundaryPath) -> BoundaryPath:
    """The boundary path mu.x (requires r(mu) = s(x))."""
    if mu.rng != x.source:
        raise GraphError(f"cannot prepend {mu} to a path starting at {x.source}")
    if isinstance(x, SinkPath):
        return SinkPath(concat(mu, x.path))
    return lasso(graph, concat(mu, x.prefix), x.rotated_cycle())


def boundary_sort_key(x: BoundaryPath):
    return x.sort_key()


# ---------------------------------------------------------------------------
# Lag sets


@dataclass(frozen=True)
class LagSet:
    """A set of lags: empty, a single integer, or the coset k0 + nZ."""

    kind: str  # "empty" | "single" | "coset"
    k0: int = 0
    n: int = 0

    @classmethod
    def empty(cls) -> "LagSet":
        return cls("empty")

    @classmethod
    def single(cls, k: int) -> "LagSet":
        return cls("single", k0=k)

    @classmethod
    def coset(cls, k0: int, n: int) -> "LagSet":
        if n < 1:
            raise ValueError("coset step must be positive")
        return cls("coset", k0=k0 % n, n=n)

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    def contains(self, k: int) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "single":
            return k == self.k0
        return (k - self.k0) % self.n == 0

    def negate(self) -> "LagSet":
        if self.kind == "empty":
            return self
        if self.kind == "single":
            return LagSet.single(-self.k0)
        return LagSet.coset(-self.k0, self.n)

    def __str__(self) -> str:
        if self.kind == "empty":
            return "{}"
        if self.kind == "single":
            return "{%d}" % self.k0
        return f"{self.k0}+{self.n}Z"


def tail_lags(x: BoundaryPath, y: BoundaryPath) -> LagSet:
    """All k with x tail-equivalent to y with lag k (x = mu.p, y = nu.p, k=|mu|-|nu|)."""
    if isinstance(x, SinkPath) and isinstance(y, SinkPath):
        if x.path.rng != y.path.rng:
            return LagSet.empty()
        return LagSet.single(len(x.path) - len(y.path))
    if isinstance(x, Lasso) and isinstance(y, Lasso):
        if x.cycle != y.cycle:
            return LagSet.empty()
        n = x.period
        k0 = (y.rotation - len(y.prefix)) - (x.rotation - len(x.prefix))
        return LagSet.coset(k0, n)
    return LagSet.empty()


# ---------------------------------------------------------------------------
# Enumeration: paths, cycles, reachability


@dataclass(frozen=True)
class PathEnumeration:
    paths: tuple[FinitePath, ...]
    exact: bool


def _predecessor_vertices(graph: Graph, v: str) -> set[str]:
    seen = {v}
    stack = [v]
    while stack:
        w = stack.pop()
        for e in graph.in_edges(w):
            if e.src not in seen:
                seen.add(e.src)
                stack.append(e.src)
    return seen


def _is_acyclic_on(graph: Graph, vertices: set[str]) -> bool:
    # Kahn's algorithm on the induced subgraph.
    indeg = {v: 0 for v in vertices}
    for v in vertices:
        for e in graph.out_edges(v):
            if e.rng in indeg:
                indeg[e.rng] += 1
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for e in graph.out_edges(v):
            if e.rng in indeg:
                indeg[e.rng] -= 1
                if indeg[e.rng] == 0:
                    queue.append(e.rng)
    return seen == len(vertices)


def cycle_reaches_vertex(graph: Graph, v: str) -> bool:
    preds = _predecessor_vertices(graph, v)
    return not _is_acyclic_on(graph, preds)


def enumerate_paths_ending_at(graph: Graph, v: str, bound: int | None = None) -> PathEnumeration:
    """All paths mu with r(mu) = v up to the length bound.

    When no cycle reaches v the set is finite and is returned completely
    (the bound is ignored and the enumeration is exact); otherwise a bound
    is required and the result is flagged inexact.
    """
    if not graph.is_vertex(v):
        raise GraphError(f"unknown vertex {v!r}")
    exact = not cycle_reaches_vertex(graph, v)
    if not exact and bound is None:
        raise GraphError(f"infinitely many paths end at {v!r}; a bound is required")
    out = [graph.vertex_path(v)]
    frontier = [graph.vertex_path(v)]
    while frontier:
        nxt = []
        for p in frontier:
            if not exact and bound is not None and len(p) >= bound:
                continue
            for e in graph.in_edges(p.src):
                q = FinitePath((e.name,) + p.edges, e.src, v)
                out.append(q)
                nxt.append(q)
        frontier = nxt
    out.sort(key=FinitePath.sort_key)
    return PathEnumeration(tuple(out), exact)


def count_paths_ending_at(graph: Graph, v: str) -> int:
    """Exact path count into v by dynamic programming on the acyclic predecessor subgraph."""
    preds = _predecessor_vertices(graph, v)
    if not _is_acyclic_on(graph, preds):
        raise GraphError(f"a cycle reaches {v!r}; the path count is infinite")
    memo: dict[str, int] = {}

    def count(w: str) -> int:
        if w not in memo:
            memo[w] = 1 + sum(count(e.src) for e in graph.in_edges(w))
        return memo[w]

    return count(v)


def elementary_cycles(graph: Graph) -> tuple[FinitePath, ...]:
    """All cycles (closed paths with no repeated vertex), one rotation each.

    The representative is the lexicographically least edge-name rotation.
    """
    found: set[tuple[str, ...]] = set()
    for start in graph.vertices:
        stack: list[tuple[list[str], str, set[str]]] = [([], start, {start})]
        while stack:
            names, at, visited = stack.pop()
            for e in graph.out_edges(at):
                if e.rng == start:
                    found.add(canonical_rotation(tuple(names + [e.name])))
                elif e.rng not in visited:
                    stack.append((names + [e.name], e.rng, visited | {e.rng}))
    paths = [graph.path(names) for names in found]
    paths.sort(key=FinitePath.sort_key)
    return tuple(paths)


def strongly_connected_components(graph: Graph) -> tuple[frozenset[str], ...]:
    """Tarjan's algorithm, iterative."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    result: list[frozenset[str]] = []
    counter = [0]

    for root in graph.vertices:
        if root in index:
            continue
        work = [(root, iter(graph.out_edges(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for e in it:
                w = e.rng
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(graph.out_edges(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                result.append(frozenset(comp))
    return tuple(result)


def _scc_of(graph: Graph) -> dict[str, frozenset[str]]:
    return {v: comp for comp in strongly_connected_components(graph) for v in comp}


def closed_path_set_is_finite(graph: Graph) -> bool:
    """True iff the set of simple closed paths (up to rotation) is finite.

    Holds exactly when every strongly connected component contains at most
    one elementary cycle; the simple closed paths are then the cycles.
    """
    scc = _scc_of(graph)
    per_comp: dict[frozenset[str], int] = {}
    for c in elementary_cycles(graph):
        comp = scc[c.src]
        per_comp[comp] = per_comp.get(comp, 0) + 1
        if per_comp[comp] > 1:
            return False
    return True


@dataclass(frozen=True)
class ClosedPathEnumeration:
    paths: tuple[FinitePath, ...]
    complete: bool


def simple_closed_paths(graph: Graph, bound: int) -> ClosedPathEnumeration:
    """All simple closed paths of length <= bound, one rotation each.

    ``complete`` is True iff the returned list is provably all of them,
    i.e. the set is structurally finite and no member exceeds the bound.
    """
    if bound < 1:
        raise GraphError("bound must be at least 1")
    found: set[tuple[str, ...]] = set()
    for start in graph.vertices:
        stack: list[tuple[list[str], str]] = [([], start)]
        while stack:
            names, at = stack.pop()
            for e in graph.out_edges(at):
                seq = names + [e.name]
                if e.rng == start and not is_proper_power(tuple(seq)):
                    found.add(canonical_rotation(tuple(seq)))
                if len(seq) < bound:
                    stack.append((seq, e.rng))
    paths = sorted((graph.path(n) for n in found), key=FinitePath.sort_key)
    complete = closed_path_set_is_finite(graph) and all(
        len(c) <= bound for c in elementary_cycles(graph)
    )
    return ClosedPathEnumeration(tuple(paths), complete)


def maximal_sinks(graph: Graph) -> tuple[tuple[str, int], ...]:
    """Sinks not reached by any cycle, with their exact path counts."""
    out = []
    for v in graph.sinks:
        if not cycle_reaches_vertex(graph, v):
            out.append((v, count_paths_ending_at(graph, v)))
    return tuple(out)


def _reaches(graph: Graph, sources: set[str], targets: set[str]) -> bool:
    seen = set(sources)
    stack = list(sources)
    while stack:
        v = stack.pop()
        if v in targets:
            return True
        for e in graph.out_edges(v):
            if e.rng not in seen:
                seen.add(e.rng)
                stack.append(e.rng)
    return False


def maximal_cycles(graph: Graph) -> tuple[FinitePath, ...]:
    """Cycles with no path from any other cycle or simple closed path into them."""
    cycles = elementary_cycles(graph)
    scc = _scc_of(graph)
    out = []
    for c in cycles:
        comp = scc[c.src]
        others = [d for d in cycles if d is not c]
        if any(scc[d.src] == comp for d in others):
            continue
        verts = set(graph.vertex_sequence(c))
        if any(_reaches(graph, set(graph.vertex_sequence(d)), verts) for d in others):
            continue
        out.append(c)
    return tuple(out)


def is_maximal_cycle(graph: Graph, cycle: FinitePath) -> bool:
    star = canonical_rotation(cycle.edges)
    return any(c.edges == star for c in maximal_cycles(graph))
