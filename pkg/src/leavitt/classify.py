"""Classification of spectral simple and graded simple modules.

The graded families over a finite graph are: one shift-family of
boundary-path modules per sink (finite-dimensional exactly for maximal
sinks), a family flag for irrational tail classes (present when some
strongly connected component carries two cycles), and one Laurent family
per simple closed path with shifts modulo its length.  The
finite-dimensional simple modules are the boundary-path modules at
maximal sinks and the scalar extensions at maximal cycles, one per monic
irreducible polynomial other than t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .fields import Field, Poly, PrimeField, RationalField, enumerate_monic_irreducibles, parse_poly
from .graphs import (
    FinitePath,
    Graph,
    sink_path,
    count_paths_ending_at,
    cycle_reaches_vertex,
    elementary_cycles,
    lasso,
    maximal_cycles,
    maximal_sinks,
    simple_closed_paths,
    strongly_connected_components,
)
from .groupoid import canonical_lassos
from .reps import ChenExtSpec, ChenSpec, validate_chen_ext_modulus


class ClassificationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Graded families


@dataclass(frozen=True)
class SinkFamily:
    vertex: str
    dimension: int | None  # None = infinite

    def to_json_dict(self) -> dict:
        return {
            "kind": "sink",
            "vertex": self.vertex,
            "dimension": self.dimension,
            "shifts": "Z",
        }


@dataclass(frozen=True)
class LaurentFamily:
    cycle: FinitePath
    period: int

    @property
    def shifts(self) -> tuple[int, ...]:
        return tuple(range(self.period))

    def to_json_dict(self) -> dict:
        return {
            "kind": "laurent",
            "cycle": str(self.cycle),
            "period": self.period,
            "shifts": list(self.shifts),
        }


@dataclass(frozen=True)
class IrrationalFamilyFlag:
    present: bool
    witness: tuple[str, str] | None

    def to_json_dict(self) -> dict:
        return {
            "kind": "irrational-classes",
            "present": self.present,
            "witness": list(self.witness) if self.witness else None,
        }


@dataclass(frozen=True)
class GradedClassification:
    sink_families: tuple[SinkFamily, ...]
    laurent_families: tuple[LaurentFamily, ...]
    irrational: IrrationalFamilyFlag
    complete: bool
    bounds: dict

    def to_json_dict(self) -> dict:
        return {
            "families": [f.to_json_dict() for f in self.sink_families]
            + [f.to_json_dict() for f in self.laurent_families]
            + [self.irrational.to_json_dict()],
            "complete": self.complete,
            "bounds": dict(self.bounds),
        }


def irrational_classes_flag(graph: Graph) -> IrrationalFamilyFlag:
    """Irrational tail classes exist iff some SCC contains two cycles."""
    scc = {v: comp for comp in strongly_connected_components(graph) for v in comp}
    per_comp: dict[frozenset, list[FinitePath]] = {}
    for c in elementary_cycles(graph):
        per_comp.setdefault(scc[c.src], []).append(c)
    for cycles in per_comp.values():
        if len(cycles) >= 2:
            return IrrationalFamilyFlag(True, (str(cycles[0]), str(cycles[1])))
    return IrrationalFamilyFlag(False, None)


def classify_graded(graph: Graph, cycle_length_bound: int = 6) -> GradedClassification:
    """All spectral graded simple families, up to the cycle length bound."""
    sinks = []
    for v in graph.sinks:
        if cycle_reaches_vertex(graph, v):
            sinks.append(SinkFamily(v, None))
        else:
            sinks.append(SinkFamily(v, count_paths_ending_at(graph, v)))
    closed = simple_closed_paths(graph, cycle_length_bound)
    laurent = [LaurentFamily(c, len(c)) for c in closed.paths]
    return GradedClassification(
        sink_families=tuple(sinks),
        laurent_families=tuple(laurent),
        irrational=irrational_classes_flag(graph),
        complete=closed.complete,
        bounds={"cycle_length": cycle_length_bound},
    )


# ---------------------------------------------------------------------------
# Simple modules


@dataclass(frozen=True)
class SinkSimple:
    vertex: str
    dimension: int

    def module_spec(self, graph: Graph) -> ChenSpec:
        return ChenSpec(sink_path(graph, graph.vertex_path(self.vertex)))

    def to_json_dict(self) -> dict:
        return {"kind": "sink-simple", "vertex": self.vertex, "dimension": self.dimension}


@dataclass(frozen=True)
class CycleSimple:
    cycle: FinitePath
    modulus: Poly
    orbit_size: int
    dimension: int  # orbit_size * deg(modulus)

    def module_spec(self) -> ChenExtSpec:
        return ChenExtSpec(self.cycle, self.modulus)

    def to_json_dict(self) -> dict:
        return {
            "kind": "cycle-simple",
            "cycle": str(self.cycle),
            "modulus": str(self.modulus),
            "dimension": self.dimension,
        }


@dataclass(frozen=True)
class InfiniteDimFlagged:
    kind: str  # "sink" | "cycle" | "irrational-classes"
    base: str
    reason: str

    def to_json_dict(self) -> dict:
        return {
            "kind": "infinite-dimensional",
            "family": self.kind,
            "base": self.base,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class SimpleClassification:
    entries: tuple
    flagged: tuple[InfiniteDimFlagged, ...]
    complete: bool
    bounds: dict
    field_name: str

    def to_json_dict(self) -> dict:
        return {
            "field": self.field_name,
            "families": [e.to_json_dict() for e in self.entries],
            "flagged": [f.to_json_dict() for f in self.flagged],
            "complete": self.complete,
            "bounds": dict(self.bounds),
        }


def rational_class_size(graph: Graph, cycle: FinitePath) -> int:
    """|[c^inf]| for a maximal cycle, by canonical lasso enumeration."""
    x = lasso(graph, graph.vertex_path(cycle.src), cycle.edges)
    return len(canonical_lassos(graph, x.cycle, None))


def moduli_for_field(
    field: Field,
    poly_degree_bound: int,
    rational_values: Iterable[int] = (1, 2, -1),
    extra_moduli: Iterable[Poly] = (),
) -> tuple[list[Poly], bool]:
    """The sampled or enumerated f-axis; second value: complete up to the bound."""
    if isinstance(field, PrimeField):
        return enumerate_monic_irreducibles(field.p, poly_degree_bound), True
    if isinstance(field, RationalField):
        out = []
        for a in rational_values:
            if a == 0:
                raise ClassificationError("t - 0 is the excluded modulus t")
            text = f"t-{a}" if a > 0 else f"t+{-a}"
            out.append(parse_poly(text, field))
        for f in extra_moduli:
            out.append(validate_chen_ext_modulus(field, f))
        out.sort(key=Poly.sort_key)
        return out, False
    raise ClassificationError(
        f"classification enumerates moduli over Q or a prime field, not {field.name}"
    )


def classify_simple(
    graph: Graph,
    field: Field,
    poly_degree_bound: int = 3,
    rational_values: Iterable[int] = (1, 2, -1),
    extra_moduli: Iterable[Poly] = (),
) -> SimpleClassification:
    """Finite-dimensional spectral simples, plus flags for the infinite families."""
    entries: list = []
    flagged: list[InfiniteDimFlagged] = []
    maximal_sink_set = {v for v, _ in maximal_sinks(graph)}
    for v, count in maximal_sinks(graph):
        entries.append(SinkSimple(v, count))
    for v in graph.sinks:
        if v not in maximal_sink_set:
            flagged.append(
                InfiniteDimFlagged("sink", v, "a cycle reaches this sink, so its class is infinite")
            )
    max_cycles = maximal_cycles(graph)
    moduli, moduli_complete = moduli_for_field(
        field, poly_degree_bound, rational_values, extra_moduli
    )
    cycle_entries = []
    for f in moduli:
        for c in max_cycles:
            size = rational_class_size(graph, c)
            cycle_entries.append(CycleSimple(c, f, size, size * f.degree))
    entries.extend(cycle_entries)
    max_cycle_names = {c.edges for c in max_cycles}
    for c in elementary_cycles(graph):
        if c.edges not in max_cycle_names:
            flagged.append(
                InfiniteDimFlagged(
                    "cycle", str(c), "another cycle reaches this one, so its class is infinite"
                )
            )
    irr = irrational_classes_flag(graph)
    if irr.present:
        flagged.append(
            InfiniteDimFlagged(
                "irrational-classes",
                " and ".join(irr.witness),
                "entwined cycles give irrational tail classes; infinite-dimensional by truncation",
            )
        )
    complete = moduli_complete or not max_cycles
    return SimpleClassification(
        entries=tuple(entries),
        flagged=tuple(flagged),
        complete=complete,
        bounds={"poly_degree": poly_degree_bound},
        field_name=field.name,
    )


def dimension_oracle(graph: Graph, entry) -> int:
    """Independent dimension computation for a finite-dimensional entry.

    Sink entries: dynamic programming on the acyclic predecessor subgraph.
    Cycle entries: brute-force boundary-path enumeration with canonical
    dedup (exact because the predecessors are finite) times deg(modulus).
    """
    if isinstance(entry, SinkSimple):
        return count_paths_ending_at(graph, entry.vertex)
    if isinstance(entry, CycleSimple):
        star = entry.cycle.edges
        n = len(star)
        horizon = len(graph.vertices) + n + 1
        seen = set()
        stack = [graph.vertex_path(v) for v in graph.vertices]
        while stack:
            p = stack.pop()
            rotated = {i for i in range(n) if graph.edge(star[i]).src == p.rng}
            for i in rotated:
                seen.add(lasso(graph, p, star[i:] + star[:i]))
            if len(p) < horizon:
                for e in graph.out_edges(p.rng):
                    stack.append(FinitePath(p.edges + (e.name,), p.src, e.rng))
        return len(seen) * entry.modulus.degree
    raise ClassificationError(f"no finite dimension for {entry!r}")
