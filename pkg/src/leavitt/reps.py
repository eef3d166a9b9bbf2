"""Module constructions over the path algebra.

Four families of modules are realized with explicit canonical bases:

* boundary-path modules on a tail-equivalence class [x], optionally
  twisted by an invertible scalar per edge ("Chen" modules);
* their scalar extensions along K[t]/(f) for a simple closed path
  (the cycle's first edge acts by the class of t);
* the graded module on the normal monomials mu.nu* with s(nu) on a
  cycle without exits;
* induced modules: the free module on the morphisms ending at a base
  point x, tensored over the isotropy group algebra with a coefficient
  module (trivial, scalar-action, quotient-field, or shifted Laurent).

All actions are exact and total: the result of acting on a basis element
is a finite combination of canonical basis elements, never a truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .algebra import AlgebraElement, LeavittAlgebra, Monomial, TwistVector, monomial
from .fields import ExtensionField, Field, FieldError, Poly, is_irreducible
from .graphs import (
    BoundaryPath,
    FinitePath,
    Graph,
    Lasso,
    SinkPath,
    canonical_rotation,
    enumerate_paths_ending_at,
    lasso,
    prepend,
    strip_prefix,
    tail_lags,
)
from .groupoid import orbit, orbit_size


class ModuleSpecError(ValueError):
    """A module specification violates its preconditions."""


class NotGradableError(ValueError):
    """Raised when grading data is requested from a non-graded module."""


# ---------------------------------------------------------------------------
# Coefficient-module specifications over the isotropy group algebra


@dataclass(frozen=True)
class TrivialCoeff:
    """K with the trivial action, shifted; for bases with trivial isotropy."""

    shift: int = 0


@dataclass(frozen=True)
class ScalarAction:
    """K with the isotropy generator acting by the nonzero scalar; not graded."""

    value: object


@dataclass(frozen=True)
class QuotientCoeff:
    """K[t,1/t]/(f) with the generator acting by the class of t; not graded."""

    modulus: Poly


@dataclass(frozen=True)
class LaurentCoeff:
    """K[t^n, t^(-n)] shifted by 0 <= shift < n; graded, not simple."""

    shift: int = 0


NSpec = Union[TrivialCoeff, ScalarAction, QuotientCoeff, LaurentCoeff]


# ---------------------------------------------------------------------------
# Module specifications


@dataclass(frozen=True)
class ChenSpec:
    base: BoundaryPath
    twist: TwistVector | None = None
    shift: int = 0


@dataclass(frozen=True)
class ChenExtSpec:
    cycle: FinitePath
    modulus: Poly
    shift: int = 0


@dataclass(frozen=True)
class NvcSpec:
    cycle: FinitePath
    shift: int = 0


@dataclass(frozen=True)
class InducedSpec:
    base: BoundaryPath
    coeff: NSpec
    shift: int = 0


ModuleSpec = Union[ChenSpec, ChenExtSpec, NvcSpec, InducedSpec]


# ---------------------------------------------------------------------------
# Basis elements and vectors


@dataclass(frozen=True)
class ChenBasis:
    path: BoundaryPath
    power: int = 0

    def __str__(self) -> str:
        return f"{self.path}#{self.power}" if self.power else str(self.path)

    def sort_key(self):
        return (self.path.sort_key(), self.power)


@dataclass(frozen=True)
class NvcBasis:
    mono: Monomial

    def __str__(self) -> str:
        return str(self.mono)

    def sort_key(self):
        return self.mono.sort_key()


@dataclass(frozen=True)
class CosetBasis:
    path: BoundaryPath
    lag: int
    power: int = 0

    def __str__(self) -> str:
        body = f"{self.path}@{self.lag}"
        return f"{body}#{self.power}" if self.power else body

    def sort_key(self):
        return (self.path.sort_key(), self.lag, self.power)


BasisElement = Union[ChenBasis, NvcBasis, CosetBasis]


class ModuleVector:
    """A finite scalar-weighted combination of basis elements."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict | None = None):
        self.field = field
        self.terms = {}
        for b, c in (terms or {}).items():
            c = field.coerce(c)
            if not field.is_zero(c):
                self.terms[b] = c

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        F = self.field
        out = dict(self.terms)
        for b, c in other.terms.items():
            acc = F.add(out.get(b, F.zero()), c)
            if F.is_zero(acc):
                out.pop(b, None)
            else:
                out[b] = acc
        return ModuleVector(F, out)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + other.scale(self.field.neg(self.field.one()))

    def scale(self, c) -> "ModuleVector":
        F = self.field
        c = F.coerce(c)
        return ModuleVector(F, {b: F.mul(c, x) for b, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("module vectors are unhashable")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for b in sorted(self.terms, key=lambda b: b.sort_key()):
            cs = F.format(self.terms[b])
            parts.append(str(b) if cs == "1" else f"{cs} {b}")
        return " + ".join(parts)


@dataclass(frozen=True)
class BasisEnumeration:
    elements: tuple[BasisElement, ...]
    exact: bool
    dimension: int | None  # None means infinite


# ---------------------------------------------------------------------------
# The common module interface


class Module:
    """A left module over the path algebra with a canonical basis."""

    graph: Graph
    field: Field
    spec: ModuleSpec
    gradable: bool

    def enumerate_basis(self, bound: int | None = None) -> BasisEnumeration:
        raise NotImplementedError

    def act_monomial_basis(self, mono: Monomial, b: BasisElement) -> list[tuple[BasisElement, object]]:
        raise NotImplementedError

    def grade(self, b: BasisElement) -> int:
        raise NotImplementedError

    def finite_dimensional(self) -> bool:
        raise NotImplementedError

    def act(self, elt: AlgebraElement, vec: ModuleVector) -> ModuleVector:
        """Exact action; distributes over terms and collects like basis elements."""
        F = self.field
        out: dict[BasisElement, object] = {}
        for m, c in elt.terms.items():
            for b, s in vec.terms.items():
                for b2, s2 in self.act_monomial_basis(m, b):
                    acc = F.add(out.get(b2, F.zero()), F.mul(c, F.mul(s, s2)))
                    if F.is_zero(acc):
                        out.pop(b2, None)
                    else:
                        out[b2] = acc
        return ModuleVector(F, out)

    def vector(self, terms: dict) -> ModuleVector:
        return ModuleVector(self.field, terms)

    def algebra(self) -> LeavittAlgebra:
        return LeavittAlgebra(self.graph, self.field)


def _twist_scale(field: Field, twist: TwistVector, m: Monomial):
    return field.mul(twist.of_path(m.mu), field.inv(twist.of_path(m.nu)))


class ChenModule(Module):
    """The boundary-path module on [x], with an optional twist."""

    def __init__(self, graph: Graph, field: Field, spec: ChenSpec):
        self.graph = graph
        self.field = field
        self.spec = spec
        if spec.twist is not None and spec.twist.field != field:
            raise ModuleSpecError("twist is over a different field")
        self.rational = isinstance(spec.base, Lasso)
        self.gradable = not self.rational

    def enumerate_basis(self, bound: int | None = None) -> BasisEnumeration:
        res = orbit(self.graph, self.spec.base, bound)
        elems = tuple(ChenBasis(p) for p in res.elements)
        return BasisEnumeration(elems, res.exact, len(elems) if res.exact else None)

    def act_monomial_basis(self, mono: Monomial, b: ChenBasis):
        rem = strip_prefix(self.graph, mono.nu, b.path)
        if rem is None:
            return []
        target = prepend(self.graph, mono.mu, rem)
        scale = self.field.one()
        if self.spec.twist is not None:
            scale = _twist_scale(self.field, self.spec.twist, mono)
        return [(ChenBasis(target), scale)]

    def grade(self, b: ChenBasis) -> int:
        if self.rational:
            raise NotGradableError(
                "the boundary-path module at a rational base point is not graded"
            )
        lags = tail_lags(b.path, self.spec.base)
        assert lags.kind == "single"
        return lags.k0 - self.spec.shift

    def finite_dimensional(self) -> bool:
        return orbit_size(self.graph, self.spec.base) is not None


class ChenExtModule(Module):
    """Scalar extension of the twisted module at a cycle tail along K[t]/(f).

    Over the ground field the basis is [x] x {1, t, ..., t^(deg f - 1)};
    the cycle's first edge multiplies the tensor coordinate by the class
    of t, and the action is expanded back into ground-field coordinates.
    """

    def __init__(self, graph: Graph, field: Field, spec: ChenExtSpec):
        self.graph = graph
        self.field = field
        if spec.cycle.src != spec.cycle.rng or not spec.cycle.edges:
            raise ModuleSpecError(f"{spec.cycle} is not a closed path")
        star = graph.path(canonical_rotation(spec.cycle.edges))
        if star.edges != spec.cycle.edges:
            spec = ChenExtSpec(star, spec.modulus, spec.shift)
        self.spec = spec
        self.scalars = ExtensionField(field, spec.modulus)
        self.base = lasso(graph, graph.vertex_path(star.src), star.edges)
        self.twist = TwistVector.make(
            graph, self.scalars, {star.edges[0]: self.scalars.tbar()}
        )
        self.gradable = False

    @property
    def tensor_dim(self) -> int:
        return self.scalars.degree

    def enumerate_basis(self, bound: int | None = None) -> BasisEnumeration:
        res = orbit(self.graph, self.base, bound)
        elems = tuple(
            ChenBasis(p, j) for p in res.elements for j in range(self.tensor_dim)
        )
        return BasisEnumeration(elems, res.exact, len(elems) if res.exact else None)

    def act_monomial_basis(self, mono: Monomial, b: ChenBasis):
        rem = strip_prefix(self.graph, mono.nu, b.path)
        if rem is None:
            return []
        target = prepend(self.graph, mono.mu, rem)
        Kp = self.scalars
        unit = [Kp.base.zero()] * self.tensor_dim
        unit[b.power] = Kp.base.one()
        value = Kp.mul(_twist_scale(Kp, self.twist, mono), tuple(unit))
        return [
            (ChenBasis(target, j), c)
            for j, c in enumerate(value)
            if not self.field.is_zero(c)
        ]

    def grade(self, b: ChenBasis) -> int:
        raise NotGradableError("scalar-extension modules at cycle tails are not graded")

    def finite_dimensional(self) -> bool:
        return orbit_size(self.graph, self.base) is not None


class NvcModule(Module):
    """Graded module on normal monomials mu.nu* with s(nu) = base of a no-exit cycle."""

    def __init__(self, graph: Graph, field: Field, spec: NvcSpec):
        self.graph = graph
        self.field = field
        star = graph.path(canonical_rotation(spec.cycle.edges))
        if star.edges != spec.cycle.edges:
            spec = NvcSpec(star, spec.shift)
        self.spec = spec
        verts = graph.vertex_sequence(star)[:-1]
        if len(set(verts)) != len(verts):
            raise ModuleSpecError(f"{star} repeats a vertex, so it is not a cycle")
        for w in verts:
            extra = [e.name for e in graph.out_edges(w) if e.name not in set(star.edges)]
            if extra:
                raise ModuleSpecError(
                    f"cycle {star} has an exit at {w}: {sorted(extra)}"
                )
        self.base_vertex = star.src
        self._algebra = LeavittAlgebra(graph, field)
        self.gradable = True

    def _cycle_segment(self, length: int) -> FinitePath:
        star = self.spec.cycle
        if length == 0:
            return self.graph.vertex_path(self.base_vertex)
        names = (star.edges * (length // len(star.edges) + 1))[:length]
        return self.graph.path(names)

    def enumerate_basis(self, bound: int | None = None) -> BasisEnumeration:
        if bound is None:
            raise ModuleSpecError("this module is infinite-dimensional; a bound is required")
        elems = []
        for l in range(bound + 1):
            nu = self._cycle_segment(l)
            mus = enumerate_paths_ending_at(self.graph, nu.rng, bound=bound).paths
            for mu in mus:
                m = monomial(mu, nu)
                if self._algebra.is_normal(m):
                    elems.append(NvcBasis(m))
        elems.sort(key=lambda b: b.sort_key())
        return BasisEnumeration(tuple(elems), False, None)

    def act_monomial_basis(self, mono: Monomial, b: NvcBasis):
        prod = self._algebra.mono_mul(mono, b.mono)
        if prod is None:
            return []
        out = []
        for m, c in self._algebra._normalize_terms([(prod, self.field.one())]).items():
            assert m.nu.src == self.base_vertex
            out.append((NvcBasis(m), c))
        return out

    def grade(self, b: NvcBasis) -> int:
        return b.mono.degree - self.spec.shift

    def finite_dimensional(self) -> bool:
        return False


class InducedModule(Module):
    """RL_x tensored with a coefficient module over the isotropy group algebra.

    Bases are cosets (y, k, x) x tensor coordinate.  Over a rational base
    the lag of a coset representative is canonicalized via the aligned
    lasso decomposition; the discarded isotropy power is absorbed into the
    coefficient coordinate.
    """

    def __init__(self, graph: Graph, field: Field, spec: InducedSpec):
        self.graph = graph
        self.field = field
        self.spec = spec
        self.rational = isinstance(spec.base, Lasso)
        coeff = spec.coeff
        if self.rational:
            if isinstance(coeff, TrivialCoeff):
                raise ModuleSpecError(
                    "a rational base has infinite cyclic isotropy; "
                    "use a scalar action, quotient field, or Laurent coefficient"
                )
            self.period = spec.base.period
            if isinstance(coeff, LaurentCoeff) and not 0 <= coeff.shift < self.period:
                coeff = LaurentCoeff(coeff.shift % self.period)
                self.spec = InducedSpec(spec.base, coeff, spec.shift)
        else:
            if not isinstance(coeff, TrivialCoeff):
                raise ModuleSpecError(
                    "a non-rational base has trivial isotropy; use a trivial coefficient"
                )
            self.period = 0
        self.scalars: ExtensionField | None = None
        if isinstance(coeff, QuotientCoeff):
            self.scalars = ExtensionField(field, coeff.modulus)
        elif isinstance(coeff, ScalarAction):
            value = field.coerce(coeff.value)
            if field.is_zero(value):
                raise ModuleSpecError("the scalar action value must be nonzero")
            self.action_value = value
        self.gradable = isinstance(coeff, (TrivialCoeff, LaurentCoeff))

    @property
    def tensor_dim(self) -> int:
        return self.scalars.degree if self.scalars is not None else 1

    # -- canonical coset representatives ---------------------------------

    def canonical_decomposition(self, y: BoundaryPath) -> tuple[FinitePath, FinitePath]:
        """(mu, nu) with y = mu.p, x = nu.p along the canonical lasso alignment."""
        x = self.spec.base
        if isinstance(x, SinkPath):
            if not isinstance(y, SinkPath) or y.path.rng != x.path.rng:
                raise ModuleSpecError(f"{y} is not in the class of {x}")
            return y.path, x.path
        if not isinstance(y, Lasso) or y.cycle != x.cycle:
            raise ModuleSpecError(f"{y} is not in the class of {x}")
        n = self.period
        seg_len = (y.rotation - x.rotation) % n
        rotated = x.cycle[x.rotation:] + x.cycle[: x.rotation]
        nu = x.prefix
        if seg_len:
            seg = self.graph.path(rotated[:seg_len])
            nu = FinitePath(nu.edges + seg.edges, nu.src, seg.rng)
        return y.prefix, nu

    def canonical_lag(self, y: BoundaryPath) -> int:
        mu, nu = self.canonical_decomposition(y)
        return len(mu) - len(nu)

    # -- enumeration -------------------------------------------------------

    def enumerate_basis(self, bound: int | None = None) -> BasisEnumeration:
        coeff = self.spec.coeff
        res = orbit(self.graph, self.spec.base, bound)
        if isinstance(coeff, LaurentCoeff):
            if bound is None:
                raise ModuleSpecError(
                    "this module is infinite-dimensional; a bound is required"
                )
            elems = []
            for y in res.elements:
                lags = tail_lags(y, self.spec.base)
                for k in range(-bound, bound + 1):
                    if lags.contains(k):
                        elems.append(CosetBasis(y, k))
            elems.sort(key=lambda b: b.sort_key())
            return BasisEnumeration(tuple(elems), False, None)
        elems = []
        for y in res.elements:
            k = self.canonical_lag(y)
            for j in range(self.tensor_dim):
                elems.append(CosetBasis(y, k, j))
        elems.sort(key=lambda b: b.sort_key())
        dim = len(elems) if res.exact else None
        return BasisEnumeration(tuple(elems), res.exact, dim)

    # -- action ------------------------------------------------------------

    def act_monomial_basis(self, mono: Monomial, b: CosetBasis):
        rem = strip_prefix(self.graph, mono.nu, b.path)
        if rem is None:
            return []
        target = prepend(self.graph, mono.mu, rem)
        lag = mono.degree + b.lag
        coeff = self.spec.coeff
        if isinstance(coeff, LaurentCoeff):
            return [(CosetBasis(target, lag), self.field.one())]
        if isinstance(coeff, TrivialCoeff):
            return [(CosetBasis(target, lag), self.field.one())]
        k_can = self.canonical_lag(target)
        j_diff, remainder = divmod(lag - k_can, self.period)
        assert remainder == 0
        if isinstance(coeff, ScalarAction):
            return [(CosetBasis(target, k_can), self.field.pow(self.action_value, j_diff))]
        Kp = self.scalars
        unit = [Kp.base.zero()] * self.tensor_dim
        unit[b.power] = Kp.base.one()
        value = Kp.mul(Kp.tbar_pow(j_diff), tuple(unit))
        return [
            (CosetBasis(target, k_can, j), c)
            for j, c in enumerate(value)
            if not self.field.is_zero(c)
        ]

    def grade(self, b: CosetBasis) -> int:
        coeff = self.spec.coeff
        if isinstance(coeff, TrivialCoeff):
            return b.lag - coeff.shift - self.spec.shift
        if isinstance(coeff, LaurentCoeff):
            return b.lag - coeff.shift - self.spec.shift
        raise NotGradableError("scalar-action and quotient coefficients are not graded")

    def finite_dimensional(self) -> bool:
        if isinstance(self.spec.coeff, LaurentCoeff):
            return False
        return orbit_size(self.graph, self.spec.base) is not None


def build_module(graph: Graph, field: Field, spec: ModuleSpec) -> Module:
    if isinstance(spec, ChenSpec):
        return ChenModule(graph, field, spec)
    if isinstance(spec, ChenExtSpec):
        return ChenExtModule(graph, field, spec)
    if isinstance(spec, NvcSpec):
        return NvcModule(graph, field, spec)
    if isinstance(spec, InducedSpec):
        return InducedModule(graph, field, spec)
    raise ModuleSpecError(f"unknown module spec {spec!r}")


def validate_chen_ext_modulus(field: Field, modulus: Poly) -> Poly:
    """Monic irreducible with nonzero constant term (so distinct from t)."""
    if not modulus.is_monic or modulus.degree < 1:
        raise ModuleSpecError("modulus must be monic of degree >= 1")
    if field.is_zero(modulus.coeff(0)):
        raise ModuleSpecError("modulus t is excluded (its constant term vanishes)")
    try:
        if not is_irreducible(modulus):
            raise ModuleSpecError(f"{modulus} is reducible")
    except FieldError as exc:
        raise ModuleSpecError(str(exc)) from exc
    return modulus
