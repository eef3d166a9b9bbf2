"""The Leavitt path algebra of a finite graph.

Elements are sparse linear combinations of monomials mu.nu* (paths with a
common range).  Multiplication is the prefix calculus of the relation
e*f = delta_{e,f} r(e); canonical forms eliminate, at every regular vertex,
monomials whose two sides both end in the vertex's special edge, via the
relation v = sum of ee* over edges leaving v.  The special edge is the
lexicographically least edge name, so normal forms are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .graphs import FinitePath, Graph, concat, initial_remainder


class AlgebraError(ValueError):
    """Invalid algebra element construction or mixed-context operation."""


@dataclass(frozen=True)
class Monomial:
    """mu.nu* with r(mu) = r(nu); degree |mu| - |nu|."""

    mu: FinitePath
    nu: FinitePath

    @property
    def degree(self) -> int:
        return len(self.mu) - len(self.nu)

    def transpose(self) -> "Monomial":
        return Monomial(self.nu, self.mu)

    def __str__(self) -> str:
        if self.nu.is_trivial:
            return str(self.mu)
        return f"{self.mu} {self.nu}^"

    def sort_key(self):
        return (self.mu.sort_key(), self.nu.sort_key())


def monomial(mu: FinitePath, nu: FinitePath) -> Monomial:
    if mu.rng != nu.rng:
        raise AlgebraError(f"ranges differ: r({mu}) = {mu.rng}, r({nu}) = {nu.rng}")
    return Monomial(mu, nu)


@dataclass(frozen=True)
class TwistVector:
    """An invertible scalar per edge; paths get the product of their edges."""

    field: Field
    entries: tuple[tuple[str, object], ...]  # sorted by edge name, all edges present

    @classmethod
    def make(cls, graph: Graph, field: Field, values: dict | None = None) -> "TwistVector":
        values = dict(values or {})
        table = {}
        for e in graph.edges:
            raw = values.pop(e.name, field.one())
            c = field.coerce(raw)
            if field.is_zero(c):
                raise AlgebraError(f"twist value at edge {e.name!r} must be nonzero")
            table[e.name] = c
        if values:
            raise AlgebraError(f"twist names unknown edges: {sorted(values)}")
        return cls(field, tuple(sorted(table.items())))

    def value(self, edge_name: str):
        for name, c in self.entries:
            if name == edge_name:
                return c
        raise AlgebraError(f"no twist value for edge {edge_name!r}")

    def of_path(self, path: FinitePath):
        """a_mu: the product of the edge scalars along mu (1 for vertices)."""
        out = self.field.one()
        for name in path.edges:
            out = self.field.mul(out, self.value(name))
        return out

    def inverse(self) -> "TwistVector":
        F = self.field
        return TwistVector(F, tuple((n, F.inv(c)) for n, c in self.entries))

    def is_stable(self, path: FinitePath) -> bool:
        """mu-stability: a_mu = 1."""
        return self.of_path(path) == self.field.one()


class LeavittAlgebra:
    """Element factory and arithmetic context for one (graph, field) pair."""

    def __init__(self, graph: Graph, field: Field):
        self.graph = graph
        self.field = field
        self.special_edge = {
            v: graph.out_edges(v)[0].name for v in graph.vertices if graph.is_regular(v)
        }

    # -- element construction ----------------------------------------------

    def element(self, terms: dict) -> "AlgebraElement":
        F = self.field
        out = {}
        for m, c in terms.items():
            c = F.coerce(c)
            if not F.is_zero(c):
                out[m] = c
        return AlgebraElement(self, out)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        """Sum of all vertex idempotents (the identity; the graph is finite)."""
        one = self.field.one()
        return self.element({self._vertex_mono(v): one for v in self.graph.vertices})

    def vertex(self, v: str) -> "AlgebraElement":
        return self.element({self._vertex_mono(v): self.field.one()})

    def edge(self, name: str) -> "AlgebraElement":
        e = self.graph.edge(name)
        mu = self.graph.path([name])
        return self.element({monomial(mu, self.graph.vertex_path(e.rng)): self.field.one()})

    def ghost(self, name: str) -> "AlgebraElement":
        e = self.graph.edge(name)
        nu = self.graph.path([name])
        return self.element({monomial(self.graph.vertex_path(e.rng), nu): self.field.one()})

    def path_element(self, path: FinitePath) -> "AlgebraElement":
        return self.element({monomial(path, self.graph.vertex_path(path.rng)): self.field.one()})

    def monomial_element(self, m: Monomial, coef=None) -> "AlgebraElement":
        return self.element({m: self.field.one() if coef is None else coef})

    def _vertex_mono(self, v: str) -> Monomial:
        p = self.graph.vertex_path(v)
        return Monomial(p, p)

    # -- multiplication ------------------------------------------------------

    def mono_mul(self, m1: Monomial, m2: Monomial) -> Monomial | None:
        """(mu.nu*)(al.be*): mu.gamma.be* if al = nu.gamma, mu.(be.gamma)* if nu = al.gamma, else 0."""
        gamma = initial_remainder(m1.nu, m2.mu)
        if gamma is not None:
            return monomial(concat(m1.mu, gamma), m2.nu)
        gamma = initial_remainder(m2.mu, m1.nu)
        if gamma is not None:
            return monomial(m1.mu, concat(m2.nu, gamma))
        return None

    def is_normal(self, m: Monomial) -> bool:
        if not m.mu.edges or not m.nu.edges:
            return True
        last = m.mu.edges[-1]
        if last != m.nu.edges[-1]:
            return True
        return last != self.special_edge[self.graph.edge(last).src]

    def normalize(self, x: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self, self._normalize_terms(list(x.terms.items())))

    def _normalize_terms(self, work: list) -> dict:
        F = self.field
        out: dict[Monomial, object] = {}
        work = list(work)
        while work:
            m, coef = work.pop()
            if F.is_zero(coef):
                continue
            if self.is_normal(m):
                acc = F.add(out.get(m, F.zero()), coef)
                if F.is_zero(acc):
                    out.pop(m, None)
                else:
                    out[m] = acc
                continue
            # rewrite mu0.e e*.nu0* -> mu0.nu0* - sum over f != e of mu0.f f*.nu0*
            e = self.graph.edge(m.mu.edges[-1])
            mu0 = FinitePath(m.mu.edges[:-1], m.mu.src, e.src)
            nu0 = FinitePath(m.nu.edges[:-1], m.nu.src, e.src)
            work.append((Monomial(mu0, nu0), coef))
            for f in self.graph.out_edges(e.src):
                if f.name == e.name:
                    continue
                muf = FinitePath(mu0.edges + (f.name,), mu0.src, f.rng)
                nuf = FinitePath(nu0.edges + (f.name,), nu0.src, f.rng)
                work.append((Monomial(muf, nuf), F.neg(coef)))
        return out

    def mul(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        self._check(x)
        self._check(y)
        F = self.field
        raw: dict[Monomial, object] = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                m = self.mono_mul(m1, m2)
                if m is None:
                    continue
                c = F.mul(c1, c2)
                acc = F.add(raw.get(m, F.zero()), c)
                if F.is_zero(acc):
                    raw.pop(m, None)
                else:
                    raw[m] = acc
        return AlgebraElement(self, self._normalize_terms(list(raw.items())))

    def _check(self, x: "AlgebraElement"):
        if x.algebra is not self and (
            x.algebra.graph.to_json_dict() != self.graph.to_json_dict()
            or x.algebra.field != self.field
        ):
            raise AlgebraError("elements live over different graphs or fields")

    # -- twisting -------------------------------------------------------------

    def sigma_twist(self, a: TwistVector, x: "AlgebraElement") -> "AlgebraElement":
        """The automorphism scaling mu.nu* by a_mu * a_nu^(-1)."""
        F = self.field
        out = {}
        for m, c in x.terms.items():
            s = F.mul(a.of_path(m.mu), F.inv(a.of_path(m.nu)))
            out[m] = F.mul(s, c)
        return AlgebraElement(self, out)

    def ghost_transpose(self, x: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self, {m.transpose(): c for m, c in x.terms.items()})


class AlgebraElement:
    """A finite K-linear combination of monomials (no zero coefficients stored)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = dict(terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        F = self.algebra.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = F.add(out.get(m, F.zero()), c)
            if F.is_zero(acc):
                out.pop(m, None)
            else:
                out[m] = acc
        return AlgebraElement(self.algebra, out)

    def __neg__(self) -> "AlgebraElement":
        F = self.algebra.field
        return AlgebraElement(self.algebra, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.mul(self, other)

    def scale(self, c) -> "AlgebraElement":
        F = self.algebra.field
        c = F.coerce(c)
        if F.is_zero(c):
            return self.algebra.zero()
        return AlgebraElement(self.algebra, {m: F.mul(c, x) for m, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.normalize(self - other).is_zero

    def __hash__(self):
        raise TypeError("algebra elements are unhashable; compare with ==")

    def homogeneous_component(self, k: int) -> "AlgebraElement":
        return AlgebraElement(
            self.algebra, {m: c for m, c in self.terms.items() if m.degree == k}
        )

    def degrees(self) -> list[int]:
        return sorted({m.degree for m in self.terms})

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.algebra.field
        parts = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            c = self.terms[m]
            cs = F.format(c)
            parts.append(str(m) if cs == "1" else f"{cs} {m}")
        return " + ".join(parts)


def all_monomials(graph: Graph, max_len: int) -> list[Monomial]:
    """Every mu.nu* with |mu|, |nu| <= max_len, canonically ordered."""
    paths: list[FinitePath] = [graph.vertex_path(v) for v in graph.vertices]
    frontier = list(paths)
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for e in graph.out_edges(p.rng):
                nxt.append(FinitePath(p.edges + (e.name,), p.src, e.rng))
        paths.extend(nxt)
        frontier = nxt
    by_range: dict[str, list[FinitePath]] = {}
    for p in paths:
        by_range.setdefault(p.rng, []).append(p)
    out = []
    for v in sorted(by_range):
        group = sorted(by_range[v], key=FinitePath.sort_key)
        for mu in group:
            for nu in group:
                out.append(Monomial(mu, nu))
    return out


def random_element(algebra: LeavittAlgebra, rng, max_len: int = 2, max_terms: int = 2) -> AlgebraElement:
    """A small random element for property tests (seeded rng)."""
    monos = all_monomials(algebra.graph, max_len)
    terms: dict[Monomial, object] = {}
    F = algebra.field
    for _ in range(rng.randint(1, max_terms)):
        m = monos[rng.randrange(len(monos))]
        c = F.random(rng)
        if not F.is_zero(c):
            terms[m] = F.add(terms.get(m, F.zero()), c)
    return algebra.element(terms)
