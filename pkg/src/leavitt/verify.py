"""Window linear algebra, restriction, intertwiners, and certificates.

Infinite-dimensional modules are handled on explicit finite windows; any
operation that must close a matrix over a window raises OutOfWindowError
instead of truncating.  The certificate builders realize the structural
isomorphisms between induced modules and the boundary-path families as
executable mutual inverses, checked exactly on windows together with
degree preservation and equivariance over all short monomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field

from .algebra import (
    AlgebraElement,
    LeavittAlgebra,
    Monomial,
    TwistVector,
    all_monomials,
    monomial,
    random_element,
)
from .fields import Field, Poly
from .graphs import (
    BoundaryPath,
    FinitePath,
    Lasso,
    SinkPath,
    canonical_rotation,
    concat,
    lasso,
    tail_lags,
    unroll,
)
from .linalg import coordinates, identity, mat_mul, mat_vec, nullspace, rref
from .groupoid import pi_consistency
from .reps import (
    BasisElement,
    ChenBasis,
    ChenExtModule,
    ChenExtSpec,
    ChenModule,
    ChenSpec,
    CosetBasis,
    InducedModule,
    InducedSpec,
    LaurentCoeff,
    Module,
    ModuleSpec,
    ModuleSpecError,
    ModuleVector,
    NvcBasis,
    NvcModule,
    NvcSpec,
    QuotientCoeff,
    ScalarAction,
    TrivialCoeff,
    build_module,
)


class OutOfWindowError(Exception):
    """An action left the enumerated window; the window is not closed."""


class Window:
    """A finite slice of a module's canonical basis, with exact matrices."""

    def __init__(self, module: Module, elements):
        self.module = module
        self.elements = tuple(elements)
        self.index = {b: i for i, b in enumerate(self.elements)}

    @classmethod
    def full(cls, module: Module) -> "Window":
        if not module.finite_dimensional():
            raise ModuleSpecError("module is not finite-dimensional; use a bounded window")
        return cls(module, module.enumerate_basis().elements)

    @classmethod
    def bounded(cls, module: Module, bound: int) -> "Window":
        return cls(module, module.enumerate_basis(bound).elements)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def coords(self, vec: ModuleVector) -> list:
        F = self.module.field
        out = [F.zero()] * self.dim
        for b, c in vec.terms.items():
            i = self.index.get(b)
            if i is None:
                raise OutOfWindowError(f"{b} is outside the window")
            out[i] = c
        return out

    def matrix_of(self, elt: AlgebraElement) -> list[list]:
        """Column j is the image of basis element j."""
        F = self.module.field
        mat = [[F.zero()] * self.dim for _ in range(self.dim)]
        for j, b in enumerate(self.elements):
            image = self.module.act(elt, ModuleVector(F, {b: F.one()}))
            for b2, c in image.terms.items():
                i = self.index.get(b2)
                if i is None:
                    raise OutOfWindowError(f"action of {elt} leaves the window at {b2}")
                mat[i][j] = c
        return mat

    def degrees(self) -> list[int]:
        return [self.module.grade(b) for b in self.elements]


def generator_elements(algebra: LeavittAlgebra) -> list[AlgebraElement]:
    """Vertex idempotents, edges, and ghost edges, in canonical order."""
    out = [algebra.vertex(v) for v in algebra.graph.vertices]
    for e in algebra.graph.edges:
        out.append(algebra.edge(e.name))
        out.append(algebra.ghost(e.name))
    return out


# ---------------------------------------------------------------------------
# Restriction along the descending chain of cylinder idempotents


@dataclass
class Restriction:
    dimension: int
    generator_matrix: list
    subspace: list
    steps: int
    degrees: list | None

    def to_json_dict(self, field: Field) -> dict:
        return {
            "dimension": self.dimension,
            "generator_matrix": [[field.format(c) for c in row] for row in self.generator_matrix],
            "steps": self.steps,
            "degrees": self.degrees,
        }


def _initial_subpath(module: Module, x: BoundaryPath, m: int) -> FinitePath:
    names = unroll(x, m)
    if len(names) < m:
        raise ValueError("sink path exhausted")
    if m == 0:
        return module.graph.vertex_path(x.source)
    return module.graph.path(names)


def _isotropy_monomial(module: Module, x: BoundaryPath) -> Monomial | None:
    """A monomial whose bisection contains the isotropy generator (x, |c|, x)."""
    if isinstance(x, SinkPath):
        return None
    alpha = x.prefix
    rotated = module.graph.path(x.rotated_cycle())
    return monomial(concat(alpha, rotated), alpha)


def restrict(module: Module, x: BoundaryPath, cap: int = 12) -> Restriction:
    """Intersection of the idempotent images over initial subpaths of x.

    Requires a finite-dimensional module.  The chain is descending and,
    because cylinder idempotents act by prefix matching, it is provably
    constant beyond a horizon set by the longest basis prefix; ``steps``
    reports how many idempotents were needed before the image stopped
    moving, and exceeding ``cap`` is an explicit error.
    """
    window = Window.full(module)
    A = module.algebra()
    F = module.field
    if isinstance(x, SinkPath):
        horizon = len(x.path)
    else:
        reach = max(
            (
                len(b.path.prefix)
                for b in window.elements
                if isinstance(b, (ChenBasis, CosetBasis)) and isinstance(b.path, Lasso)
            ),
            default=0,
        )
        horizon = len(x.prefix) + reach + 2 * x.period + 1
    images = []
    for m in range(horizon + 1):
        mu = _initial_subpath(module, x, m)
        idem = A.monomial_element(monomial(mu, mu))
        mat = window.matrix_of(idem)
        image, _ = rref(F, [list(col) for col in zip(*mat)]) if window.dim else ([], [])
        images.append(image)
    final = images[-1]
    first_stable = next(m for m in range(len(images)) if images[m] == final)
    reported_steps = first_stable + 1
    if reported_steps > cap:
        raise OutOfWindowError(
            f"idempotent chain did not stabilize within {cap} steps ({reported_steps} needed)"
        )
    rows = final or []
    dim = len(rows)
    gen_mono = _isotropy_monomial(module, x)
    if gen_mono is None or dim == 0:
        gen = identity(F, dim)
    else:
        gmat = window.matrix_of(A.monomial_element(gen_mono))
        cols = []
        for w in rows:
            image = mat_vec(F, gmat, w)
            coeffs = coordinates(F, rows, image)
            if coeffs is None:
                raise OutOfWindowError("isotropy generator does not preserve the restriction")
            cols.append(coeffs)
        gen = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    degrees = None
    if module.gradable:
        degrees = []
        for w in rows:
            degs = {module.grade(window.elements[i]) for i, c in enumerate(w) if not F.is_zero(c)}
            degrees.append(degs.pop() if len(degs) == 1 else None)
    return Restriction(dim, gen, rows, reported_steps, degrees)


# ---------------------------------------------------------------------------
# Intertwiner spaces


def intertwiner_space(
    modA: Module,
    modB: Module,
    bound: int | None = None,
    graded: bool = False,
    degree: int = 0,
) -> list[list[list]]:
    """Basis of Hom(A, B) as matrices (graded mode: maps of the given degree).

    Both modules must be finite-dimensional, or windowed with generator
    actions closed on the window (otherwise OutOfWindowError propagates).
    """
    if modA.field != modB.field:
        raise ModuleSpecError("modules live over different fields")
    F = modA.field
    winA = Window.full(modA) if bound is None else Window.bounded(modA, bound)
    winB = Window.full(modB) if bound is None else Window.bounded(modB, bound)
    A = modA.algebra()
    gens = generator_elements(A)
    matsA = [winA.matrix_of(g) for g in gens]
    matsB = [winB.matrix_of(g) for g in gens]
    nA, nB = winA.dim, winB.dim
    if graded:
        degsA, degsB = winA.degrees(), winB.degrees()
        allowed = [
            (i, j) for i in range(nB) for j in range(nA) if degsB[i] == degsA[j] + degree
        ]
    else:
        allowed = [(i, j) for i in range(nB) for j in range(nA)]
    col_of = {pair: idx for idx, pair in enumerate(allowed)}
    rows = []
    for ga, gb in zip(matsA, matsB):
        for i in range(nB):
            for j in range(nA):
                row = [F.zero()] * len(allowed)
                for k in range(nA):  # T[i,k] * ga[k,j]
                    if (i, k) in col_of and not F.is_zero(ga[k][j]):
                        row[col_of[(i, k)]] = F.add(row[col_of[(i, k)]], ga[k][j])
                for k in range(nB):  # - gb[i,k] * T[k,j]
                    if (k, j) in col_of and not F.is_zero(gb[i][k]):
                        row[col_of[(k, j)]] = F.sub(row[col_of[(k, j)]], gb[i][k])
                if any(not F.is_zero(c) for c in row):
                    rows.append(row)
    if not allowed:
        return []
    if not rows:
        rows = [[F.zero()] * len(allowed)]
    basis = nullspace(F, rows, len(allowed))
    out = []
    for vec in basis:
        T = [[F.zero()] * nA for _ in range(nB)]
        for idx, (i, j) in enumerate(allowed):
            T[i][j] = vec[idx]
        out.append(T)
    return out


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class Certificate:
    claim: str
    window: dict
    checks: list = dataclass_field(default_factory=list)
    passed: bool = True
    counterexample: dict | None = None

    def record(self, name: str, ok: bool, detail: str = ""):
        self.checks.append({"name": name, "passed": ok, "detail": detail})
        if not ok:
            self.passed = False
            if self.counterexample is None:
                self.counterexample = {"check": name, "detail": detail}

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "window": self.window,
            "checks": self.checks,
            "pass": self.passed,
            "counterexample": self.counterexample,
        }


def check_module_iso(
    cert: Certificate,
    modA: Module,
    modB: Module,
    phi,
    psi,
    elemsA,
    elemsB,
    mono_len: int,
    graded: bool,
) -> Certificate:
    """phi: A-basis -> B-vector, psi: B-basis -> A-vector; checks run on windows."""
    F = modA.field

    def phi_vec(v: ModuleVector) -> ModuleVector:
        out = ModuleVector(F)
        for b, c in v.terms.items():
            out = out + phi(b).scale(c)
        return out

    def psi_vec(v: ModuleVector) -> ModuleVector:
        out = ModuleVector(F)
        for b, c in v.terms.items():
            out = out + psi(b).scale(c)
        return out

    ok = all(psi_vec(phi(b)) == ModuleVector(F, {b: F.one()}) for b in elemsA)
    cert.record("psi-after-phi-is-identity", ok)
    ok = all(phi_vec(psi(b)) == ModuleVector(F, {b: F.one()}) for b in elemsB)
    cert.record("phi-after-psi-is-identity", ok)
    if graded:
        ok = True
        for b in elemsA:
            d = modA.grade(b)
            ok = ok and all(modB.grade(b2) == d for b2 in phi(b).terms)
        for b in elemsB:
            d = modB.grade(b)
            ok = ok and all(modA.grade(b2) == d for b2 in psi(b).terms)
        cert.record("degree-preservation", ok)
    bad = None
    algebra = modA.algebra()
    for m in all_monomials(modA.graph, mono_len):
        eta = algebra.monomial_element(m)
        for b in elemsA:
            lhs = phi_vec(modA.act(eta, ModuleVector(F, {b: F.one()})))
            rhs = modB.act(eta, phi(b))
            if lhs != rhs:
                bad = {"monomial": str(m), "basis": str(b), "lhs": str(lhs), "rhs": str(rhs)}
                break
        if bad:
            break
    cert.record(
        "equivariance",
        bad is None,
        "" if bad is None else f"eta={bad['monomial']} on {bad['basis']}: {bad['lhs']} != {bad['rhs']}",
    )
    return cert


def _twist_ratio(field: Field, twist: TwistVector, mu: FinitePath, nu: FinitePath):
    return field.mul(twist.of_path(mu), field.inv(twist.of_path(nu)))


def triv_iso_maps(modA: InducedModule, modB: ChenModule, drop_nu_inverse: bool = False):
    """phi (y,k,x) -> a_mu a_nu^{-1} y and its inverse, for a non-rational base.

    ``drop_nu_inverse`` deliberately corrupts phi (negative control).
    """
    F = modB.field
    twist = modB.spec.twist or TwistVector.make(modB.graph, F, {})

    def phi(b: CosetBasis) -> ModuleVector:
        mu, nu = modA.canonical_decomposition(b.path)
        scale = twist.of_path(mu) if drop_nu_inverse else _twist_ratio(F, twist, mu, nu)
        return ModuleVector(F, {ChenBasis(b.path): scale})

    def psi(b: ChenBasis) -> ModuleVector:
        mu, nu = modA.canonical_decomposition(b.path)
        scale = _twist_ratio(F, twist, nu, mu)
        return ModuleVector(F, {CosetBasis(b.path, len(mu) - len(nu)): scale})

    return phi, psi


def verify_triv_iso(
    graph,
    field: Field,
    x: SinkPath,
    twist: TwistVector | None = None,
    bound: int = 4,
    mono_len: int = 3,
    corrupt: bool = False,
) -> Certificate:
    """Certificate: inducing the trivial coefficient at a non-rational base
    point is graded-isomorphic to the twisted boundary-path module."""
    if not isinstance(x, SinkPath):
        raise ModuleSpecError("this certificate needs a non-rational (sink) base point")
    modA = build_module(graph, field, InducedSpec(x, TrivialCoeff(0)))
    modB = build_module(graph, field, ChenSpec(x, twist))
    enumA = modA.enumerate_basis(bound)
    elemsA = enumA.elements
    elemsB = modB.enumerate_basis(bound).elements
    phi, psi = triv_iso_maps(modA, modB, drop_nu_inverse=corrupt)
    cert = Certificate(
        claim=f"induced trivial coefficients at {x} match the twisted boundary-path module",
        window={"basis": len(elemsA), "mono_len": mono_len, "exact": enumA.exact},
    )
    return check_module_iso(cert, modA, modB, phi, psi, elemsA, elemsB, mono_len, graded=True)


def _cycle_twist(graph, field: Field, star: FinitePath, value) -> TwistVector:
    return TwistVector.make(graph, field, {star.edges[0]: value})


def twist_iso_maps(modA: InducedModule, modB: Module):
    """Maps for a rational base: (y,k,x) (x) lambda -> a_mu a_nu^{-1} lambda y."""
    if isinstance(modB, ChenExtModule):
        Kp = modB.scalars
        twist = modB.twist

        def phi(b: CosetBasis) -> ModuleVector:
            mu, nu = modA.canonical_decomposition(b.path)
            unit = [Kp.base.zero()] * Kp.degree
            unit[b.power] = Kp.base.one()
            value = Kp.mul(_twist_ratio(Kp, twist, mu, nu), tuple(unit))
            return ModuleVector(
                modB.field,
                {ChenBasis(b.path, j): c for j, c in enumerate(value)},
            )

        def psi(b: ChenBasis) -> ModuleVector:
            mu, nu = modA.canonical_decomposition(b.path)
            unit = [Kp.base.zero()] * Kp.degree
            unit[b.power] = Kp.base.one()
            value = Kp.mul(_twist_ratio(Kp, twist, nu, mu), tuple(unit))
            k = len(mu) - len(nu)
            return ModuleVector(
                modA.field,
                {CosetBasis(b.path, k, j): c for j, c in enumerate(value)},
            )

        return phi, psi
    F = modB.field
    twist = modB.spec.twist

    def phi(b: CosetBasis) -> ModuleVector:
        mu, nu = modA.canonical_decomposition(b.path)
        return ModuleVector(F, {ChenBasis(b.path): _twist_ratio(F, twist, mu, nu)})

    def psi(b: ChenBasis) -> ModuleVector:
        mu, nu = modA.canonical_decomposition(b.path)
        k = len(mu) - len(nu)
        return ModuleVector(F, {CosetBasis(b.path, k): _twist_ratio(F, twist, nu, mu)})

    return phi, psi


def verify_twist_iso(
    graph,
    field: Field,
    cycle: FinitePath,
    coeff: ScalarAction | QuotientCoeff,
    bound: int = 4,
    mono_len: int = 3,
) -> Certificate:
    """Certificate: inducing a scalar action (resp. quotient field) at a cycle
    tail matches the twisted (resp. scalar-extended) boundary-path module."""
    star = graph.path(canonical_rotation(cycle.edges))
    x = lasso(graph, graph.vertex_path(star.src), star.edges)
    modA = build_module(graph, field, InducedSpec(x, coeff))
    if isinstance(coeff, ScalarAction):
        twist = _cycle_twist(graph, field, star, coeff.value)
        modB = build_module(graph, field, ChenSpec(x, twist))
        claim = f"induced scalar action {field.format(field.coerce(coeff.value))} at ({star})^inf matches the twisted boundary-path module"
    else:
        modB = build_module(graph, field, ChenExtSpec(star, coeff.modulus))
        claim = f"induced quotient field K[t]/({coeff.modulus}) at ({star})^inf matches the scalar-extended boundary-path module"
    enumA = modA.enumerate_basis(bound)
    exact = enumA.exact
    elemsA = enumA.elements
    elemsB = modB.enumerate_basis(bound).elements
    phi, psi = twist_iso_maps(modA, modB)
    cert = Certificate(claim=claim, window={"basis": len(elemsA), "mono_len": mono_len, "exact": exact})
    return check_module_iso(cert, modA, modB, phi, psi, elemsA, elemsB, mono_len, graded=False)


def nvc_iso_maps(modA: InducedModule, modB: NvcModule):
    """phi (y,k,x) -> mu.nu* (normal form) and psi mu.nu* -> (mu.nu*.c^m.c^inf, |mu|-|nu|, x)."""
    graph = modA.graph
    F = modA.field
    star = modB.spec.cycle
    n = len(star.edges)
    algebra = modB._algebra

    def phi(b: CosetBasis) -> ModuleVector:
        mu, nu = modA.canonical_decomposition(b.path)
        diff = b.lag - (len(mu) - len(nu))
        steps = diff // n
        rot_y = b.path.rotation
        if steps > 0:
            ext = (star.edges[rot_y:] + star.edges[:rot_y]) * steps
            mu = FinitePath(mu.edges + ext, mu.src, mu.rng)
        elif steps < 0:
            ext = (star.edges[rot_y:] + star.edges[:rot_y]) * (-steps)
            nu = FinitePath(nu.edges + ext, nu.src, nu.rng)
        terms = algebra._normalize_terms([(monomial(mu, nu), F.one())])
        assert len(terms) == 1
        (m, c), = terms.items()
        return ModuleVector(F, {NvcBasis(m): c})

    def psi(b: NvcBasis) -> ModuleVector:
        m = b.mono
        l = len(m.nu)
        rot = l % n
        y = lasso(graph, m.mu, star.edges[rot:] + star.edges[:rot])
        return ModuleVector(F, {CosetBasis(y, m.degree): F.one()})

    return phi, psi


def verify_nvc_iso(graph, field: Field, cycle: FinitePath, bound: int = 3, mono_len: int = 2) -> Certificate:
    """Certificate: inducing the full isotropy group algebra at the tail of a
    no-exit cycle matches the graded monomial module based at the cycle."""
    star = graph.path(canonical_rotation(cycle.edges))
    modB = build_module(graph, field, NvcSpec(star))  # validates no exits
    x = lasso(graph, graph.vertex_path(star.src), star.edges)
    modA = build_module(graph, field, InducedSpec(x, LaurentCoeff(0)))
    elemsA = modA.enumerate_basis(bound).elements
    elemsB = modB.enumerate_basis(bound).elements
    phi, psi = nvc_iso_maps(modA, modB)
    cert = Certificate(
        claim=f"inducing the isotropy group algebra at ({star})^inf matches the no-exit-cycle monomial module",
        window={"basis": len(elemsA), "mono_len": mono_len, "exact": False},
    )
    return check_module_iso(cert, modA, modB, phi, psi, elemsA, elemsB, mono_len, graded=True)


def companion_matrix(f: Poly) -> list[list]:
    F = f.field
    d = f.degree
    out = [[F.zero()] * d for _ in range(d)]
    for i in range(1, d):
        out[i][i - 1] = F.one()
    for i in range(d):
        out[i][d - 1] = F.neg(f.coeff(i))
    return out


def _poly_of_matrix(field: Field, f: Poly, mat: list[list]) -> list[list]:
    d = len(mat)
    acc = [[field.zero()] * d for _ in range(d)]
    power = identity(field, d)
    for i in range(f.degree + 1):
        c = f.coeff(i)
        for r in range(d):
            for s in range(d):
                acc[r][s] = field.add(acc[r][s], field.mul(c, power[r][s]))
        power = mat_mul(field, power, mat)
    return acc


def verify_res_ind(graph, field: Field, spec: InducedSpec, cap: int = 6) -> Certificate:
    """Certificate: restricting the induced module at its base point recovers
    the coefficient module (dimension and isotropy action)."""
    module = build_module(graph, field, spec)
    coeff = spec.coeff
    if isinstance(coeff, LaurentCoeff):
        raise ModuleSpecError("restriction comparison is for finite-dimensional coefficients")
    res = restrict(module, spec.base, cap)
    cert = Certificate(
        claim=f"restriction at {spec.base} recovers the coefficient module",
        window={"cap": cap, "steps": res.steps},
    )
    expected_dim = 1 if isinstance(coeff, (TrivialCoeff, ScalarAction)) else coeff.modulus.degree
    cert.record("dimension", res.dimension == expected_dim, f"dim {res.dimension} vs {expected_dim}")
    cert.record("stabilization-steps", res.steps <= cap, f"{res.steps} steps")
    if isinstance(coeff, TrivialCoeff):
        cert.record("generator-is-identity", res.generator_matrix == identity(field, res.dimension))
        want = -coeff.shift - spec.shift
        cert.record(
            "degrees-match-shift",
            res.degrees == [want] * res.dimension,
            f"degrees {res.degrees} vs {[want] * res.dimension}",
        )
    elif isinstance(coeff, ScalarAction):
        a = field.coerce(coeff.value)
        cert.record(
            "generator-is-scalar",
            res.generator_matrix == [[a]],
            f"matrix {res.generator_matrix} vs [[{field.format(a)}]]",
        )
    else:
        f = coeff.modulus
        cert.record("dimension-equals-degree", res.dimension == f.degree)
        if res.dimension == f.degree:
            value = _poly_of_matrix(field, f, res.generator_matrix)
            zero = [[field.zero()] * res.dimension for _ in range(res.dimension)]
            cert.record(
                "generator-satisfies-modulus",
                value == zero,
                "f(M) = 0 certifies similarity to the companion matrix",
            )
    return cert


def verify_relations(graph, field: Field, seed: int = 0, triples: int = 200) -> Certificate:
    """The five defining relations as normal-form identities, plus sampled
    associativity triples with exact equality."""
    A = LeavittAlgebra(graph, field)
    cert = Certificate(
        claim="defining relations and associativity hold in normal form",
        window={"seed": seed, "triples": triples},
    )
    ok = all(
        A.vertex(v) * A.vertex(w) == (A.vertex(v) if v == w else A.zero())
        for v in graph.vertices
        for w in graph.vertices
    )
    cert.record("vertex-idempotents", ok)
    ok = True
    for e in graph.edges:
        el, gh = A.edge(e.name), A.ghost(e.name)
        ok = ok and A.vertex(e.src) * el == el == el * A.vertex(e.rng)
        ok = ok and A.vertex(e.rng) * gh == gh == gh * A.vertex(e.src)
    cert.record("edge-endpoint-relations", ok)
    ok = all(
        A.ghost(e.name) * A.edge(f.name)
        == (A.vertex(e.rng) if e.name == f.name else A.zero())
        for e in graph.edges
        for f in graph.edges
    )
    cert.record("ghost-edge-orthogonality", ok)
    ok = True
    for v in graph.vertices:
        if graph.is_regular(v):
            acc = A.zero()
            for e in graph.out_edges(v):
                acc = acc + A.edge(e.name) * A.ghost(e.name)
            ok = ok and acc == A.vertex(v)
    cert.record("range-decomposition", ok)
    rng = random.Random(seed)
    bad = None
    for _ in range(triples):
        x, y, z = (random_element(A, rng) for _ in range(3))
        if ((x * y) * z).terms != (x * (y * z)).terms:
            bad = {"x": str(x), "y": str(y), "z": str(z)}
            break
    cert.record(
        "associativity",
        bad is None,
        "" if bad is None else f"({bad['x']})({bad['y']})({bad['z']})",
    )
    return cert


def verify_pi_consistency(graph, field: Field, max_len: int = 3) -> Certificate:
    """Monomial products match bisection products for every pair of monomials
    with both path lengths at most ``max_len`` (exhaustive)."""
    A = LeavittAlgebra(graph, field)
    monos = all_monomials(graph, max_len)
    cert = Certificate(
        claim="monomial multiplication matches the bisection calculus",
        window={"max_len": max_len, "monomials": len(monos)},
    )
    bad = None
    checked = 0
    for m1 in monos:
        for m2 in monos:
            checked += 1
            if not pi_consistency(A, m1, m2):
                bad = {"left": str(m1), "right": str(m2)}
                break
        if bad:
            break
    cert.window["pairs"] = checked
    cert.record(
        "exhaustive-pairs",
        bad is None,
        "" if bad is None else f"{bad['left']} times {bad['right']}",
    )
    return cert


# ---------------------------------------------------------------------------
# The graded isomorphism criterion


@dataclass(frozen=True)
class IsoDecision:
    isomorphic: bool
    witness: dict

    def to_json_dict(self) -> dict:
        return {"isomorphic": self.isomorphic, "witness": dict(self.witness)}


def _as_induced(graph, field, spec: ModuleSpec) -> InducedSpec:
    if isinstance(spec, InducedSpec):
        return spec
    if isinstance(spec, ChenSpec):
        if isinstance(spec.base, Lasso):
            raise ModuleSpecError("a rational boundary-path module is not graded")
        return InducedSpec(spec.base, TrivialCoeff(spec.shift))
    if isinstance(spec, NvcSpec):
        x = lasso(graph, graph.vertex_path(spec.cycle.src), spec.cycle.edges)
        return InducedSpec(x, LaurentCoeff(0), spec.shift)
    raise ModuleSpecError(f"{spec!r} is not in a supported graded family")


def graded_iso_check(graph, field: Field, specA: ModuleSpec, specB: ModuleSpec) -> IsoDecision:
    """Graded isomorphism of induced modules: same orbit, and coefficients
    matching after a shift drawn from the lag set between the base points."""
    a = _as_induced(graph, field, specA)
    b = _as_induced(graph, field, specB)
    for s in (a, b):
        if isinstance(s.coeff, (ScalarAction, QuotientCoeff)):
            raise ModuleSpecError("scalar-action and quotient coefficients are not graded")
    lags = tail_lags(b.base, a.base)
    if lags.is_empty:
        return IsoDecision(False, {"reason": "base points lie in different orbits"})
    famA = type(a.coeff).__name__
    famB = type(b.coeff).__name__
    if famA != famB:
        return IsoDecision(False, {"reason": f"coefficient families differ ({famA} vs {famB})"})
    m_eff_a = a.coeff.shift + a.shift
    m_eff_b = b.coeff.shift + b.shift
    alpha = m_eff_a - m_eff_b
    if lags.contains(alpha):
        return IsoDecision(True, {"alpha": alpha, "lag_set": str(lags)})
    return IsoDecision(
        False,
        {"reason": f"no lag matches the shift difference {alpha}", "lag_set": str(lags)},
    )


# ---------------------------------------------------------------------------
# Simplicity probe


@dataclass
class ProbeResult:
    verdict: str  # "simple" | "graded-simple-not-simple" | "not-simple" | "inconclusive"
    witness: dict

    def to_json_dict(self) -> dict:
        return {"verdict": self.verdict, "witness": dict(self.witness)}


def _cyclic_span_is_full(window: Window, mats: list[list[list]], seed: int) -> int:
    F = window.module.field
    vec = [F.zero()] * window.dim
    vec[seed] = F.one()
    rows = [vec]
    basis, _ = rref(F, rows)
    while True:
        new_rows = list(basis)
        for m in mats:
            for w in basis:
                new_rows.append(mat_vec(F, m, w))
        nxt, _ = rref(F, new_rows)
        if len(nxt) == len(basis):
            return len(basis)
        basis = nxt


def simplicity_probe(graph, field: Field, spec: ModuleSpec, bound: int = 4, mono_len: int = 2) -> ProbeResult:
    """Simplicity evidence.

    Finite-dimensional modules: checks that every basis-coordinate seed
    generates the whole module.  Induced modules with Laurent coefficients:
    certifies graded-simple-but-not-simple by exhibiting an equivariant
    surjection onto the untwisted boundary-path module with a nonzero
    in-window kernel vector.  Anything else is inconclusive.
    """
    module = build_module(graph, field, spec)
    if module.finite_dimensional():
        window = Window.full(module)
        gens = generator_elements(module.algebra())
        mats = [window.matrix_of(g) for g in gens]
        for seed in range(window.dim):
            span = _cyclic_span_is_full(window, mats, seed)
            if span != window.dim:
                return ProbeResult(
                    "not-simple",
                    {
                        "seed": str(window.elements[seed]),
                        "submodule_dimension": span,
                        "module_dimension": window.dim,
                    },
                )
        return ProbeResult("simple", {"dimension": window.dim, "seeds_checked": window.dim})
    if isinstance(spec, InducedSpec) and isinstance(spec.coeff, LaurentCoeff):
        return _laurent_probe(module, bound, mono_len)
    return ProbeResult("inconclusive", {"reason": "infinite-dimensional without a certified witness"})


def _laurent_probe(module: InducedModule, bound: int, mono_len: int) -> ProbeResult:
    graph, F = module.graph, module.field
    x = module.spec.base
    n = module.period
    target = build_module(graph, F, ChenSpec(x, None))

    def project(b: CosetBasis) -> ModuleVector:
        return ModuleVector(F, {ChenBasis(b.path): F.one()})

    def project_vec(v: ModuleVector) -> ModuleVector:
        out = ModuleVector(F)
        for b, c in v.terms.items():
            out = out + project(b).scale(c)
        return out

    elems = module.enumerate_basis(bound).elements
    algebra = module.algebra()
    equivariant = True
    for m in all_monomials(graph, mono_len):
        eta = algebra.monomial_element(m)
        for b in elems:
            lhs = project_vec(module.act(eta, ModuleVector(F, {b: F.one()})))
            rhs = target.act(eta, project(b))
            if lhs != rhs:
                equivariant = False
                break
        if not equivariant:
            break
    k0 = module.canonical_lag(x)
    kernel_vec = ModuleVector(F, {CosetBasis(x, k0 + n): F.one(), CosetBasis(x, k0): F.neg(F.one())})
    kernel_ok = (not kernel_vec.is_zero) and project_vec(kernel_vec).is_zero
    target_window = target.enumerate_basis(bound).elements
    surjective = all(
        any(tb in project(b).terms for b in elems) for tb in target_window
    )
    if equivariant and kernel_ok and surjective:
        return ProbeResult(
            "graded-simple-not-simple",
            {
                "kernel_vector": str(kernel_vec),
                "quotient": f"boundary-path module at {x}",
                "surjection_checked_on": len(target_window),
            },
        )
    return ProbeResult(
        "inconclusive",
        {"equivariant": equivariant, "kernel_ok": kernel_ok, "surjective": surjective},
    )
