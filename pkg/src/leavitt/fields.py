"""Exact coefficient arithmetic.

Three kinds of fields are supported, all with raw hashable values:

* the rationals (values are ``fractions.Fraction``),
* prime fields GF(p) (values are ints in ``range(p)``),
* quotient fields K[t]/(f) for f monic irreducible with f(0) != 0
  (values are coefficient tuples over the base field).

Polynomials over any of these, irreducibility testing, and the graded
Laurent subring K[t^n, t^(-n)] round out the module.  No floating point
anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator


class FieldError(ValueError):
    """Invalid field construction or operation."""


class Field:
    """Common interface: exact operations on raw scalar values."""

    name: str

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one()
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def characteristic(self) -> int:
        raise NotImplementedError

    def random(self, rng):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == getattr(other, "name", None)

    def __hash__(self):
        return hash(self.name)


class RationalField(Field):
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise FieldError(f"cannot coerce {value!r} into Q")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def characteristic(self):
        return 0

    def random(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 5))

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational {text!r}") from exc


QQ = RationalField()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return self.mul(value.numerator % self.p, self.inv(value.denominator % self.p))
        raise FieldError(f"cannot coerce {value!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def characteristic(self):
        return self.p

    def elements(self) -> range:
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        try:
            return int(text) % self.p
        except ValueError as exc:
            raise FieldError(f"bad {self.name} scalar {text!r}") from exc


# ---------------------------------------------------------------------------
# Polynomials over a field


@dataclass(frozen=True)
class Poly:
    """Polynomial in t with coefficients in ``field`` (ascending tuple, trimmed)."""

    field: Field
    coeffs: tuple

    @classmethod
    def make(cls, field: Field, coeffs: Iterable) -> "Poly":
        cs = [field.coerce(c) if not _is_raw(field, c) else c for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        return cls(field, tuple(cs))

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (field.one(),))

    @classmethod
    def t(cls, field: Field) -> "Poly":
        return cls(field, (field.zero(), field.one()))

    @classmethod
    def constant(cls, field: Field, c) -> "Poly":
        return cls.make(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def coeff(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero()

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.make(F, [F.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly.make(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        if self.is_zero or other.is_zero:
            return Poly.zero(F)
        out = [F.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly.make(F, out)

    def scale(self, c) -> "Poly":
        F = self.field
        return Poly.make(F, [F.mul(c, a) for a in self.coeffs])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        quo = [F.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = F.inv(other.coeffs[-1])
        for i in range(len(rem) - len(other.coeffs), -1, -1):
            c = F.mul(rem[i + other.degree], inv_lead)
            quo[i] = c
            if not F.is_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return Poly.make(F, quo), Poly.make(F, rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def evaluate(self, x):
        F = self.field
        out = F.zero()
        for c in reversed(self.coeffs):
            out = F.add(F.mul(out, x), c)
        return out

    def __str__(self) -> str:
        return format_poly(self)

    def sort_key(self):
        return (self.degree, self.coeffs)


def _is_raw(field: Field, c) -> bool:
    if isinstance(field, RationalField):
        return isinstance(c, Fraction)
    if isinstance(field, PrimeField):
        return isinstance(c, int) and 0 <= c < field.p
    if isinstance(field, ExtensionField):
        return isinstance(c, tuple) and len(c) == field.degree
    return False


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, u, v) with u*a + v*b = g, g monic (or zero)."""
    F = a.field
    r0, r1 = a, b
    u0, u1 = Poly.one(F), Poly.zero(F)
    v0, v1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero:
        return r0, u0, v0
    lead_inv = F.inv(r0.coeffs[-1])
    return r0.monic(), u0.scale(lead_inv), v0.scale(lead_inv)


def enumerate_monic(field: PrimeField, degree: int) -> Iterator[Poly]:
    """All monic polynomials of the given degree over a prime field."""
    if degree == 0:
        yield Poly.one(field)
        return
    coeffs = [0] * degree
    while True:
        yield Poly(field, tuple(coeffs) + (1,))
        i = 0
        while i < degree:
            coeffs[i] += 1
            if coeffs[i] < field.p:
                break
            coeffs[i] = 0
            i += 1
        else:
            return


def _rational_roots_exist(f: Poly) -> bool:
    # Rational root theorem on the integer-cleared polynomial.
    denoms = [c.denominator for c in f.coeffs]
    lcm = 1
    for d in denoms:
        g = _gcd(lcm, d)
        lcm = lcm // g * d
    ints = [int(c * lcm) for c in f.coeffs]
    while ints and ints[0] == 0:
        return True  # t divides f, so 0 is a root
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for sign in (1, -1):
                if f.evaluate(Fraction(sign * p, q)) == 0:
                    return True
    return False


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, abs(n) + 1) if n % d == 0]
    return out


def is_irreducible(f: Poly, assume_irreducible: bool = False) -> bool:
    """Exact irreducibility over the coefficient field.

    Over a prime field: trial division by all monic polynomials of degree
    at most deg(f)/2.  Over Q: exact only up to degree 3 (root search);
    higher degrees require the caller to assert irreducibility.
    """
    if not f.is_monic or f.degree < 1:
        raise FieldError("irreducibility test expects a monic polynomial of degree >= 1")
    F = f.field
    if isinstance(F, PrimeField):
        for d in range(1, f.degree // 2 + 1):
            for g in enumerate_monic(F, d):
                if (f % g).is_zero:
                    return False
        return True
    if isinstance(F, RationalField):
        if f.degree == 1:
            return True
        if f.degree <= 3:
            return not _rational_roots_exist(f)
        if assume_irreducible:
            return True
        raise FieldError(
            "irreducibility over Q is only decided exactly up to degree 3; "
            "pass assume_irreducible=True to assert it"
        )
    raise FieldError(f"irreducibility test not supported over {F.name}")


def irreducible_over_prime_field(f: Poly, p: int) -> bool:
    field = PrimeField(p)
    if f.field != field:
        f = Poly.make(field, [field.coerce(c) for c in f.coeffs])
    return is_irreducible(f)


def enumerate_monic_irreducibles(p: int, d_max: int) -> list[Poly]:
    """All monic irreducibles of degree <= d_max over GF(p), except t, sorted."""
    if d_max < 1:
        raise FieldError("d_max must be at least 1")
    field = PrimeField(p)
    t = Poly.t(field)
    out = []
    for d in range(1, d_max + 1):
        for f in enumerate_monic(field, d):
            if f != t and is_irreducible(f):
                out.append(f)
    return out


# ---------------------------------------------------------------------------
# Quotient fields K[t]/(f)


class ExtensionField(Field):
    """K[t]/(f) for f monic irreducible with nonzero constant term.

    Values are coefficient tuples of length deg(f) over the base field, so
    the class of t is invertible and the field doubles as K[t,1/t]/(f).
    """

    def __init__(self, base: Field, modulus: Poly, assume_irreducible: bool = False):
        if isinstance(base, ExtensionField):
            raise FieldError("towers of extensions are not supported")
        if modulus.field != base:
            raise FieldError("modulus is not over the base field")
        if not modulus.is_monic or modulus.degree < 1:
            raise FieldError("modulus must be monic of degree >= 1")
        if base.is_zero(modulus.coeff(0)):
            raise FieldError("modulus must have nonzero constant term (t is excluded)")
        if not is_irreducible(modulus, assume_irreducible=assume_irreducible):
            raise FieldError(f"{modulus} is reducible over {base.name}")
        self.base = base
        self.modulus = modulus
        self.degree = modulus.degree
        self.irreducibility_asserted = assume_irreducible and not (
            isinstance(base, PrimeField) or modulus.degree <= 3
        )
        self.name = f"{base.name}[t]/({format_poly(modulus)})"

    def _wrap(self, poly: Poly) -> tuple:
        r = poly % self.modulus
        return tuple(r.coeff(i) for i in range(self.degree))

    def _unwrap(self, value: tuple) -> Poly:
        return Poly.make(self.base, list(value))

    def zero(self):
        return (self.base.zero(),) * self.degree

    def one(self):
        return self._wrap(Poly.one(self.base))

    def tbar(self):
        return self._wrap(Poly.t(self.base))

    def embed(self, c) -> tuple:
        return self._wrap(Poly.constant(self.base, c))

    def coerce(self, value):
        if isinstance(value, tuple) and len(value) == self.degree:
            return tuple(self.base.coerce(c) if not _is_raw(self.base, c) else c for c in value)
        if isinstance(value, Poly) and value.field == self.base:
            return self._wrap(value)
        return self.embed(self.base.coerce(value))

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        return self._wrap(self._unwrap(a) * self._unwrap(b))

    def inv(self, a):
        pa = self._unwrap(a)
        if pa.is_zero:
            raise ZeroDivisionError("inverse of zero")
        g, u, _ = poly_xgcd(pa, self.modulus)
        if g.degree != 0:
            raise FieldError("modulus is not irreducible")  # unreachable if validated
        return self._wrap(u.scale(self.base.inv(g.coeff(0))))

    def tbar_pow(self, n: int):
        return self.pow(self.tbar(), n)

    def characteristic(self):
        return self.base.characteristic()

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.degree))

    def format(self, a) -> str:
        p = self._unwrap(a)
        if p.degree <= 0:
            return self.base.format(p.coeff(0))
        return "(" + format_poly(p) + ")"

    def parse(self, text: str):
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            return self._wrap(parse_poly(text[1:-1], self.base))
        try:
            return self.embed(self.base.parse(text))
        except FieldError:
            return self._wrap(parse_poly(text, self.base))


# ---------------------------------------------------------------------------
# Polynomial and field text forms


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return "0"
    F = f.field
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeff(i)
        if F.is_zero(c):
            continue
        if i == 0:
            parts.append(F.format(c))
        else:
            tpow = "t" if i == 1 else f"t^{i}"
            if c == F.one():
                parts.append(tpow)
            else:
                parts.append(f"{F.format(c)}*{tpow}")
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += "-" + p[1:]
        else:
            out += "+" + p
    return out


_TERM_RE = re.compile(r"^(?:(?P<coef>[^t]*?)\*?)?(?P<t>t(?:\^(?P<exp>\d+))?)?$")


def parse_poly(text: str, field: Field) -> Poly:
    """Parse forms like ``t^3+t+1`` or ``t^2-2`` over the given field."""
    s = text.replace(" ", "")
    if not s:
        raise FieldError("empty polynomial")
    # split into signed terms
    terms = []
    buf = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*/^(":
            terms.append(buf)
            buf = ch
        else:
            buf += ch
    terms.append(buf)
    coeffs: dict[int, object] = {}
    for term in terms:
        sign = 1
        body = term
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or (not m.group("coef") and not m.group("t")):
            raise FieldError(f"bad polynomial term {term!r} in {text!r}")
        if m.group("t"):
            exp = int(m.group("exp") or 1)
            coef_text = m.group("coef") or "1"
        else:
            exp = 0
            coef_text = m.group("coef")
        c = field.parse(coef_text)
        if sign < 0:
            c = field.neg(c)
        coeffs[exp] = field.add(coeffs.get(exp, field.zero()), c)
    n = max(coeffs) if coeffs else 0
    return Poly.make(field, [coeffs.get(i, field.zero()) for i in range(n + 1)])


_FIELD_RE = re.compile(r"^(?P<base>Q|F(?P<p>\d+))(?:\[t\]/\((?P<mod>.+)\))?$")


def parse_field(spec: str) -> Field:
    """Parse field spec strings: ``Q``, ``F2``, ``F2[t]/(t^2+t+1)``."""
    m = _FIELD_RE.match(spec.replace(" ", ""))
    if not m:
        raise FieldError(f"bad field spec {spec!r}")
    base: Field = QQ if m.group("base") == "Q" else PrimeField(int(m.group("p")))
    if m.group("mod") is None:
        return base
    return ExtensionField(base, parse_poly(m.group("mod"), base))


# ---------------------------------------------------------------------------
# Laurent elements with support in nZ


@dataclass(frozen=True)
class LaurentElement:
    """Finite sum of c*t^k with every exponent divisible by ``step``."""

    field: Field
    step: int
    terms: tuple[tuple[int, object], ...]  # sorted (exponent, nonzero scalar)

    @classmethod
    def make(cls, field: Field, step: int, terms: dict) -> "LaurentElement":
        if step < 1:
            raise FieldError("step must be positive")
        out = {}
        for k, c in terms.items():
            if k % step != 0:
                raise FieldError(f"exponent {k} is not divisible by step {step}")
            if not field.is_zero(c):
                out[k] = c
        return cls(field, step, tuple(sorted(out.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "LaurentElement") -> "LaurentElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms:
            out[k] = self.field.add(out.get(k, self.field.zero()), c)
        return LaurentElement.make(self.field, self.step, out)

    def mul(self, other: "LaurentElement") -> "LaurentElement":
        self._check(other)
        F = self.field
        out: dict[int, object] = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                k = k1 + k2
                out[k] = F.add(out.get(k, F.zero()), F.mul(c1, c2))
        return LaurentElement.make(F, self.step, out)

    def homogeneous_component(self, degree: int, shift: int = 0) -> "LaurentElement":
        """Degree-``degree`` part, viewed in the module shifted by ``shift``."""
        k = degree + shift
        for kk, c in self.terms:
            if kk == k:
                return LaurentElement.make(self.field, self.step, {k: c})
        return LaurentElement.make(self.field, self.step, {})

    def _check(self, other: "LaurentElement"):
        if self.step != other.step:
            raise FieldError(f"step mismatch: {self.step} vs {other.step}")
        if self.field != other.field:
            raise FieldError("field mismatch")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            if k == 0:
                parts.append(self.field.format(c))
            else:
                tp = "t" if k == 1 else f"t^{k}"
                parts.append(tp if c == self.field.one() else f"{self.field.format(c)}*{tp}")
        return "+".join(parts).replace("+-", "-")
