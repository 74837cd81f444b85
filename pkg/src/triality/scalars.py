"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Scalars are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) with
rational coefficients, eagerly reduced modulo the N-th cyclotomic polynomial,
so equality of scalars is coefficient-wise equality.  The default conductor
is 12, which contains a primitive cube root of unity omega = zeta^4 and a
primitive fourth root zeta^3 while keeping the field degree at 4.

Rationals are arbitrary-precision and always in lowest terms.  gmpy2.mpq is
used when available (it is considerably faster); fractions.Fraction is the
drop-in fallback.  Both print as "p/q" which is what the JSON serialization
uses.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

_Q0 = Rational(0)
_Q1 = Rational(1)


def _euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# -- dense polynomial helpers over the rationals (lists, lowest degree first)


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = list(a)
    q = [_Q0] * max(len(a) - len(b) + 1, 0)
    inv_lead = _Q1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                if bj:
                    a[i + j] -= c * bj
    return q, _poly_trim(a)


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int):
    """Phi_n as a coefficient tuple, computed by exact division of x^n - 1
    by the product of Phi_d over proper divisors d of n."""
    if n == 1:
        return (-_Q1, _Q1)
    xn1 = [-_Q1] + [_Q0] * (n - 1) + [_Q1]
    den = [_Q1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(_cyclotomic_poly(d)))
    quo, rem = _poly_divmod(xn1, den)
    if rem:
        raise ArithmeticError(f"cyclotomic division left a remainder for n={n}")
    return tuple(quo)


class CycloField:
    """The field Q(zeta_N), acting as a factory and arithmetic context for
    CycloScalar values.  Instances are cached per conductor; use make_field.
    """

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError("conductor must be a positive integer")
        self.conductor = conductor
        self.minimal_polynomial = _cyclotomic_poly(conductor)
        self.degree = len(self.minimal_polynomial) - 1
        assert self.degree == _euler_phi(conductor)
        d = self.degree
        # x^j mod Phi_N for j = 0 .. max(2d-2, N-1); row j is a coeff tuple.
        rows = []
        cur = [_Q1] + [_Q0] * (d - 1)
        top = max(2 * d - 1, conductor)
        for _ in range(top):
            rows.append(tuple(cur))
            cur = [_Q0] + cur[: d - 1] + [cur[d - 1]]
            lead = cur.pop()
            if lead:
                for i in range(d):
                    c = self.minimal_polynomial[i]
                    if c:
                        cur[i] -= lead * c
        rows.append(tuple(cur))
        self._pow_rows = rows
        self.zero = CycloScalar(self, (_Q0,) * d)
        self.one = CycloScalar(self, (_Q1,) + (_Q0,) * (d - 1))

    # -- element constructors

    def element(self, coeffs) -> CycloScalar:
        coeffs = tuple(Rational(c) for c in coeffs)
        if len(coeffs) != self.degree:
            raise ValueError("coefficient vector has the wrong length")
        return CycloScalar(self, coeffs)

    def scalar(self, p, q=1) -> CycloScalar:
        c = [_Q0] * self.degree
        c[0] = Rational(p) / Rational(q)
        return CycloScalar(self, tuple(c))

    def zeta(self, power: int = 1) -> CycloScalar:
        return CycloScalar(self, self._pow_rows[power % self.conductor])

    @property
    def omega(self) -> CycloScalar:
        """A primitive cube root of unity, zeta^(N/3).  Requires 3 | N."""
        if self.conductor % 3 != 0:
            raise ValueError("field contains no primitive cube root of unity")
        return self.zeta(self.conductor // 3)

    def galois(self, a: CycloScalar, k: int) -> CycloScalar:
        """The field automorphism zeta -> zeta^k, gcd(k, N) = 1."""
        k %= self.conductor
        if gcd(k, self.conductor) != 1:
            raise ValueError(f"zeta -> zeta^{k} is not an automorphism")
        out = [_Q0] * self.degree
        for i, c in enumerate(a.coeffs):
            if c:
                row = self._pow_rows[(i * k) % self.conductor]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycloScalar(self, tuple(out))

    def from_strings(self, strings) -> CycloScalar:
        return self.element([Rational(s) for s in strings])

    def __repr__(self):
        return f"CycloField(conductor={self.conductor})"

    def __hash__(self):
        return hash(("CycloField", self.conductor))

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.conductor == self.conductor


class CycloScalar:
    """An element of Q(zeta_N) in the reduced power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def _check(self, other):
        if self.field is not other.field and self.field != other.field:
            raise ValueError("scalars live in different cyclotomic fields")

    def __add__(self, other):
        if not isinstance(other, CycloScalar):
            return NotImplemented
        self._check(other)
        return CycloScalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, CycloScalar):
            return NotImplemented
        self._check(other)
        return CycloScalar(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycloScalar(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, CycloScalar):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        # rational fast paths carry most of the split-algebra arithmetic
        if not any(b[1:]):
            q = b[0]
            if not q:
                return self.field.zero
            return CycloScalar(self.field, tuple(c * q for c in a))
        if not any(a[1:]):
            q = a[0]
            if not q:
                return self.field.zero
            return CycloScalar(self.field, tuple(c * q for c in b))
        d = self.field.degree
        conv = [_Q0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:d])
        rows = self.field._pow_rows
        for j in range(d, 2 * d - 1):
            cj = conv[j]
            if cj:
                row = rows[j]
                for i in range(d):
                    if row[i]:
                        out[i] += cj * row[i]
        return CycloScalar(self.field, tuple(out))

    def inverse(self) -> CycloScalar:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_N)")
        if self.is_rational():
            c = [_Q0] * self.field.degree
            c[0] = _Q1 / self.coeffs[0]
            return CycloScalar(self.field, tuple(c))
        # extended Euclid against Phi_N: find u with u*a = 1 (mod Phi)
        r0 = list(self.field.minimal_polynomial)
        r1 = _poly_trim(list(self.coeffs))
        s0, s1 = [], [_Q1]
        while r1:
            q, r = _poly_divmod(r0, r1)
            qs1 = _poly_mul(q, s1) if q and s1 else []
            s = [_Q0] * max(len(s0), len(qs1))
            for i, c in enumerate(s0):
                s[i] += c
            for i, c in enumerate(qs1):
                s[i] -= c
            _poly_trim(s)
            r0, r1, s0, s1 = r1, r, s1, s
        if len(r0) != 1:
            raise ZeroDivisionError("scalar is a zero divisor (not a field element)")
        inv_c = _Q1 / r0[0]
        out = [c * inv_c for c in s0] + [_Q0] * self.field.degree
        return CycloScalar(self.field, tuple(out[: self.field.degree]))

    def __truediv__(self, other):
        if not isinstance(other, CycloScalar):
            return NotImplemented
        return self * other.inverse()

    def conjugate(self) -> CycloScalar:
        """Complex conjugation zeta -> zeta^(-1)."""
        return self.field.galois(self, -1)

    def __eq__(self, other):
        if not isinstance(other, CycloScalar):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.conductor, self.coeffs))

    def to_strings(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{i}")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def make_field(conductor: int) -> CycloField:
    """The cyclotomic field Q(zeta_N); instances are shared per conductor.

    >>> make_field(1).minimal_polynomial
    (mpq(-1,1), mpq(1,1))
    >>> make_field(12).degree
    4
    """
    return CycloField(conductor)


def default_field() -> CycloField:
    """Q(zeta_12): the scalar domain used by every constructor by default."""
    return make_field(12)


def arith(a: CycloScalar, b: CycloScalar, op: str) -> CycloScalar:
    """Named arithmetic entry point: op in {'add','sub','mul','div'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def galois(a: CycloScalar, k: int) -> CycloScalar:
    return a.field.galois(a, k)
