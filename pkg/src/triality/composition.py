"""Hurwitz, para-Hurwitz and Okubo algebras with their standard gradings.

Two coexisting models of the split Cayley algebra are kept on purpose: the
Zorn vector-matrix model carries the Cartan Z^2-grading on its natural
hyperbolic basis, and the iterated Cayley-Dickson model carries the Z_2^3
grading on its natural doubling basis.  The Okubo algebra lives on the
traceless 3x3 matrices over a field containing a primitive cube root of
unity omega, with homogeneous basis X^a Y^b where X = diag(1, omega,
omega^2) and Y is the cyclic permutation matrix (so XY = omega YX).

Every constructor is certified by an exact verifier; nothing is assumed
about the structure constants beyond what the verifiers confirm.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .scalars import default_field
from .fgab import make_group
from .grading import Grading, StructAlgebra, verify_grading


class CompositionError(ValueError):
    pass


class HurwitzAlgebra(StructAlgebra):
    """A unital composition algebra: product, polar norm form "n", standard
    involution x -> n(x,1)1 - x, and the unit vector."""

    def __init__(self, field, labels, mul, n_polar, unit, involution, doubling_steps=0):
        super().__init__(field, labels, mul, "composition", forms={"n": n_polar}, involution=involution, unit=unit)
        self.doubling_steps = doubling_steps

    def norm(self, x):
        two = self.field.scalar(2)
        return self.form_value("n", x, x) / two

    def polar(self, x, y):
        return self.form_value("n", x, y)


class SymCompAlgebra(StructAlgebra):
    """A (not necessarily unital) composition algebra whose polar norm form
    is associative.  para_unit is set for para-Hurwitz constructions;
    diagonal_pair marks a 2-dim subalgebra used by the idempotent search."""

    def __init__(self, field, labels, mul, n_polar, para_unit=None, diagonal_pair=None):
        super().__init__(field, labels, mul, "composition", forms={"n": n_polar})
        self.para_unit = para_unit
        self.diagonal_pair = diagonal_pair

    def norm(self, x):
        two = self.field.scalar(2)
        return self.form_value("n", x, x) / two

    def polar(self, x, y):
        return self.form_value("n", x, y)


# --------------------------------------------------------------- Zorn model


def zorn_cayley(field=None) -> HurwitzAlgebra:
    """The split Cayley algebra as Zorn vector matrices on the basis
    (e1, e2, u1, u2, u3, v1, v2, v3), with hyperbolic norm n = ab - u.v."""
    F = field or default_field()
    zero, one = F.zero, F.one

    def vm(a, u, v, b):
        return (a, tuple(u), tuple(v), b)

    def basis_vm(i):
        e = [zero] * 3
        if i == 0:
            return vm(one, e, e, zero)
        if i == 1:
            return vm(zero, e, e, one)
        if 2 <= i <= 4:
            u = list(e)
            u[i - 2] = one
            return vm(zero, u, e, zero)
        v = list(e)
        v[i - 5] = one
        return vm(zero, e, v, zero)

    def dot(u, v):
        return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]

    def cross(u, v):
        return (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )

    def vm_mul(x, y):
        a, u, v, b = x
        c, s, t, d = y
        au = tuple(a * si + d * ui - cv for si, ui, cv in zip(s, u, cross(v, t)))
        av = tuple(c * vi + b * ti + cu for vi, ti, cu in zip(v, t, cross(u, s)))
        return (a * c + dot(u, t), au, av, b * d + dot(v, s))

    def vm_coords(x):
        a, u, v, b = x
        return [a, b, u[0], u[1], u[2], v[0], v[1], v[2]]

    labels = ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"]
    mul = {}
    for i in range(8):
        for j in range(8):
            coords = vm_coords(vm_mul(basis_vm(i), basis_vm(j)))
            row = {k: c for k, c in enumerate(coords) if not c.is_zero()}
            if row:
                mul[(i, j)] = row
    # polar of n(x) = ab - u.v: the hyperbolic pairing
    m1 = F.scalar(-1)
    n_polar = {(0, 1): one, (1, 0): one}
    for i in range(3):
        n_polar[(2 + i, 5 + i)] = m1
        n_polar[(5 + i, 2 + i)] = m1
    unit = {0: one, 1: one}
    involution = {0: {1: one}, 1: {0: one}}
    for i in range(2, 8):
        involution[i] = {i: m1}
    return HurwitzAlgebra(F, labels, mul, n_polar, unit, involution)


# ------------------------------------------------------- Cayley-Dickson


def ground_field_algebra(field=None) -> HurwitzAlgebra:
    """F itself as the 1-dimensional Hurwitz algebra with n(x) = x^2."""
    F = field or default_field()
    one = F.one
    return HurwitzAlgebra(F, ["1"], {(0, 0): {0: one}}, {(0, 0): F.scalar(2)}, {0: one}, {0: {0: one}})


def cayley_dickson(A: HurwitzAlgebra, mu) -> HurwitzAlgebra:
    """One doubling step: (a,b)(c,d) = (ac + mu d~b, da + bc~) with norm
    n(a,b) = n(a) - mu n(b).  Doubling an 8-dimensional algebra would leave
    the composition class and is refused."""
    if A.dim not in (1, 2, 4):
        raise CompositionError("can only double algebras of dimension 1, 2 or 4")
    if mu.is_zero():
        raise CompositionError("doubling parameter must be nonzero")
    F = A.field
    n = A.dim
    step = A.doubling_steps + 1
    gen = f"g{step}"
    labels = list(A.labels) + [gen if lab == "1" else lab + gen for lab in A.labels]

    def shift(vec, by):
        return {i + by: c for i, c in vec.items()}

    mul = {}
    for i in range(n):
        bi = A.basis_vec(i)
        for j in range(n):
            bj = A.basis_vec(j)
            ac = A.product(bi, bj)  # (a,0)(c,0) = (ac, 0)
            if ac:
                mul[(i, j)] = ac
            dbar_b = A.product(A.conj(bj), bi)  # (0,b)(0,d) = (mu d~b, 0)
            r = {k: mu * c for k, c in dbar_b.items()}
            if r:
                mul[(i + n, j + n)] = r
            da = A.product(bj, bi)  # (a,0)(0,d) = (0, da)
            if da:
                mul[(i, j + n)] = shift(da, n)
            bc = A.product(bi, A.conj(bj))  # (0,b)(c,0) = (0, b c~)
            if bc:
                mul[(i + n, j)] = shift(bc, n)
    n_polar = {}
    for (i, j), c in A.forms["n"].items():
        n_polar[(i, j)] = c
        n_polar[(i + n, j + n)] = -(mu * c)
    unit = dict(A.unit)
    # conjugation: (a,b)~ = (a~, -b)
    involution = {i: dict(row) for i, row in A.involution.items()}
    for i in range(n):
        involution[i + n] = {i + n: -F.one}
    return HurwitzAlgebra(F, labels, mul, n_polar, unit, involution, doubling_steps=step)


def doubled_cayley(field=None) -> HurwitzAlgebra:
    """The split Cayley algebra built by three doublings of F with mu = 1."""
    F = field or default_field()
    A = ground_field_algebra(F)
    for _ in range(3):
        A = cayley_dickson(A, F.one)
    return A


# --------------------------------------------------------------- para


def para(A: HurwitzAlgebra) -> SymCompAlgebra:
    """The para-Hurwitz algebra: same space and norm, product x~ y~."""
    S_mul = {}
    for i in range(A.dim):
        ci = A.conj(A.basis_vec(i))
        for j in range(A.dim):
            cj = A.conj(A.basis_vec(j))
            row = A.product(ci, cj)
            if row:
                S_mul[(i, j)] = row
    return SymCompAlgebra(A.field, list(A.labels), S_mul, dict(A.forms["n"]), para_unit=dict(A.unit))


# --------------------------------------------------------------- Okubo


def okubo_sl3(field=None) -> SymCompAlgebra:
    """The Okubo algebra on traceless 3x3 matrices:
    x * y = mu xy + (1-mu) yx - (1/3) tr(xy) 1 with mu = (2+omega)/3 and
    n(x) = (1/6) tr(x^2).  The homogeneous basis is X^a Y^b, (a,b) != (0,0).
    """
    F = field or default_field()
    w = F.omega
    zero, one = F.zero, F.one
    third = F.scalar(1, 3)
    mu = (F.scalar(2) + w) * third
    one_minus_mu = one - mu

    def mat_mul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(3)), zero) for j in range(3)] for i in range(3)]

    def mat_add(A, B):
        return [[A[i][j] + B[i][j] for j in range(3)] for i in range(3)]

    def mat_scale(c, A):
        return [[c * A[i][j] for j in range(3)] for i in range(3)]

    def tr(A):
        return A[0][0] + A[1][1] + A[2][2]

    X = [[one, zero, zero], [zero, w, zero], [zero, zero, w * w]]
    Y = [[zero, zero, one], [one, zero, zero], [zero, one, zero]]
    eye = [[one if i == j else zero for j in range(3)] for i in range(3)]

    keys = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    keys.sort()
    mono = {}
    for a, b in keys:
        M = eye
        for _ in range(a):
            M = mat_mul(M, X)
        for _ in range(b):
            M = mat_mul(M, Y)
        mono[(a, b)] = M

    def star(A, B):
        AB = mat_mul(A, B)
        BA = mat_mul(B, A)
        out = mat_add(mat_scale(mu, AB), mat_scale(one_minus_mu, BA))
        return mat_add(out, mat_scale(-(third * tr(AB)), eye))

    def expand(Z):
        """Coordinates of a traceless matrix in the monomial basis via the
        trace pairing tr(M_k M_{-k})."""
        out = {}
        for idx, (a, b) in enumerate(keys):
            dual = mono[((-a) % 3, (-b) % 3)]
            denom = tr(mat_mul(mono[(a, b)], dual))
            c = tr(mat_mul(Z, dual)) / denom
            if not c.is_zero():
                out[idx] = c
        return out

    mul = {}
    n_polar = {}
    for i, ki in enumerate(keys):
        for j, kj in enumerate(keys):
            row = expand(star(mono[ki], mono[kj]))
            if row:
                mul[(i, j)] = row
            c = third * tr(mat_mul(mono[ki], mono[kj]))
            if not c.is_zero():
                n_polar[(i, j)] = c
    labels = [f"X^{a}Y^{b}" if a and b else (f"X^{a}" if a else f"Y^{b}") for a, b in keys]
    S = SymCompAlgebra(F, labels, mul, n_polar)
    S.monomial_keys = keys
    S.diagonal_pair = (keys.index((1, 0)), keys.index((2, 0)))  # X, X^2
    return S


# ------------------------------------------------------------- verifiers


@dataclass
class LawReport:
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def _nonsingular(S) -> bool:
    from .linalg import det_dense

    n = S.dim
    gram = [[S.forms["n"].get((i, j), S.field.zero) for j in range(n)] for i in range(n)]
    return not det_dense(S.field, gram).is_zero()


def is_symmetric_composition(S) -> LawReport:
    """Exact check of the symmetric-composition laws on the basis closure:
    nonsingular polar form, multiplicativity of the norm (fully polarized),
    associativity of the polar form, and the polarized two-sided identities
    (x*y)*x = n(x)y = x*(y*x)."""
    F = S.field
    n = S.dim
    bas = [S.basis_vec(i) for i in range(n)]
    prod = [[S.product(bas[i], bas[j]) for j in range(n)] for i in range(n)]
    pol = lambda x, y: S.form_value("n", x, y)
    viol = []
    if not _nonsingular(S):
        viol.append(("nonsingular", (), "polar form is singular"))
    for i, k in itertools.product(range(n), repeat=2):
        nik = pol(bas[i], bas[k])
        for j, l in itertools.product(range(n), repeat=2):
            lhs = pol(prod[i][j], prod[k][l]) + pol(prod[k][j], prod[i][l])
            if lhs != nik * pol(bas[j], bas[l]):
                viol.append(("norm_multiplicative", (i, j, k, l), repr(lhs)))
    for i, j, k in itertools.product(range(n), repeat=3):
        if pol(prod[i][j], bas[k]) != pol(bas[i], prod[j][k]):
            viol.append(("polar_associative", (i, j, k), ""))
    for i, k, j in itertools.product(range(n), repeat=3):
        target = S.scale(pol(bas[i], bas[k]), bas[j])
        left = S.add(S.product(prod[i][j], bas[k]), S.product(prod[k][j], bas[i]))
        if left != target:
            viol.append(("left_identity", (i, j, k), ""))
        right = S.add(S.product(bas[i], prod[j][k]), S.product(bas[k], prod[j][i]))
        if right != target:
            viol.append(("right_identity", (i, j, k), ""))
    return LawReport(not viol, viol)


def is_hurwitz(A: HurwitzAlgebra) -> LawReport:
    """Unitality, fully polarized norm multiplicativity, and the standard
    involution laws, all exact."""
    F = A.field
    n = A.dim
    bas = [A.basis_vec(i) for i in range(n)]
    prod = [[A.product(bas[i], bas[j]) for j in range(n)] for i in range(n)]
    pol = lambda x, y: A.form_value("n", x, y)
    viol = []
    if not _nonsingular(A):
        viol.append(("nonsingular", (), ""))
    for i in range(n):
        if A.product(A.unit, bas[i]) != bas[i] or A.product(bas[i], A.unit) != bas[i]:
            viol.append(("unital", (i,), ""))
        if A.conj(A.conj(bas[i])) != bas[i]:
            viol.append(("involutive", (i,), ""))
        xb = A.conj(bas[i])
        for j in range(n):
            if pol(xb, A.conj(bas[j])) != pol(bas[i], bas[j]):
                viol.append(("norm_of_conjugate", (i, j), ""))
        got = A.conj(bas[i])
        expected = A.add(A.scale(pol(bas[i], A.unit), A.unit), A.scale(F.scalar(-1), bas[i]))
        if got != expected:
            viol.append(("standard_involution", (i,), ""))
    for i, k in itertools.product(range(n), repeat=2):
        nik = pol(bas[i], bas[k])
        for j, l in itertools.product(range(n), repeat=2):
            lhs = pol(prod[i][j], prod[k][l]) + pol(prod[k][j], prod[i][l])
            if lhs != nik * pol(bas[j], bas[l]):
                viol.append(("norm_multiplicative", (i, j, k, l), repr(lhs)))
    return LawReport(not viol, viol)


# --------------------------------------------------------------- gradings


def cartan_grading_cayley(A: HurwitzAlgebra | None = None, field=None):
    """The Cartan Z^2-grading of the Zorn model: e1, e2 in degree 0,
    deg u1 = (1,0), deg u2 = (0,1), deg u3 = (-1,-1), deg v_i = -deg u_i."""
    A = A or zorn_cayley(field)
    if A.labels[:3] != ["e1", "e2", "u1"]:
        raise CompositionError("the Cartan grading lives on the Zorn basis")
    G = make_group(2)
    degs = [
        (0, 0), (0, 0),
        (1, 0), (0, 1), (-1, -1),
        (-1, 0), (0, -1), (1, 1),
    ]
    g = Grading(A, G, {"A": [G.element(d) for d in degs]})
    report = verify_grading(g)
    if not report.ok:
        raise AssertionError(f"Cartan grading failed to verify: {report.violations[:3]}")
    return g


def z2cubed_grading_cayley(A: HurwitzAlgebra | None = None, field=None):
    """The Z_2^3 grading of the iterated-doubling model: the i-th doubling
    generator gets the i-th Z_2 generator, so every component is a line."""
    A = A or doubled_cayley(field)
    if A.doubling_steps != 3:
        raise CompositionError("the Z2^3 grading lives on the thrice-doubled model")
    G = make_group(0, [2, 2, 2])

    def word_degree(label):
        return tuple(1 if f"g{k}" in label else 0 for k in (1, 2, 3))

    degs = [G.element(word_degree(lab)) for lab in A.labels]
    g = Grading(A, G, {"A": degs})
    report = verify_grading(g)
    if not report.ok:
        raise AssertionError(f"Z2^3 grading failed to verify: {report.violations[:3]}")
    return g


def okubo_grading(S: SymCompAlgebra | None = None, sign: str = "+", field=None):
    """The two Z_3^2 gradings of the Okubo algebra: deg X^a Y^b = (a, b)
    for "+", and with the two generators swapped for "-"."""
    S = S if S is not None else okubo_sl3(field)
    if not hasattr(S, "monomial_keys"):
        raise CompositionError("the Okubo grading lives on the monomial basis")
    if sign not in ("+", "-"):
        raise CompositionError("sign must be '+' or '-'")
    G = make_group(0, [3, 3])
    degs = []
    for a, b in S.monomial_keys:
        degs.append(G.element((a, b) if sign == "+" else (b, a)))
    g = Grading(S, G, {"A": degs})
    report = verify_grading(g)
    if not report.ok:
        raise AssertionError(f"Okubo grading failed to verify: {report.violations[:3]}")
    return g


# ----------------------------------------------------- idempotent search


class IdempotentSearchError(RuntimeError):
    pass


def _cube_roots(field, c):
    """All cube roots of c in the field, found among r * zeta^j with r a
    rational cube root of a rational; sufficient for the desk-scale scalars
    this search meets (roots of unity times rational cubes)."""
    roots = []
    seen = set()
    for j in range(field.conductor):
        t = c * field.zeta(-3 * j % field.conductor)
        if not t.is_rational():
            continue
        q = t.rational_value()
        num, den = q.numerator, q.denominator
        for sign in (1, -1):
            n3 = round(abs(num) ** (1 / 3)) if num else 0
            d3 = round(den ** (1 / 3))
            for nn in (n3 - 1, n3, n3 + 1):
                for dd in (d3 - 1, d3, d3 + 1):
                    if nn < 0 or dd <= 0:
                        continue
                    cand = field.scalar(sign * nn, dd) * field.zeta(j)
                    if cand.coeffs in seen:
                        continue
                    if cand * cand * cand == c:
                        seen.add(cand.coeffs)
                        roots.append(cand)
    return roots


def _pair_idempotents(S, i, j):
    """Idempotents a*u + b*v in a 2-dim closed pattern u*u = alpha v,
    v*v = beta u, u*v = v*u = 0; returns [] if the pattern does not hold."""
    F = S.field
    u, v = S.basis_vec(i), S.basis_vec(j)
    uu, vv = S.product(u, u), S.product(v, v)
    if set(uu) != {j} or set(vv) != {i}:
        return []
    if S.product(u, v) or S.product(v, u):
        return []
    alpha, beta = uu[j], vv[i]
    # a^3 = 1/(alpha^2 beta), b = a^2 alpha
    out = []
    for a in _cube_roots(F, (alpha * alpha * beta).inverse()):
        b = a * a * alpha
        out.append({i: a, j: b})
    out.sort(key=lambda e: tuple(tuple(c.coeffs) for c in (e.get(i, F.zero), e.get(j, F.zero))))
    return out


def nonzero_idempotent(S: SymCompAlgebra):
    """A nonzero exact idempotent of S, found by the structured search:
    designated para-unit, then the designated diagonal pair, then single
    basis elements, then all 2-dim closed basis pairs.  For 2-dimensional
    input the full list of idempotents (the para-units) is returned.
    The norm of every returned idempotent is verified to be 1."""
    F = S.field
    found = []

    def check(eps):
        if S.product(eps, eps) != eps:
            raise AssertionError("search produced a non-idempotent")
        if S.norm(eps) != F.one:
            raise AssertionError("idempotent has norm != 1")
        return eps

    if S.dim == 2:
        sols = _pair_idempotents(S, 0, 1)
        if not sols:
            raise IdempotentSearchError("2-dim algebra is not of para-quadratic shape")
        return [check(e) for e in sols]

    if S.para_unit is not None:
        return check(dict(S.para_unit))
    if S.diagonal_pair is not None:
        sols = _pair_idempotents(S, *S.diagonal_pair)
        if sols:
            return check(sols[0])
    for i in range(S.dim):
        row = S.product(S.basis_vec(i), S.basis_vec(i))
        if set(row) == {i}:
            return check({i: row[i].inverse()})
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            sols = _pair_idempotents(S, i, j)
            if sols:
                return check(sols[0])
    raise IdempotentSearchError("no idempotent found by the structured search")
