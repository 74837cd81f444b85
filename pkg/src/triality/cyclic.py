"""Cyclic composition algebras over L = F x F x F in the triple model.

L is represented on the basis (1, xi, xi^2) with xi = (1, omega, omega^2),
so L = F[xi]/(xi^3 - 1) and the cyclic shift rho acts diagonally:
rho(xi^k) = omega^k xi^k.  A cyclic composition algebra V = S (x) L sits on
the 24-element tensor basis s_p (x) xi^j; the product of S (x) L expands as

    (x (x) xi^a) * (y (x) xi^b) = omega^(a+2b) (x . y) (x) xi^(a+b)

for the standard twist rho (the opposite algebra uses rho^2, which doubles
the omega exponent).  The form b_Q is L-valued: b_Q(s_p xi^a, s_q xi^b) =
n(s_p, s_q) xi^(a+b).  All axioms are verified exactly on basis closures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .scalars import default_field
from .composition import SymCompAlgebra, is_symmetric_composition
from .grading import SMap, Grading, verify_grading
from .linalg import Echelon, null_space


class CyclicAxiomError(ValueError):
    pass


class CubicEtale:
    """L = F x F x F with the cyclic shift rho, in xi-coordinates."""

    def __init__(self, field=None):
        F = field or default_field()
        self.field = field = F
        self.omega = F.omega
        self.labels = ["1", "xi", "xi^2"]
        self.zero = (F.zero, F.zero, F.zero)
        self.one = (F.one, F.zero, F.zero)
        self.xi = (F.zero, F.one, F.zero)
        self.xi2 = (F.zero, F.zero, F.one)

    def elt(self, c0, c1, c2):
        return (c0, c1, c2)

    def scalar(self, c):
        return (c, self.field.zero, self.field.zero)

    def mul(self, a, b):
        out = [self.field.zero, self.field.zero, self.field.zero]
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[(i + j) % 3] = out[(i + j) % 3] + x * y
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def smul(self, c, a):
        return tuple(c * x for x in a)

    def rho(self, a, power=1):
        w = self.omega
        fac = [self.field.one, w, w * w]
        return tuple(fac[(k * power) % 3] * a[k] for k in range(3))

    def tau(self, a):
        """The involution of (L, rho) swapping the last two components;
        in xi-coordinates it swaps xi and xi^2."""
        return (a[0], a[2], a[1])

    def norm(self, a):
        return self.mul(self.mul(a, self.rho(a)), self.rho(a, 2))

    def trace(self, a):
        return self.add(self.add(a, self.rho(a)), self.rho(a, 2))

    def sharp(self, a):
        return self.mul(self.rho(a), self.rho(a, 2))

    def is_zero(self, a):
        return all(x.is_zero() for x in a)

    def scalar_part(self, a):
        """The F-value of an element known to lie in F.1."""
        if not (a[1].is_zero() and a[2].is_zero()):
            raise ValueError(f"{a} is not in F.1")
        return a[0]

    def components(self, a):
        """The componentwise view (l1, l2, l3): component i evaluates xi
        at omega^(i-1), matching xi = (1, omega, omega^2)."""
        w = self.omega
        res = []
        for wi in (self.field.one, w, w * w):
            res.append(a[0] + wi * a[1] + wi * wi * a[2])
        return tuple(res)

    def invert(self, a):
        n = self.norm(a)
        s = self.scalar_part(n)
        if s.is_zero():
            raise ZeroDivisionError("element of L is not invertible")
        return self.smul(s.inverse(), self.sharp(a))

    def idempotents(self):
        """The three primitive idempotents (1/3)(1 + w^-i xi + w^-2i xi^2)."""
        F = self.field
        third = F.scalar(1, 3)
        w = self.omega
        out = []
        for wi in (F.one, w * w, w):  # omega^(-i) for i = 0, 1, 2
            out.append((third, third * wi, third * wi * wi))
        return out


def make_L(field=None) -> CubicEtale:
    """The cubic etale algebra with its invariants verified exactly:
    rho^3 = id, N(xi) = 1, rho(xi) = omega xi, xi# = xi^2."""
    L = CubicEtale(field)
    F = L.field
    for a in ((F.one, F.scalar(2), F.scalar(-3)), L.xi, L.xi2):
        if L.rho(L.rho(L.rho(a))) != a:
            raise CyclicAxiomError("rho^3 is not the identity")
    if L.norm(L.xi) != L.one:
        raise CyclicAxiomError("N(xi) != 1")
    if L.rho(L.xi) != L.smul(L.omega, L.xi):
        raise CyclicAxiomError("xi is not an omega-eigenvector of rho")
    if L.sharp(L.xi) != L.mul(L.xi, L.xi):
        raise CyclicAxiomError("xi# != xi^2")
    return L


class CyclicAlgebra:
    """The triple model V = S (x) L on the 24-element tensor basis.

    twist = 1 is the standard orientation (rho-semilinear in the first
    argument); twist = 2 is used by opposite algebras.
    """

    def __init__(self, S: SymCompAlgebra, L: CubicEtale, star, bq, twist=1, scaled_by=None):
        self.S = S
        self.L = L
        self.field = S.field
        self.twist = twist
        self.star = star      # dict (i, j) -> dict k -> scalar
        self.bq = bq          # dict (i, j) -> dict (L index) -> scalar
        self.scaled_by = scaled_by
        self.labels = []
        for p in range(S.dim):
            for j in range(3):
                suffix = ["", "(x)xi", "(x)xi^2"][j]
                self.labels.append(S.labels[p] + suffix)
        self.main_sort = "V"

    @property
    def dim(self):
        return 3 * self.S.dim

    def idx(self, p, j):
        return 3 * p + (j % 3)

    def split(self, i):
        return divmod(i, 3)

    def basis_vec(self, i):
        return {i: self.field.one}

    # -- sparse vector helpers (same conventions as StructAlgebra)

    def add(self, x, y):
        out = dict(x)
        for i, c in y.items():
            s = out.get(i)
            t = c if s is None else s + c
            if t.is_zero():
                out.pop(i, None)
            else:
                out[i] = t
        return out

    def scale(self, c, x):
        if c.is_zero():
            return {}
        return {i: c * v for i, v in x.items()}

    def product(self, x, y):
        out = {}
        star = self.star
        for i, a in x.items():
            for j, b in y.items():
                row = star.get((i, j))
                if not row:
                    continue
                ab = a * b
                for k, c in row.items():
                    s = out.get(k)
                    t = ab * c if s is None else s + ab * c
                    if t.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = t
        return out

    def bform(self, x, y):
        out = [self.field.zero] * 3
        for i, a in x.items():
            for j, b in y.items():
                row = self.bq.get((i, j))
                if not row:
                    continue
                ab = a * b
                for k, c in row.items():
                    out[k] = out[k] + ab * c
        return tuple(out)

    def quadratic(self, x):
        half = self.field.scalar(1, 2)
        return tuple(half * c for c in self.bform(x, x))

    def act(self, l, x):
        """The L-action: xi^k sends s_p (x) xi^j to s_p (x) xi^(j+k)."""
        out = {}
        for i, a in x.items():
            p, j = self.split(i)
            for k in range(3):
                c = l[k]
                if c.is_zero():
                    continue
                t = out.get(self.idx(p, j + k))
                t2 = a * c if t is None else t + a * c
                if t2.is_zero():
                    out.pop(self.idx(p, j + k), None)
                else:
                    out[self.idx(p, j + k)] = t2
        return out

    def embed(self, p, j=0):
        return {self.idx(p, j): self.field.one}

    # -- grading protocol: two sorts, V and L

    def grading_sorts(self):
        return {"V": self.dim, "L": 3}

    def grading_maps(self):
        one = self.field.one
        lmul = {(j, k): {(j + k) % 3: one} for j in range(3) for k in range(3)}
        act = {}
        for k in range(3):
            for i in range(self.dim):
                p, j = self.split(i)
                act[(k, i)] = {self.idx(p, j + k): one}
        return [
            SMap("L.mul", ("L", "L"), "L", lmul),
            SMap("star", ("V", "V"), "V", self.star),
            SMap("L.act", ("L", "V"), "V", act),
            SMap("b_Q", ("V", "V"), "L", self.bq),
        ]


def cyclic_from_symmetric(S: SymCompAlgebra, L: CubicEtale | None = None, twist: int = 1) -> CyclicAlgebra:
    """The cyclic composition algebra S (x) (L, rho^twist)."""
    if S.dim != 8:
        raise CyclicAxiomError("the triple model needs an 8-dimensional symmetric composition algebra")
    L = L or make_L(S.field)
    F = S.field
    w = F.omega
    wpow = [F.one, w, w * w]
    star = {}
    bq = {}
    for p in range(S.dim):
        for q in range(S.dim):
            row = S.mul.get((p, q), {})
            npq = S.forms["n"].get((p, q))
            for a in range(3):
                for b in range(3):
                    i, j = 3 * p + a, 3 * q + b
                    if row:
                        fac = wpow[(twist * (a + 2 * b)) % 3]
                        star[(i, j)] = {3 * r + ((a + b) % 3): fac * c for r, c in row.items()}
                    if npq is not None:
                        bq[(i, j)] = {(a + b) % 3: npq}
    V = CyclicAlgebra(S, L, star, bq, twist=twist)
    return V


def opposite(V: CyclicAlgebra) -> CyclicAlgebra:
    """The same module and form with x *op y = y * x, a cyclic composition
    algebra over (L, rho^2)."""
    star = {(j, i): dict(row) for (i, j), row in V.star.items()}
    return CyclicAlgebra(V.S, V.L, star, dict(V.bq), twist=3 - V.twist, scaled_by=V.scaled_by)


def scale(V: CyclicAlgebra, lam) -> CyclicAlgebra:
    """The similitude-scaled algebra: product lam (x * y), form lam# Q."""
    L = V.L
    L.invert(lam)  # raises if lam is not invertible
    lam_sharp = L.sharp(lam)
    star = {}
    for (i, j), row in V.star.items():
        acted = V.act(lam, row)
        if acted:
            star[(i, j)] = acted
    bq = {}
    for (i, j), row in V.bq.items():
        out = [V.field.zero] * 3
        for k, c in row.items():
            for m in range(3):
                if not lam_sharp[m].is_zero():
                    out[(k + m) % 3] = out[(k + m) % 3] + c * lam_sharp[m]
        entry = {k: c for k, c in enumerate(out) if not c.is_zero()}
        if entry:
            bq[(i, j)] = entry
    return CyclicAlgebra(V.S, V.L, star, bq, twist=V.twist, scaled_by=lam)


@dataclass
class AxiomReport:
    ok: bool
    violations: list
    checked: int

    def __bool__(self):
        return self.ok


def verify_cyclic_axioms(V: CyclicAlgebra, fail_fast: bool = False) -> AxiomReport:
    """Exact verification of the cyclic composition axioms.

    Semilinearity is checked on xi-multiples of every basis element; the
    multiplicativity of Q and the identities (x*y)*x = rho^2t(Q(x)) y,
    x*(y*x) = rho^t(Q(x)) y are checked in fully polarized form on basis
    tuples, which is equivalent in characteristic 0.  fail_fast stops after
    the first violating section (used by mutation tests).
    """
    F = V.field
    L = V.L
    t = V.twist
    n = V.dim
    viol = []
    checked = 0
    bas = [V.basis_vec(i) for i in range(n)]
    prod = [[V.product(bas[i], bas[j]) for j in range(n)] for i in range(n)]
    rho_t_xi = L.rho(L.xi, t)
    rho_2t_xi = L.rho(L.xi, 2 * t)

    for i, j in itertools.product(range(n), repeat=2):
        checked += 2
        lhs = V.product(V.act(L.xi, bas[i]), bas[j])
        rhs = V.act(rho_t_xi, prod[i][j])
        if lhs != rhs:
            viol.append(("semilinear_x", (i, j)))
        lhs = V.product(bas[i], V.act(L.xi, bas[j]))
        rhs = V.act(rho_2t_xi, prod[i][j])
        if lhs != rhs:
            viol.append(("semilinear_y", (i, j)))
    if viol and fail_fast:
        return AxiomReport(False, viol, checked)

    checked += n ** 4
    viol.extend(_polarized_norm_check(V, prod))
    if viol and fail_fast:
        return AxiomReport(False, viol, checked)

    for i, j, k in itertools.product(range(n), repeat=3):
        checked += 3
        lhs = L.rho(V.bform(prod[j][k], bas[i]), t)
        mid = V.bform(prod[i][j], bas[k])
        rhs = L.rho(V.bform(prod[k][i], bas[j]), 2 * t)
        if mid != lhs or mid != rhs:
            viol.append(("bq_cyclic", (i, j, k)))
        target_l = V.act(L.rho(V.bform(bas[i], bas[k]), 2 * t), bas[j])
        if V.add(V.product(prod[i][j], bas[k]), V.product(prod[k][j], bas[i])) != target_l:
            viol.append(("eq1_left", (i, j, k)))
        target_r = V.act(L.rho(V.bform(bas[i], bas[k]), t), bas[j])
        if V.add(V.product(bas[i], prod[j][k]), V.product(bas[k], prod[j][i])) != target_r:
            viol.append(("eq1_right", (i, j, k)))

    # nonsingularity of b_Q over L on the L-basis s_p (x) 1
    if viol and fail_fast:
        return AxiomReport(False, viol, checked)
    m = V.S.dim
    gram = [[V.bform(V.embed(p), V.embed(q)) for q in range(m)] for p in range(m)]
    # determinant of an L-valued matrix, computed in the commutative ring L
    det = _l_det(L, gram)
    if L.scalar_part(L.norm(det)).is_zero():
        viol.append(("b_Q_nonsingular", ()))
    return AxiomReport(not viol, viol, checked)


def _polarized_norm_check(V: CyclicAlgebra, prod):
    """Fully polarized multiplicativity of Q on all basis 4-tuples:
    b_Q(x*y, x'*y') + b_Q(x*y', x'*y) = rho^t(b_Q(x, x')) rho^2t(b_Q(y, y')).

    The triple models have single-term products and single-term polar
    values, which admits a fast scalar path; anything else falls back to
    generic L arithmetic.
    """
    F = V.field
    L = V.L
    t = V.twist
    n = V.dim
    viol = []
    single = True
    pv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            d = prod[i][j]
            if not d:
                continue
            if len(d) != 1:
                single = False
                break
            ((idx, c),) = d.items()
            pv[i][j] = (idx, c)
        if not single:
            break
    bqv = {}
    if single:
        for key, row in V.bq.items():
            if len(row) != 1:
                single = False
                break
            ((k, c),) = row.items()
            bqv[key] = (k, c)

    if not single:
        bas = [V.basis_vec(i) for i in range(n)]
        for i, k in itertools.product(range(n), repeat=2):
            bik = V.bform(bas[i], bas[k])
            for j, l in itertools.product(range(n), repeat=2):
                lhs = tuple(
                    a + b
                    for a, b in zip(V.bform(prod[i][j], prod[k][l]), V.bform(prod[i][l], prod[k][j]))
                )
                rhs = L.mul(L.rho(bik, t), L.rho(V.bform(bas[j], bas[l]), 2 * t))
                if lhs != rhs:
                    viol.append(("norm_multiplicative", (i, j, k, l)))
        return viol

    w = F.omega
    wp = [F.one, w, w * w]
    for i in range(n):
        pi = pv[i]
        for k in range(n):
            pk = pv[k]
            bik = bqv.get((i, k))
            left = None if bik is None else (bik[0], bik[1] * wp[(t * bik[0]) % 3])
            for j in range(n):
                pij = pi[j]
                pkj = pk[j]
                for l in range(n):
                    acc = {}
                    pkl = pk[l]
                    if pij is not None and pkl is not None:
                        row = bqv.get((pij[0], pkl[0]))
                        if row is not None:
                            acc[row[0]] = row[1] * pij[1] * pkl[1]
                    pil = pi[l]
                    if pil is not None and pkj is not None:
                        row = bqv.get((pil[0], pkj[0]))
                        if row is not None:
                            kk = row[0]
                            c = row[1] * pil[1] * pkj[1]
                            prev = acc.get(kk)
                            s = c if prev is None else prev + c
                            if s.is_zero():
                                acc.pop(kk, None)
                            else:
                                acc[kk] = s
                    bjl = None if left is None else bqv.get((j, l))
                    if bjl is None:
                        if acc:
                            viol.append(("norm_multiplicative", (i, j, k, l)))
                        continue
                    rk = (left[0] + bjl[0]) % 3
                    rc = left[1] * bjl[1] * wp[(2 * t * bjl[0]) % 3]
                    if acc != {rk: rc}:
                        viol.append(("norm_multiplicative", (i, j, k, l)))
    return viol


def _l_det(L: CubicEtale, mat):
    """Determinant over the commutative ring L by cofactor expansion."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = L.zero
    for j in range(n):
        if L.is_zero(mat[0][j]):
            continue
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = L.mul(mat[0][j], _l_det(L, minor))
        if j % 2:
            term = L.smul(L.field.scalar(-1), term)
        total = L.add(total, term)
    return total


# ------------------------------------------------ gradings on the triple model


def tensor_grading(grading_S: Grading, h, V: CyclicAlgebra) -> Grading:
    """The grading Gamma_S (x) Gamma_L on V = S (x) L: the tensor basis
    element s_p (x) xi^j has degree deg(s_p) + j*h, and L is graded with
    deg xi = h.  h must have order 3."""
    if grading_S.structure is not V.S:
        raise ValueError("grading does not live on the S used to build V")
    G = grading_S.group
    if h.group != G or h.order() != 3:
        raise ValueError("the distinguished element must lie in the group and have order 3")
    sdeg = grading_S.degrees["A"]
    vdeg = []
    for p in range(V.S.dim):
        for j in range(3):
            vdeg.append(sdeg[p] + j * h)
    ldeg = [G.identity(), h, 2 * h]
    g = Grading(V, G, {"V": vdeg, "L": ldeg})
    report = verify_grading(g)
    if not report.ok:
        raise AssertionError(f"tensor grading failed to verify: {report.violations[:3]}")
    return g


def distinguished_element(grading: Grading):
    """The degree of the omega-eigenvector of the twist: xi for twist 1,
    xi^2 for twist 2 (the distinguished elements of V and V^op are mutually
    inverse)."""
    V = grading.structure
    twist = getattr(V, "twist", 1)
    return grading.degrees["L"][1] if twist == 1 else grading.degrees["L"][2]


# ------------------------------------------------ idempotent-cut subalgebras


def para_subalgebra_from_idempotent(V: CyclicAlgebra, eps):
    """The 8-dimensional F-subalgebra C_eps = {X : X*eps = b_Q(X,eps)eps - X}
    cut out by an idempotent eps (eps*eps = eps != 0, which forces
    Q(eps) = 1).  Returns (S_sub, basis) where S_sub is the para-Hurwitz
    restriction on the computed basis and basis is the list of V-vectors.
    """
    F = V.field
    L = V.L
    if not eps or V.product(eps, eps) != eps:
        raise CyclicAxiomError("eps is not a nonzero idempotent")
    if V.quadratic(eps) != L.one:
        raise CyclicAxiomError("idempotent with Q(eps) != 1")
    # rows of the linear condition X*eps + X - b_Q(X,eps) eps = 0
    cols = []
    for i in range(V.dim):
        x = V.basis_vec(i)
        vec = V.add(V.product(x, eps), x)
        vec = V.add(vec, V.scale(F.scalar(-1), V.act(V.bform(x, eps), eps)))
        cols.append(vec)
    rows = []
    for out_idx in range(V.dim):
        row = {}
        for i, col in enumerate(cols):
            c = col.get(out_idx)
            if c is not None:
                row[i] = c
        if row:
            rows.append(row)
    basis = null_space(F, V.dim, rows)
    if len(basis) != 8:
        raise CyclicAxiomError(f"idempotent cut has dimension {len(basis)}, expected 8")
    ech = Echelon(F, V.dim)
    for b in basis:
        ech.insert(b)

    def expand(vec):
        """Coordinates of vec in the computed basis (it must lie in the span)."""
        coords = {}
        v = dict(vec)
        for k, b in enumerate(basis):
            piv = min(b)
            c = v.get(piv)
            if c is None:
                continue
            scal = c / b[piv]
            coords[k] = scal
            for j, bc in b.items():
                t = v.get(j)
                t = -(scal * bc) if t is None else t - scal * bc
                if t.is_zero():
                    v.pop(j, None)
                else:
                    v[j] = t
        if v:
            raise CyclicAxiomError("subalgebra is not closed under the product")
        return coords

    # normalize the basis so expansion against pivots is valid
    basis = ech.basis()
    mul = {}
    n_polar = {}
    for a in range(8):
        for b in range(8):
            row = expand(V.product(basis[a], basis[b]))
            if row:
                mul[(a, b)] = row
            val = V.bform(basis[a], basis[b])
            sc = L.scalar_part(val)  # raises unless the value sits in F.1
            if not sc.is_zero():
                n_polar[(a, b)] = sc
    labels = [f"c{k}" for k in range(8)]
    S_sub = SymCompAlgebra(F, labels, mul, n_polar, para_unit=expand(eps))
    rep = is_symmetric_composition(S_sub)
    if not rep.ok:
        raise CyclicAxiomError(f"idempotent cut is not a symmetric composition algebra: {rep.violations[:2]}")
    # eps must act as the para-unit: eps * x = x~ = n(x, eps)eps - x on C_eps
    pu = S_sub.para_unit
    for k in range(8):
        x = S_sub.basis_vec(k)
        conj = S_sub.add(S_sub.scale(S_sub.polar(x, pu), pu), S_sub.scale(F.scalar(-1), x))
        if S_sub.product(pu, x) != conj or S_sub.product(x, pu) != conj:
            raise CyclicAxiomError("idempotent is not a para-unit of its cut")
    return S_sub, basis
