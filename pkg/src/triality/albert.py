"""The Albert algebra J(L, V) = L + V built from a rank-8 cyclic
composition algebra: cubic norm N, trace forms, adjoint, and the Jordan
product obtained by linearizing the adjoint,

    X o Y = 1/2 ( X x Y + T(X) Y + T(Y) X - (T(X)T(Y) - T(X,Y)) 1 ),

with X x Y = (X+Y)# - X# - Y# and (l, v)# = (l# - Q(v), v*v - l v).

The product formula is not taken on faith: the constructor certifies it
against two independent oracles, agreement with the product of L on the
subalgebra (l, 0) and the exact generic degree-3 identity.
"""

from __future__ import annotations

from .grading import Grading, StructAlgebra, verify_grading


class AlbertError(ValueError):
    pass


class AlbertAlgebra(StructAlgebra):
    """27-dimensional Jordan algebra on the basis (1, xi, xi^2) + tensor
    basis of V.  Elements are sparse dicts over indices 0..26; helper
    methods convert to and from (l, v) pairs."""

    def __init__(self, V):
        self.V = V
        self.L = L = V.L
        F = V.field
        labels = ["1", "xi", "xi^2"] + [f"v:{lab}" for lab in V.labels]
        self._F = F
        mul, trace_form = self._build_tables(V)
        super().__init__(F, labels, mul, "jordan", forms={"T": trace_form}, unit={0: F.one})

    # -- (l, v) pair helpers

    def pair(self, x):
        F = self._F
        l = [F.zero, F.zero, F.zero]
        v = {}
        for i, c in x.items():
            if i < 3:
                l[i] = c
            else:
                v[i - 3] = c
        return tuple(l), v

    def element(self, l, v):
        out = {}
        for k, c in enumerate(l):
            if not c.is_zero():
                out[k] = c
        for i, c in v.items():
            if not c.is_zero():
                out[i + 3] = c
        return out

    def trace_linear(self, x):
        """T((l, v)) = T_L(l) = 3 * (coefficient of 1 in l)."""
        c = x.get(0, self._F.zero)
        return self._F.scalar(3) * c

    def sharp(self, x):
        V, L = self.V, self.L
        F = self._F
        l, v = self.pair(x)
        q = V.quadratic(v)
        l_sharp = L.sharp(l)
        new_l = tuple(a - b for a, b in zip(l_sharp, q))
        new_v = V.add(V.product(v, v), V.scale(F.scalar(-1), V.act(l, v)))
        return self.element(new_l, new_v)

    def cross(self, x, y):
        s = self.sharp(self.add(x, y))
        out = self.add(s, self.scale(self._F.scalar(-1), self.sharp(x)))
        return self.add(out, self.scale(self._F.scalar(-1), self.sharp(y)))

    def trace_bilinear(self, x, y):
        V, L = self.V, self.L
        F = self._F
        lx, vx = self.pair(x)
        ly, vy = self.pair(y)
        tl = L.trace(L.mul(lx, ly))
        tv = L.trace(V.bform(vx, vy))
        return L.scalar_part(tl) + L.scalar_part(tv)

    def norm(self, x):
        """N((l, v)) = N(l) + b_Q(v, v*v) - T(l Q(v)), an F-scalar."""
        V, L = self.V, self.L
        l, v = self.pair(x)
        n_l = L.scalar_part(L.norm(l))
        middle = L.scalar_part(V.bform(v, V.product(v, v)))
        t_term = L.scalar_part(L.trace(L.mul(l, V.quadratic(v))))
        return n_l + middle - t_term

    def spur(self, x):
        """S(X) = (T(X)^2 - T(X^2)) / 2 via the product."""
        F = self._F
        tx = self.trace_linear(x)
        x2 = self.product(x, x)
        return (tx * tx - self.trace_linear(x2)) / F.scalar(2)

    def _jordan_product_pairs(self, V, x, y):
        F = self._F
        tx, ty = self.trace_linear(x), self.trace_linear(y)
        txy = self.trace_bilinear(x, y)
        out = self.cross(x, y)
        out = self.add(out, self.scale(tx, y))
        out = self.add(out, self.scale(ty, x))
        c = tx * ty - txy
        if not c.is_zero():
            out = self.add(out, {0: -c})
        return self.scale(F.scalar(1, 2), out)

    def _build_tables(self, V):
        F = V.field
        dim = 3 + V.dim
        # temporarily install enough state for the pair helpers
        self.labels = [None] * dim
        mul = {}
        basis = [{i: F.one} for i in range(dim)]
        for i in range(dim):
            for j in range(i, dim):
                prod = self._jordan_product_pairs(V, basis[i], basis[j])
                if prod:
                    mul[(i, j)] = prod
                    if i != j:
                        mul[(j, i)] = dict(prod)
        tform = {}
        for i in range(dim):
            for j in range(dim):
                c = self.trace_bilinear(basis[i], basis[j])
                if not c.is_zero():
                    tform[(i, j)] = c
        return mul, tform

    # the sparse-dict helpers of StructAlgebra are used before __init__
    # completes, so keep local copies that do not depend on instance state
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
        if getattr(self, "mul", None):
            return StructAlgebra.product(self, x, y)
        return self._jordan_product_pairs(self.V, x, y)


def albert(V) -> AlbertAlgebra:
    """Build J(L, V) and certify the product formula by its two oracles:
    the restriction to L is the product of L, and the generic degree-3
    identity holds exactly on every basis element."""
    J = AlbertAlgebra(V)
    F = J.field
    L = J.L
    # oracle 1: L is a subalgebra with its own product
    for a in range(3):
        for b in range(3):
            la = [F.zero] * 3
            lb = [F.zero] * 3
            la[a] = F.one
            lb[b] = F.one
            got = J.product(J.element(la, {}), J.element(lb, {}))
            expected = J.element(L.mul(tuple(la), tuple(lb)), {})
            if got != expected:
                raise AlbertError(f"restriction to L fails at ({a},{b})")
    # oracle 2: the generic degree-3 identity on the basis
    for i in range(J.dim):
        if not verify_degree3(J, J.basis_vec(i)):
            raise AlbertError(f"degree-3 identity fails on basis element {i}")
    # V is the orthogonal complement of L for the trace form
    for a in range(3):
        for i in range(V.dim):
            if not (J.forms["T"].get((a, 3 + i), F.zero)).is_zero():
                raise AlbertError("V is not orthogonal to L under T")
    # unit sanity: T(1) = 3, 1# = 1, N(1) = 1
    one = J.unit
    if J.trace_linear(one) != F.scalar(3) or J.sharp(one) != one or J.norm(one) != F.one:
        raise AlbertError("unit data is wrong")
    return J


def verify_degree3(J: AlbertAlgebra, x) -> bool:
    """X^3 - T(X) X^2 + S(X) X - N(X) 1 = 0, powers via the product."""
    F = J.field
    x2 = J.product(x, x)
    x3 = J.product(x2, x)
    out = J.add(x3, J.scale(-J.trace_linear(x), x2))
    out = J.add(out, J.scale(J.spur(x), x))
    out = J.add(out, J.scale(-J.norm(x), J.unit))
    return not out


def verify_jordan(J: AlbertAlgebra):
    """Commutativity, unit, and the Jordan identity
    (X^2 o (Y o X)) = ((X^2 o Y) o X), exact on all basis pairs."""
    F = J.field
    viol = []
    for i in range(J.dim):
        x = J.basis_vec(i)
        if J.product(J.unit, x) != x:
            viol.append(("unit", i))
        x2 = J.product(x, x)
        for j in range(J.dim):
            y = J.basis_vec(j)
            if J.product(x, y) != J.product(y, x):
                viol.append(("commutative", (i, j)))
            lhs = J.product(x2, J.product(y, x))
            rhs = J.product(J.product(x2, y), x)
            if lhs != rhs:
                viol.append(("jordan", (i, j)))
    return viol


def random_element(J: AlbertAlgebra, rng, spread=5):
    out = {}
    for i in range(J.dim):
        c = rng.randint(-spread, spread)
        if c:
            out[i] = J.field.scalar(c, rng.randint(1, 3))
    return out


def grade_albert(grading_V: Grading) -> Grading:
    """Extend a verified Type III grading on V to J = L + V with
    J_g = L_g + V_g; verified as a Jordan grading with the trace form
    degree-compatible."""
    V = grading_V.structure
    if not grading_V.verified:
        raise AlbertError("verify the V grading first")
    h = grading_V.degrees["L"][1]
    if h.order() != 3:
        raise AlbertError("grade_albert needs a Type III grading (deg xi of order 3)")
    J = albert(V)
    G = grading_V.group
    degs = list(grading_V.degrees["L"]) + list(grading_V.degrees["V"])
    g = Grading(J, G, {"A": degs})
    rep = verify_grading(g)
    if not rep.ok:
        raise AlbertError(f"Albert grading failed to verify: {rep.violations[:3]}")
    return g
