"""The triality Lie algebra tri(S) of an 8-dimensional symmetric
composition algebra: triples (d1, d2, d3) of n-skew maps with
d1(x.y) = d2(x).y + x.d3(y), computed as the kernel of the defining linear
system over so(S,n)^3.  Includes the D4 root datum, derivation algebras of
the triple model, induced gradings on tri, and the center orbit of a
Type III grading.

Matrices on S are dense 8x8 lists; elements of tri are coefficient vectors
over the 84-dimensional space so(S,n)^3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Echelon, null_space, invert_dense
from .grading import Grading, StructAlgebra, verify_grading


class TrialityError(ValueError):
    pass


# ----------------------------------------------------------- matrix helpers


def mat_zero(F, n=8):
    return [[F.zero] * n for _ in range(n)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def mat_mul(F, A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(n):
            s = F.zero
            for k in range(n):
                a = Ai[k]
                if not a.is_zero():
                    b = B[k][j]
                    if not b.is_zero():
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def mat_commutator(F, A, B):
    return mat_add(mat_mul(F, A, B), mat_scale(F.scalar(-1), mat_mul(F, B, A)))


def mat_apply(F, A, vec: dict) -> dict:
    out = {}
    for r, c in vec.items():
        for p in range(len(A)):
            a = A[p][r]
            if not a.is_zero():
                t = out.get(p)
                t2 = a * c if t is None else t + a * c
                if t2.is_zero():
                    out.pop(p, None)
                else:
                    out[p] = t2
    return out


def mat_is_zero(A):
    return all(c.is_zero() for row in A for c in row)


# ------------------------------------------------------------------ so(S,n)


def so_basis(S):
    """A basis of the n-skew maps: G^-1 (E_pq - E_qp) for p < q, where G is
    the Gram matrix of the polar form.  Dimension 28 for dim S = 8."""
    F = S.field
    n = S.dim
    G = [[S.forms["n"].get((i, j), F.zero) for j in range(n)] for i in range(n)]
    Ginv = invert_dense(F, G)
    out = []
    for p in range(n):
        for q in range(p + 1, n):
            A = mat_zero(F, n)
            A[p][q] = F.one
            A[q][p] = -F.one
            out.append(mat_mul(F, Ginv, A))
    return out


# ------------------------------------------------------------------- tri(S)


class TriAlgebra:
    """tri(S) with a fixed 28-element basis of triples, bracket structure
    constants, and exact expansion machinery."""

    def __init__(self, S, triples, so):
        self.S = S
        self.field = S.field
        self.triples = triples  # list of (d1, d2, d3) dense matrices
        self.so = so
        self.dim = len(triples)
        n = S.dim
        self._flat_len = 3 * n * n
        # augmented echelon: flattened triple + coordinate markers
        self._exp = Echelon(S.field, self._flat_len + self.dim)
        for k, t in enumerate(self.triples):
            v = self.flatten(t)
            v[self._flat_len + k] = S.field.one
            self._exp.insert(v)
        self._span = Echelon(S.field, self._flat_len)
        for t in self.triples:
            self._span.insert(self.flatten(t))
        self.lie = self._structure_algebra()

    def flatten(self, triple) -> dict:
        n = self.S.dim
        out = {}
        for c, d in enumerate(triple):
            base = c * n * n
            for i in range(n):
                for j in range(n):
                    x = d[i][j]
                    if not x.is_zero():
                        out[base + i * n + j] = x
        return out

    def contains(self, triple) -> bool:
        return self._span.contains(self.flatten(triple))

    def expand(self, triple) -> dict:
        """Coordinates of a triple in the tri basis; raises if outside."""
        red = self._exp.reduce(self.flatten(triple))
        coords = {}
        for col, c in red.items():
            if col < self._flat_len:
                raise TrialityError("triple is not in tri(S)")
            coords[col - self._flat_len] = -c
        return coords

    def bracket(self, ta, tb):
        F = self.field
        return tuple(mat_commutator(F, a, b) for a, b in zip(ta, tb))

    def from_coords(self, coords: dict):
        F = self.field
        n = self.S.dim
        mats = [mat_zero(F, n) for _ in range(3)]
        for k, c in coords.items():
            for comp in range(3):
                mats[comp] = mat_add(mats[comp], mat_scale(c, self.triples[k][comp]))
        return tuple(mats)

    def _structure_algebra(self) -> StructAlgebra:
        mul = {}
        for a in range(self.dim):
            for b in range(self.dim):
                if a == b:
                    continue
                coords = self.expand(self.bracket(self.triples[a], self.triples[b]))
                if coords:
                    mul[(a, b)] = coords
        labels = [f"t{k}" for k in range(self.dim)]
        return StructAlgebra(self.field, labels, mul, "lie")


def tri_basis(S) -> TriAlgebra:
    """Solve the defining identity d1(x.y) = d2(x).y + x.d3(y) over
    so(S,n)^3 on all basis pairs.  The kernel must be 28-dimensional and
    each coordinate projection must have full rank 28."""
    F = S.field
    n = S.dim
    so = so_basis(S)
    m = len(so)
    bas = [S.basis_vec(i) for i in range(n)]
    so_cols = [[{p: B[p][r] for p in range(n) if not B[p][r].is_zero()} for r in range(n)] for B in so]

    rows = {}

    def put(i, j, k, col, c):
        if c.is_zero():
            return
        row = rows.setdefault((i, j, k), {})
        t = row.get(col)
        t = c if t is None else t + c
        if t.is_zero():
            row.pop(col, None)
        else:
            row[col] = t

    for i in range(n):
        for j in range(n):
            pij = S.product(bas[i], bas[j])
            for mm in range(m):
                for k, c in mat_apply(F, so[mm], pij).items():
                    put(i, j, k, mm, c)
                for k, c in S.product(so_cols[mm][i], bas[j]).items():
                    put(i, j, k, m + mm, -c)
                for k, c in S.product(bas[i], so_cols[mm][j]).items():
                    put(i, j, k, 2 * m + mm, -c)

    kernel = null_space(F, 3 * m, list(rows.values()))
    if len(kernel) != 28:
        raise TrialityError(f"tri(S) has dimension {len(kernel)}, expected 28")
    triples = []
    for vec in kernel:
        mats = []
        for comp in range(3):
            M = mat_zero(F, n)
            for col, c in vec.items():
                if comp * m <= col < (comp + 1) * m:
                    M = mat_add(M, mat_scale(c, so[col - comp * m]))
            mats.append(M)
        triples.append(tuple(mats))
    tri = TriAlgebra(S, triples, so)
    # each projection must be injective on the 28-dimensional kernel
    for comp in range(3):
        ech = Echelon(F, n * n)
        for t in triples:
            ech.insert({i * n + j: t[comp][i][j] for i in range(n) for j in range(n) if not t[comp][i][j].is_zero()})
        if ech.rank != 28:
            raise TrialityError(f"projection {comp + 1} has rank {ech.rank}, expected 28")
    return tri


def cyclic_shift_closed(tri: TriAlgebra) -> bool:
    """(d1,d2,d3) -> (d3,d1,d2) maps tri into itself."""
    return all(tri.contains((t[2], t[0], t[1])) for t in tri.triples)


def verify_lie(tri: TriAlgebra):
    """Exact antisymmetry and Jacobi for the bracket structure constants."""
    A = tri.lie
    viol = []
    d = A.dim
    for a in range(d):
        if A.mul.get((a, a)):
            viol.append(("alternating", (a, a)))
        for b in range(a + 1, d):
            lhs = A.mul.get((a, b), {})
            rhs = A.mul.get((b, a), {})
            if lhs != {k: -c for k, c in rhs.items()}:
                viol.append(("antisymmetric", (a, b)))
    for a, b, c in itertools.combinations(range(d), 3):
        acc = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            inner = A.mul.get((x, y), {})
            for k, co in inner.items():
                outer = A.mul.get((k, z), {})
                for k2, co2 in outer.items():
                    t = acc.get(k2)
                    t2 = co * co2 if t is None else t + co * co2
                    if t2.is_zero():
                        acc.pop(k2, None)
                    else:
                        acc[k2] = t2
        if acc:
            viol.append(("jacobi", (a, b, c)))
    return viol


# ------------------------------------------------------------ derivations


def der_cyclic(V) -> TriAlgebra:
    """Der_L(V, *, Q) for the standard-twist triple model, solved directly:
    L-linear maps are block triples (d1, d2, d3), and the derivation rule
    d(x*y) = d(x)*y + x*d(y) unfolds into the three cyclicly shifted
    identities d_i(u.v) = d_{i+1}(u).v + u.d_{i+2}(v); skewness of b_Q is
    per-block n-skewness.  The result must equal tri(S) as a span."""
    if V.twist != 1:
        raise TrialityError("derivations are computed for the standard twist")
    S = V.S
    F = S.field
    n = S.dim
    so = so_basis(S)
    m = len(so)
    bas = [S.basis_vec(i) for i in range(n)]
    so_cols = [[{p: B[p][r] for p in range(n) if not B[p][r].is_zero()} for r in range(n)] for B in so]

    rows = {}

    def put(key, col, c):
        if c.is_zero():
            return
        row = rows.setdefault(key, {})
        t = row.get(col)
        t = c if t is None else t + c
        if t.is_zero():
            row.pop(col, None)
        else:
            row[col] = t

    # identity block a: d_{a}(u.v) = d_{a+1}(u).v + u.d_{a+2}(v)
    for a in range(3):
        left, mid, right = a * m, ((a + 1) % 3) * m, ((a + 2) % 3) * m
        for i in range(n):
            for j in range(n):
                pij = S.product(bas[i], bas[j])
                for mm in range(m):
                    for k, c in mat_apply(F, so[mm], pij).items():
                        put((a, i, j, k), left + mm, c)
                    for k, c in S.product(so_cols[mm][i], bas[j]).items():
                        put((a, i, j, k), mid + mm, -c)
                    for k, c in S.product(bas[i], so_cols[mm][j]).items():
                        put((a, i, j, k), right + mm, -c)

    kernel = null_space(F, 3 * m, list(rows.values()))
    if len(kernel) != 28:
        raise TrialityError(f"Der_L(V) has dimension {len(kernel)}, expected 28")
    triples = []
    for vec in kernel:
        mats = []
        for comp in range(3):
            M = mat_zero(F, n)
            for col, c in vec.items():
                if comp * m <= col < (comp + 1) * m:
                    M = mat_add(M, mat_scale(c, so[col - comp * m]))
            mats.append(M)
        triples.append(tuple(mats))
    return TriAlgebra(S, triples, so)


def spans_equal(tri_a: TriAlgebra, tri_b: TriAlgebra) -> bool:
    return all(tri_a.contains(t) for t in tri_b.triples) and all(
        tri_b.contains(t) for t in tri_a.triples
    )


# ------------------------------------------------------------- root datum


@dataclass
class RootDatum:
    cartan: list          # 4 coefficient dicts over the tri basis
    roots: list           # 24 integer vectors
    simple_roots: list    # 4 integer vectors
    cartan_matrix: list   # 4x4 integers

    def valences(self):
        return sorted(sum(1 for x in row if x == -1) for row in self.cartan_matrix)


def _ad_matrix(tri: TriAlgebra, coords: dict):
    """ad(x) in tri-basis coordinates for x given by coordinates."""
    d = tri.dim
    cols = []
    for b in range(d):
        acc = {}
        for a, ca in coords.items():
            row = tri.lie.mul.get((a, b), {})
            for k, c in row.items():
                t = acc.get(k)
                t2 = ca * c if t is None else t + ca * c
                if t2.is_zero():
                    acc.pop(k, None)
                else:
                    acc[k] = t2
        cols.append(acc)
    return cols  # column k -> dict row -> scalar


def root_datum(tri: TriAlgebra, eigen_bound: int = 8) -> RootDatum:
    """Cartan subalgebra (preimage under the first projection of the
    diagonal skew maps in the distinguished basis), integer root system,
    deterministic simple roots and the Cartan matrix."""
    F = tri.field
    n = tri.S.dim
    # combinations whose first component is diagonal
    rows = []
    for p in range(n):
        for r in range(n):
            if p == r:
                continue
            row = {}
            for k, t in enumerate(tri.triples):
                c = t[0][p][r]
                if not c.is_zero():
                    row[k] = c
            if row:
                rows.append(row)
    cartan = null_space(F, tri.dim, rows)
    if len(cartan) != 4:
        raise TrialityError(f"Cartan candidate has dimension {len(cartan)}, expected 4")
    # normalize each basis vector by a root of unity so that ad-eigenvalues
    # are rational integers: tr(ad(s h)^2) = s^2 tr(ad h^2) must be a
    # positive rational, which pins s^2 among the powers of zeta
    normalized = []
    for h in cartan:
        ad = _ad_matrix(tri, h)
        t2 = F.zero
        for j in range(tri.dim):
            for i, c in ad[j].items():
                c2 = ad[i].get(j)
                if c2 is not None:
                    t2 = t2 + c * c2
        if t2.is_zero():
            raise TrialityError("Cartan candidate contains an ad-nilpotent vector")
        for k in range(F.conductor):
            s = F.zeta(k)
            probe = s * s * t2
            if probe.is_rational() and probe.rational_value() > 0:
                normalized.append({a: s * c for a, c in h.items()})
                break
        else:
            raise TrialityError("no root-of-unity rescaling makes ad-eigenvalues rational")
    cartan = normalized
    ads = [_ad_matrix(tri, h) for h in cartan]

    def restrict(ad_cols, space):
        """Matrix of ad on the span of `space` (list of coordinate dicts)."""
        ech = Echelon(F, tri.dim + len(space))
        for k, v in enumerate(space):
            vv = dict(v)
            vv[tri.dim + k] = F.one
            ech.insert(vv)
        mat = []
        for v in space:
            img = {}
            for a, ca in v.items():
                for k, c in ad_cols[a].items():
                    t = img.get(k)
                    t2 = ca * c if t is None else t + ca * c
                    if t2.is_zero():
                        img.pop(k, None)
                    else:
                        img[k] = t2
            red = ech.reduce(img)
            col = {}
            for idx, c in red.items():
                if idx < tri.dim:
                    raise TrialityError("adjoint action leaves the subspace")
                col[idx - tri.dim] = -c
            mat.append(col)
        return mat  # column j -> dict i -> scalar

    spaces = [([{k: F.one} for k in range(tri.dim)], [])]

    def _split(space, labels, ad_cols):
        mat = restrict(ad_cols, space)
        dim = len(space)
        out = []
        found = 0
        for lam in range(-eigen_bound, eigen_bound + 1):
            lam_s = F.scalar(lam)
            rows2 = []
            for i in range(dim):
                row = {}
                for j in range(dim):
                    c = mat[j].get(i)
                    if c is not None:
                        row[j] = c
                t = row.get(i, F.zero) - lam_s
                if t.is_zero():
                    row.pop(i, None)
                else:
                    row[i] = t
                if row:
                    rows2.append(row)
            ker = null_space(F, dim, rows2)
            if not ker:
                continue
            vecs = []
            for kv in ker:
                acc = {}
                for j, c in kv.items():
                    for idx, s in space[j].items():
                        t = acc.get(idx)
                        t2 = c * s if t is None else t + c * s
                        if t2.is_zero():
                            acc.pop(idx, None)
                        else:
                            acc[idx] = t2
                vecs.append(acc)
            found += len(vecs)
            out.append((vecs, labels + [lam]))
        if found != dim:
            raise TrialityError("non-integral eigenvalues: wrong Cartan choice")
        return out

    for ad_cols in ads:
        new_spaces = []
        for space, labels in spaces:
            new_spaces.extend(_split(space, labels, ad_cols))
        spaces = new_spaces

    roots = []
    cartan_space = None
    for space, labels in spaces:
        if all(x == 0 for x in labels):
            cartan_space = space
            continue
        if len(space) != 1:
            raise TrialityError("root space of dimension > 1")
        roots.append(tuple(labels))
    if cartan_space is None or len(cartan_space) != 4 or len(roots) != 24:
        raise TrialityError(f"expected 4 + 24 decomposition, got {len(roots)} roots")
    # Killing form on the Cartan from the roots; exact rational arithmetic
    K = [[Fraction(sum(r[a] * r[b] for r in roots)) for b in range(4)] for a in range(4)]
    Kinv = _frac_inverse(K)

    def pair(al, be):
        v = [sum(Kinv[i][j] * be[j] for j in range(4)) for i in range(4)]
        return sum(al[i] * v[i] for i in range(4))

    pos = [r for r in roots if r > (0, 0, 0, 0)]
    pset = set(pos)
    simple = [r for r in pos if not any((tuple(x - y for x, y in zip(r, q)) in pset) for q in pos if q != r)]
    simple.sort()
    if len(simple) != 4:
        raise TrialityError(f"found {len(simple)} simple roots")
    cmat = []
    for al in simple:
        row = []
        for be in simple:
            v = 2 * pair(al, be) / pair(be, be)
            if v.denominator != 1:
                raise TrialityError("non-integral Cartan matrix entry")
            row.append(int(v))
        cmat.append(row)
    return RootDatum(cartan, roots, simple, cmat)


def _frac_inverse(M):
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def is_d4_cartan_matrix(cmat) -> bool:
    """Diagonal 2, off-diagonal 0/-1, exactly one valence-3 node and three
    valence-1 nodes."""
    if any(cmat[i][i] != 2 for i in range(4)):
        return False
    for i in range(4):
        for j in range(4):
            if i != j and cmat[i][j] not in (0, -1):
                return False
            if cmat[i][j] != cmat[j][i]:
                return False
    valences = sorted(sum(1 for j in range(4) if i != j and cmat[i][j] == -1) for i in range(4))
    return valences == [1, 1, 1, 3]


def killing_form_nondegenerate(tri: TriAlgebra) -> bool:
    F = tri.field
    d = tri.dim
    ads = []
    for k in range(d):
        ads.append(_ad_matrix(tri, {k: F.one}))
    gram = []
    for a in range(d):
        row = []
        for b in range(d):
            s = F.zero
            for j in range(d):
                col_b = ads[b][j]
                for i, c in col_b.items():
                    c2 = ads[a][i].get(j)
                    if c2 is not None:
                        s = s + c * c2
            row.append(s)
        gram.append(row)
    from .linalg import det_dense

    return not det_dense(F, gram).is_zero()


# ------------------------------------------- induced gradings on tri(S)


def delta_decompose(V, triple):
    """Write a block triple (d1, d2, d3) as d = sum_k delta_k (x) xi^k via
    the discrete Fourier transform over the three components of L."""
    F = V.field
    w = F.omega
    third = F.scalar(1, 3)
    winv = [F.one, w * w, w]  # omega^(-k)
    n = V.S.dim
    deltas = []
    for k in range(3):
        fac = [third, third * winv[k], third * winv[(2 * k) % 3]]
        M = [[fac[0] * triple[0][i][j] + fac[1] * triple[1][i][j] + fac[2] * triple[2][i][j] for j in range(n)] for i in range(n)]
        deltas.append(M)
    return deltas


def delta_recompose(V, deltas):
    F = V.field
    w = F.omega
    wp = [F.one, w, w * w]
    n = V.S.dim
    mats = []
    for comp in range(3):
        fac = [F.one, wp[comp], wp[(2 * comp) % 3]]
        M = [[fac[0] * deltas[0][i][j] + fac[1] * deltas[1][i][j] + fac[2] * deltas[2][i][j] for j in range(n)] for i in range(n)]
        mats.append(M)
    return tuple(mats)


def _flatten_deltas(V, deltas):
    n = V.S.dim
    out = {}
    for k, M in enumerate(deltas):
        for p in range(n):
            for r in range(n):
                c = M[p][r]
                if not c.is_zero():
                    out[k * n * n + p * n + r] = c
    return out


def induce_tri_grading(grading: Grading, tri: TriAlgebra):
    """The grading tri_g = {d : d(V_a) <= V_(g a)} induced by a verified
    basis-aligned grading on V.  Returns (Grading on the adapted Lie
    algebra, adapted basis as a list of (degree, triple)).

    Every homogeneous piece of every basis derivation is verified to lie in
    tri(S) again, and the piece dimensions must sum to 28.
    """
    V = grading.structure
    if not grading.verified:
        raise TrialityError("verify the grading before inducing")
    F = V.field
    n = V.S.dim
    G = grading.group
    h = grading.degrees["L"][1]
    pdeg = [grading.degrees["V"][V.idx(p, 0)] for p in range(n)]

    def e_deg(p, r, k):
        return (pdeg[p] - pdeg[r] + k * h).canonical()

    buckets = {}
    for t in tri.triples:
        deltas = delta_decompose(V, t)
        pieces = {}
        for k, M in enumerate(deltas):
            for p in range(n):
                for r in range(n):
                    c = M[p][r]
                    if c.is_zero():
                        continue
                    g = e_deg(p, r, k)
                    piece = pieces.setdefault(g, [mat_zero(F, n) for _ in range(3)])
                    piece[k][p][r] = c
        for g, deltas_piece in pieces.items():
            trip = delta_recompose(V, deltas_piece)
            if not tri.contains(trip):
                raise TrialityError("homogeneous piece leaves tri(S); invalid input grading")
            buckets.setdefault(g, []).append(trip)

    adapted = []
    total = 0
    for g in sorted(buckets):
        ech = Echelon(F, 3 * n * n)
        reps = []
        for trip in buckets[g]:
            flat = _flatten_deltas(V, delta_decompose(V, trip))
            if ech.insert(dict(flat)):
                reps.append(trip)
        total += ech.rank
        # use echelon rows for a canonical homogeneous basis
        for row in ech.basis():
            deltas = [mat_zero(F, n) for _ in range(3)]
            for idx, c in row.items():
                k, rem = divmod(idx, n * n)
                p, r = divmod(rem, n)
                deltas[k][p][r] = c
            adapted.append((G.element(g), delta_recompose(V, deltas)))
    if total != 28:
        raise TrialityError(f"induced components span {total} dimensions, expected 28")

    # bracket structure constants on the adapted basis
    exp = Echelon(F, 3 * n * n + 28)
    for k, (_g, trip) in enumerate(adapted):
        vec = _flatten_deltas(V, delta_decompose(V, trip))
        vec[3 * n * n + k] = F.one
        exp.insert(vec)

    def expand(trip):
        red = exp.reduce(_flatten_deltas(V, delta_decompose(V, trip)))
        out = {}
        for col, c in red.items():
            if col < 3 * n * n:
                raise TrialityError("bracket leaves the adapted span")
            out[col - 3 * n * n] = -c
        return out

    mul = {}
    for a, (_ga, ta) in enumerate(adapted):
        for b, (_gb, tb) in enumerate(adapted):
            if a == b:
                continue
            coords = expand(tri.bracket(ta, tb))
            if coords:
                mul[(a, b)] = coords
    lie = StructAlgebra(F, [f"d{k}" for k in range(28)], mul, "lie")
    out = Grading(lie, G, {"A": [g for g, _t in adapted]})
    rep = verify_grading(out)
    if not rep.ok:
        raise TrialityError(f"induced tri grading failed to verify: {rep.violations[:3]}")
    return out, adapted


def graded_module_check(grading: Grading, adapted) -> bool:
    """tri_g . V_a <= V_(g a), checked exactly for every adapted basis
    derivation and every basis vector of V."""
    V = grading.structure
    comps = grading.components("V")
    spans = {}
    for g, idxs in comps.items():
        ech = Echelon(V.field, V.dim)
        for i in idxs:
            ech.insert(V.basis_vec(i))
        spans[g] = ech
    e_can = grading.group.identity().canonical()
    for g, trip in adapted:
        deltas = delta_decompose(V, trip)
        for i in range(V.dim):
            p, c = V.split(i)
            img = {}
            for k in range(3):
                for q in range(V.S.dim):
                    co = deltas[k][q][p]
                    if not co.is_zero():
                        key = V.idx(q, c + k)
                        img[key] = img.get(key, V.field.zero) + co
            img = {kk: vv for kk, vv in img.items() if not vv.is_zero()}
            if not img:
                continue
            target = (g + grading.degrees["V"][i]).canonical()
            ech = spans.get(target)
            if ech is None or not ech.contains(img):
                return False
    return True


# ----------------------------------------------------------- center orbit


def center_elements(L):
    """The four elements (e1, e2, e3) with entries +-1 and product 1, in
    xi-coordinates (the center of the spin group inside L)."""
    F = L.field
    one = F.one
    out = []
    for signs in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        comps = [F.scalar(s) for s in signs]
        idem = L.idempotents()
        acc = L.zero
        for c, e in zip(comps, idem):
            acc = L.add(acc, L.smul(c, e))
        out.append(acc)
    return out


def component_spans(grading: Grading, l_elt=None):
    """The component subspaces of the grading, moved by multiplication with
    l_elt when given: {canonical degree: Echelon of l . V_g}."""
    V = grading.structure
    spans = {}
    for g, idxs in grading.components("V").items():
        ech = Echelon(V.field, V.dim)
        for i in idxs:
            v = V.basis_vec(i)
            if l_elt is not None:
                v = V.act(l_elt, v)
            ech.insert(v)
        spans[g] = ech
    return spans


def e_degree_map(grading: Grading, spans):
    """Degree of every L-linear elementary operator (p, r, k) with respect
    to a component decomposition of V, computed by exact membership: the
    operator maps each component into exactly one component, with a shift
    independent of the component.  Raises if no consistent shift exists."""
    V = grading.structure
    G = grading.group
    n = V.S.dim
    h = grading.degrees["L"][1]
    pdeg = [grading.degrees["V"][V.idx(p, 0)] for p in range(n)]
    out = {}
    span_list = list(spans.items())
    for p in range(n):
        for r in range(n):
            for k in range(3):
                guess = (pdeg[p] - pdeg[r] + k * h).canonical()
                shift = None
                for g, ech in span_list:
                    img_vecs = []
                    for row in ech.basis():
                        img = {}
                        for i, c in row.items():
                            q, col = V.split(i)
                            if q == r:
                                key = V.idx(p, col + k)
                                img[key] = img.get(key, V.field.zero) + c
                        img = {kk: vv for kk, vv in img.items() if not vv.is_zero()}
                        if img:
                            img_vecs.append(img)
                    if not img_vecs:
                        continue
                    expected = (G.element(guess) + G.element(g)).canonical()
                    target = spans.get(expected)
                    if target is None or not all(target.contains(v) for v in img_vecs):
                        # fall back to scanning every component
                        target_g = None
                        for g2, ech2 in span_list:
                            if all(ech2.contains(v) for v in img_vecs):
                                target_g = g2
                                break
                        if target_g is None:
                            raise TrialityError(f"operator ({p},{r},{k}) is not homogeneous")
                        found = (G.element(target_g) - G.element(g)).canonical()
                    else:
                        found = guess
                    if shift is None:
                        shift = found
                    elif shift != found:
                        raise TrialityError(f"operator ({p},{r},{k}) has inconsistent degree")
                out[(p, r, k)] = shift if shift is not None else guess
    return out


def center_orbit(grading: Grading, tri: TriAlgebra):
    """The orbit of a Type III grading under the center C: the four
    regradings l . Gamma (components l V_g), pairwise distinct on V, all
    inducing the identical degree assignment on the elementary operators of
    End_L(V) and hence on tri.

    Returns a list of four dicts with keys 'l', 'spans', 'e_degrees',
    'tri_components'.
    """
    V = grading.structure
    F = V.field
    L = V.L
    n = V.S.dim
    results = []
    for l_elt in center_elements(L):
        # multiplication by an element of C is a graded automorphism of the
        # algebra structure: (l x) * (l y) = l (x * y), Q(l x) = Q(x)
        for i in range(V.dim):
            for j in range(V.dim):
                lhs = V.product(V.act(l_elt, V.basis_vec(i)), V.act(l_elt, V.basis_vec(j)))
                rhs = V.act(l_elt, V.product(V.basis_vec(i), V.basis_vec(j)))
                if lhs != rhs:
                    raise TrialityError("center element is not an automorphism")
        spans = component_spans(grading, l_elt)
        e_deg = e_degree_map(grading, spans)
        buckets = {}
        for t in tri.triples:
            deltas = delta_decompose(V, t)
            pieces = {}
            for k, M in enumerate(deltas):
                for p in range(n):
                    for r in range(n):
                        c = M[p][r]
                        if c.is_zero():
                            continue
                        g = e_deg[(p, r, k)]
                        piece = pieces.setdefault(g, [mat_zero(F, n) for _ in range(3)])
                        piece[k][p][r] = c
            for g, dp in pieces.items():
                trip = delta_recompose(V, dp)
                if not tri.contains(trip):
                    raise TrialityError("center-orbit piece leaves tri(S)")
                buckets.setdefault(g, []).append(trip)
        tri_comps = {}
        for g, trips in buckets.items():
            ech = Echelon(F, 3 * n * n)
            for trip in trips:
                ech.insert(_flatten_deltas(V, delta_decompose(V, trip)))
            tri_comps[g] = ech.canonical()
        results.append({"l": l_elt, "spans": spans, "e_degrees": e_deg, "tri_components": tri_comps})
    return results


def orbit_pairwise_distinct(results) -> bool:
    """Every pair of orbit gradings differs as a decomposition of V."""
    canon = []
    for r in results:
        canon.append({g: ech.canonical() for g, ech in r["spans"].items()})
    for a in range(len(canon)):
        for b in range(a + 1, len(canon)):
            if canon[a] == canon[b]:
                return False
    return True


def orbit_induces_identical(results) -> bool:
    """All orbit members induce the same degrees on elementary operators of
    End_L(V) and the same component decomposition of tri."""
    base_e = results[0]["e_degrees"]
    base_t = results[0]["tri_components"]
    return all(r["e_degrees"] == base_e and r["tri_components"] == base_t for r in results[1:])
