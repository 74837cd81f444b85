"""Exact sparse linear algebra over a cyclotomic field.

Vectors are dicts {column index: CycloScalar}; a matrix is a list of such
rows.  Everything is deterministic: pivots are chosen as the smallest column
index, rows are processed in the order given.
"""

from __future__ import annotations


class Echelon:
    """Incremental reduced row echelon form over a field."""

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows = {}  # pivot col -> normalized row dict

    def reduce(self, vec: dict) -> dict:
        """Fully reduce vec against the current echelon (returns a new dict).

        Pivot columns are processed smallest first; eliminating one can only
        introduce entries in larger columns, and RREF keeps pivot columns
        clear of each other, so this terminates with every pivot removed.
        """
        v = {j: c for j, c in vec.items() if not c.is_zero()}
        while True:
            piv_cols = [c for c in v if c in self.rows]
            if not piv_cols:
                return v
            col = min(piv_cols)
            c = v.pop(col)
            for j, r in self.rows[col].items():
                if j == col:
                    continue
                t = v.get(j)
                t = -(c * r) if t is None else t - c * r
                if t.is_zero():
                    v.pop(j, None)
                else:
                    v[j] = t

    def insert(self, vec: dict) -> bool:
        """Reduce and insert; returns True if the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        inv = v[piv].inverse()
        v = {j: c * inv for j, c in v.items()}
        for p, row in self.rows.items():
            c = row.get(piv)
            if c is not None:
                for j, r in v.items():
                    t = row.get(j)
                    t = -(c * r) if t is None else t - c * r
                    if t.is_zero():
                        row.pop(j, None)
                    else:
                        row[j] = t
        self.rows[piv] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis(self):
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def canonical(self):
        """Hashable canonical form of the row span."""
        out = []
        for p in sorted(self.rows):
            row = self.rows[p]
            out.append(tuple((j, row[j].coeffs) for j in sorted(row)))
        return tuple(out)


def echelon_from(field, ncols, vectors) -> Echelon:
    ech = Echelon(field, ncols)
    for v in vectors:
        ech.insert(v)
    return ech


def rank(field, ncols, rows) -> int:
    return echelon_from(field, ncols, rows).rank


def span_equal(field, ncols, vecs_a, vecs_b) -> bool:
    ea = echelon_from(field, ncols, vecs_a)
    eb = echelon_from(field, ncols, vecs_b)
    return ea.canonical() == eb.canonical()


def null_space(field, ncols, rows) -> list:
    """Basis of {x : row . x = 0 for every row}, deterministic order."""
    ech = Echelon(field, ncols)
    for r in rows:
        ech.insert(r)
    pivots = set(ech.rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = {f: field.one}
        for p, row in ech.rows.items():
            c = row.get(f)
            if c is not None:
                v[p] = -c
        basis.append(v)
    return basis


def solve(field, ncols, rows, rhs):
    """One solution x of the inhomogeneous system rows . x = rhs, or None.

    rows is a list of equation dicts, rhs a list of scalars (same length).
    """
    ech = Echelon(field, ncols + 1)
    for r, b in zip(rows, rhs):
        v = dict(r)
        if not b.is_zero():
            v[ncols] = b
        ech.insert(v)
    if ncols in ech.rows:
        return None  # inconsistent: a pivot in the rhs column
    x = {}
    for p, row in ech.rows.items():
        c = row.get(ncols)
        if c is not None:
            x[p] = -c
    return x


def invert_dense(field, mat):
    """Exact inverse of a small dense matrix (list of lists of scalars)."""
    n = len(mat)
    zero, one = field.zero, field.one
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ArithmeticError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def det_dense(field, mat):
    """Exact determinant via fraction-free-ish Gaussian elimination."""
    n = len(mat)
    a = [list(row) for row in mat]
    det = field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return field.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, n):
            if not a[r][col].is_zero():
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def mat_vec(mat_cols, vec: dict) -> dict:
    """Apply a sparse column-map {j: {i: c}} to a sparse vector."""
    out = {}
    for j, a in vec.items():
        col = mat_cols.get(j)
        if not col:
            continue
        for i, c in col.items():
            t = out.get(i)
            t = a * c if t is None else t + a * c
            if t.is_zero():
                out.pop(i, None)
            else:
                out[i] = t
    return out


def compose_cols(f_cols, g_cols) -> dict:
    """Column map of f o g (apply g first)."""
    return {j: mat_vec(f_cols, col) for j, col in g_cols.items() if col}
