"""Generic grading engine.

A grading assigns a group degree to every distinguished basis element of a
structure.  Structures expose their multiplication, bilinear forms, module
actions and involutions uniformly as sparse *structure maps*; verification
then reduces to one exact rule: for every nonzero entry of every map, the
output degree must equal the product of the input degrees (and the identity
degree for scalar-valued forms).  No tolerances anywhere -- a grading passes
iff every would-be violation is the exact zero scalar.

Multi-sorted structures (a module over a graded ring, a form with values in
a graded algebra) fit the same rule by giving each sort its own degree map.
The scalar sort "F" is implicit and always sits in degree e.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fgab import AbGroup, GroupElem, GroupHom, _cokernel


SCALAR_SORT = "F"


@dataclass
class SMap:
    """A sparse multilinear structure map between sorts.

    table maps input basis-index tuples to {output basis index: scalar};
    for scalar-valued maps the output index is always 0.
    """

    name: str
    inputs: tuple
    output: str
    table: dict

    def entries(self):
        for key, outs in self.table.items():
            for out_idx, c in outs.items():
                if not c.is_zero():
                    yield key, out_idx, c


class StructAlgebra:
    """A finite-dimensional algebra given by structure constants.

    Optional data: scalar-valued symmetric bilinear forms, an involution,
    a unit vector.  The sort tag names which law set applies (associative,
    lie, jordan, composition); the sort verifiers live with the modules
    that construct the algebras.
    """

    def __init__(self, field, labels, mul, sort, forms=None, involution=None, unit=None):
        self.field = field
        self.labels = list(labels)
        self.mul = mul  # dict (i, j) -> dict k -> scalar
        self.sort = sort
        self.forms = forms or {}
        self.involution = involution  # dict i -> dict j -> scalar, or None
        self.unit = unit  # dict i -> scalar, or None
        self.main_sort = "A"

    @property
    def dim(self):
        return len(self.labels)

    # -- vector arithmetic on sparse {index: scalar} dicts

    def vec(self, pairs):
        return {i: c for i, c in pairs if not c.is_zero()}

    def basis_vec(self, i):
        return {i: self.field.one}

    def add(self, x, y):
        out = dict(x)
        for i, c in y.items():
            s = out.get(i)
            out[i] = c if s is None else s + c
            if out[i].is_zero():
                del out[i]
        return out

    def scale(self, c, x):
        if c.is_zero():
            return {}
        return {i: c * v for i, v in x.items()}

    def product(self, x, y):
        out = {}
        mul = self.mul
        for i, a in x.items():
            for j, b in y.items():
                row = mul.get((i, j))
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

    def form_value(self, name, x, y):
        tab = self.forms[name]
        total = self.field.zero
        for i, a in x.items():
            for j, b in y.items():
                c = tab.get((i, j))
                if c is not None:
                    total = total + a * b * c
        return total

    def conj(self, x):
        out = {}
        for i, a in x.items():
            for j, c in self.involution[i].items():
                s = out.get(j)
                t = a * c if s is None else s + a * c
                if t.is_zero():
                    out.pop(j, None)
                else:
                    out[j] = t
        return out

    # -- grading protocol

    def grading_sorts(self):
        return {"A": self.dim}

    def grading_maps(self):
        maps = [SMap("mul", ("A", "A"), "A", self.mul)]
        for name, tab in self.forms.items():
            maps.append(SMap(f"form:{name}", ("A", "A"), SCALAR_SORT, {k: {0: c} for k, c in tab.items()}))
        if self.involution is not None:
            maps.append(SMap("involution", ("A",), "A", {(i,): row for i, row in self.involution.items()}))
        return maps


@dataclass
class GradingReport:
    ok: bool
    violations: list
    checked: int = 0

    def __bool__(self):
        return self.ok


class Grading:
    """A degree assignment on the distinguished bases of a structure."""

    def __init__(self, structure, group: AbGroup, degrees: dict):
        self.structure = structure
        self.group = group
        self.degrees = {s: tuple(ds) for s, ds in degrees.items()}
        sorts = structure.grading_sorts()
        if set(self.degrees) != set(sorts):
            raise ValueError(f"degree maps must cover the sorts {sorted(sorts)}")
        for s, n in sorts.items():
            if len(self.degrees[s]) != n:
                raise ValueError(f"sort {s} needs {n} degrees")
            for d in self.degrees[s]:
                if d.group != group:
                    raise ValueError("degree in the wrong group")
        self.verified = False

    def deg(self, sort, i) -> GroupElem:
        return self.degrees[sort][i]

    def main_degrees(self):
        return self.degrees[self.structure.main_sort]

    def components(self, sort=None) -> dict:
        """{canonical degree coords: sorted basis indices} for one sort."""
        sort = sort or self.structure.main_sort
        out = {}
        for i, d in enumerate(self.degrees[sort]):
            out.setdefault(d.canonical(), []).append(i)
        return out

    def support(self, sort=None):
        return sorted(self.components(sort))

    def identity_component(self, sort=None):
        return self.components(sort).get(self.group.identity().canonical(), [])

    def degree_map_equal(self, other) -> bool:
        if self.group != other.group or set(self.degrees) != set(other.degrees):
            return False
        for s in self.degrees:
            a, b = self.degrees[s], other.degrees[s]
            if len(a) != len(b) or any(x != y for x, y in zip(a, b)):
                return False
        return True

    def copy_with_degree(self, sort, index, new_deg):
        degs = {s: list(ds) for s, ds in self.degrees.items()}
        degs[sort][index] = new_deg
        return Grading(self.structure, self.group, degs)


def verify_grading(grading: Grading) -> GradingReport:
    """Exact check that every structure map is degree-compatible.

    For a product entry U_a x U_b -> U_c the rule is deg(c) = deg(a)+deg(b);
    scalar-valued forms require deg(a)+deg(b) = e; unary maps (involutions)
    must preserve the degree.  Violations are reported as
    (map name, input indices, output index, scalar repr).
    """
    G = grading.group
    e = G.identity()
    violations = []
    checked = 0
    for smap in grading.structure.grading_maps():
        in_degs = [grading.degrees[s] for s in smap.inputs]
        out_degs = None if smap.output == SCALAR_SORT else grading.degrees[smap.output]
        for key, out_idx, c in smap.entries():
            checked += 1
            total = in_degs[0][key[0]]
            for pos in range(1, len(key)):
                total = total + in_degs[pos][key[pos]]
            expected = e if out_degs is None else out_degs[out_idx]
            if total != expected:
                violations.append((smap.name, key, out_idx, repr(c)))
    report = GradingReport(not violations, violations, checked)
    grading.verified = report.ok
    return report


def coarsen(grading: Grading, hom: GroupHom) -> Grading:
    """Push the grading forward along a group homomorphism.

    The composition of a grading with a homomorphism is again a grading, so
    the verified flag carries over.
    """
    if hom.domain != grading.group:
        raise ValueError("homomorphism domain does not match the grading group")
    degs = {s: [hom(d) for d in ds] for s, ds in grading.degrees.items()}
    out = Grading(grading.structure, hom.codomain, degs)
    out.verified = grading.verified
    return out


@dataclass
class UniversalResult:
    group: AbGroup
    grading: Grading          # same structure, relabeled over the universal group
    to_original: GroupHom     # universal -> original, sending [s] to s
    degree_of: dict           # canonical original degree -> universal GroupElem


def universal_group(grading: Grading) -> UniversalResult:
    """The universal group of the grading: free abelian on the support of
    every graded sort modulo the relations s1*s2 = s3 collected from every
    nonzero structure map entry (products, module actions, algebra-valued
    forms; scalar forms force s1*s2 = e)."""
    if not grading.verified:
        raise ValueError("verify the grading before computing its universal group")
    G = grading.group
    e_can = G.identity().canonical()
    support = sorted({d.canonical() for ds in grading.degrees.values() for d in ds})
    index = {s: i for i, s in enumerate(support)}
    m = len(support)

    relations = set()
    for smap in grading.structure.grading_maps():
        in_degs = [grading.degrees[s] for s in smap.inputs]
        out_degs = None if smap.output == SCALAR_SORT else grading.degrees[smap.output]
        for key, out_idx, _c in smap.entries():
            vec = [0] * m
            for pos, i in enumerate(key):
                vec[index[in_degs[pos][i].canonical()]] += 1
            if out_degs is None:
                pass  # scalar output: relation says the sum of inputs is trivial
            else:
                vec[index[out_degs[out_idx].canonical()]] -= 1
            if any(vec):
                relations.add(tuple(vec))

    U, rows, lifts = _cokernel(m, [list(v) for v in relations], want_lifts=True)

    def u_elem(s_can):
        j = index[s_can]
        return U.element(tuple(row[j] for row in rows))

    degree_of = {s: u_elem(s) for s in support}
    degs = {s: [degree_of[d.canonical()] for d in ds] for s, ds in grading.degrees.items()}
    relabeled = Grading(grading.structure, U, degs)
    # universal -> original: generator j of U maps to the corresponding
    # integer combination of support elements of G
    cols = []
    for lift in lifts:
        coords = [0] * G.ndim
        for s_pos, mult in enumerate(lift):
            if mult:
                sc = support[s_pos]
                for a in range(G.ndim):
                    coords[a] += mult * sc[a]
        cols.append(coords)
    matrix = [[cols[j][a] for j in range(len(cols))] for a in range(G.ndim)]
    to_original = GroupHom(U, G, matrix)
    verify_grading(relabeled)
    if not relabeled.verified:
        raise AssertionError("universal relabeling failed to verify")
    return UniversalResult(U, relabeled, to_original, degree_of)


@dataclass
class GradingInvariants:
    support: list            # canonical degree tuples of the main sort
    type_vector: tuple       # n_i = number of main-sort components of dim i
    identity_dim: int
    universal: AbGroup

    def summary(self):
        return {
            "support_size": len(self.support),
            "type_vector": list(self.type_vector),
            "identity_dim": self.identity_dim,
            "universal": repr(self.universal),
        }


def invariants(grading: Grading) -> GradingInvariants:
    if not grading.verified:
        raise ValueError("verify the grading before computing invariants")
    comps = grading.components()
    dims = sorted(len(ix) for ix in comps.values())
    maxd = dims[-1] if dims else 0
    tv = tuple(sum(1 for d in dims if d == i) for i in range(1, maxd + 1))
    ident = len(grading.identity_component())
    uni = universal_group(grading).group
    return GradingInvariants(sorted(comps), tv, ident, uni)


def is_refinement(finer: Grading, coarser: Grading) -> bool:
    """True iff every component of `finer` is contained in a component of
    `coarser` (basis-aligned containment on the same structure)."""
    if finer.structure is not coarser.structure:
        raise ValueError("gradings live on different structures")
    for sort in finer.degrees:
        cdeg = coarser.degrees[sort]
        for _d, idxs in finer.components(sort).items():
            first = cdeg[idxs[0]].canonical()
            if any(cdeg[i].canonical() != first for i in idxs[1:]):
                return False
    return True
