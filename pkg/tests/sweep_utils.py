"""Shared parameter enumeration for the similarity sweeps."""

import itertools

from triality.classify import params_r0, params_r1, params_r2, params_r4, params_r8
from triality.fgab import make_group, subgroup_elements

G333 = make_group(0, [3, 3, 3])
G2223 = make_group(0, [2, 2, 2, 3])


def order3_elements(G):
    return [g for g in G.elements() if g.order() == 3]


def z3sq_subgroups(G):
    """All subgroups isomorphic to Z3^2, as frozensets with a generator pair."""
    seen = {}
    els = order3_elements(G)
    for a, b in itertools.combinations(els, 2):
        if any((b - m * a).canonical() == G.identity().canonical() for m in range(3)):
            continue
        key = subgroup_elements([a, b])
        if len(key) == 9 and key not in seen:
            seen[key] = (a, b)
    return seen


def enumerate_tuples():
    """Deterministic parameter enumeration over Z3^3 and Z2^3 x Z3."""
    out = {}
    els3 = order3_elements(G333)
    subs = z3sq_subgroups(G333)
    h_sample = els3[:6]
    r0 = []
    for key, (a, b) in sorted(subs.items(), key=lambda kv: sorted(kv[0])):
        hs = [h for h in els3 if h.canonical() not in key]
        for h in hs[:4]:
            for pair in ((a, b), (b, a)):
                for delta in "+-":
                    r0.append(params_r0(G333, pair[0], pair[1], h, delta))
    out[(G333, 0)] = r0
    r2 = []
    for h in h_sample:
        hspan = subgroup_elements([h])
        candidates = [g for g in G333.elements() if g.canonical() not in hspan]
        for g1 in candidates[:8]:
            for g2 in candidates[:8]:
                g3 = -(g1 + g2)
                if g3.canonical() in hspan:
                    continue
                r2.append(params_r2(G333, (g1, g2, g3), h))
    out[(G333, 2)] = r2
    out[(G333, 4)] = [
        params_r4(G333, g, h)
        for h in h_sample
        for g in G333.elements()
        if g.canonical() not in subgroup_elements([h])
    ]
    out[(G333, 8)] = [params_r8(G333, h, t) for h in els3 for t in "po"]

    els3b = order3_elements(G2223)
    K = [G2223.element((1, 0, 0)), G2223.element((0, 1, 0)), G2223.element((0, 0, 3))]
    out[(G2223, 1)] = [params_r1(G2223, K, h) for h in els3b]
    r2b = []
    for h in els3b:
        hspan = subgroup_elements([h])
        candidates = [g for g in G2223.elements() if g.canonical() not in hspan]
        for g1 in candidates[:11]:
            for g2 in candidates[:11]:
                g3 = -(g1 + g2)
                if g3.canonical() in hspan:
                    continue
                r2b.append(params_r2(G2223, (g1, g2, g3), h))
    out[(G2223, 2)] = r2b
    out[(G2223, 4)] = [
        params_r4(G2223, g, h)
        for h in els3b
        for g in G2223.elements()
        if g.canonical() not in subgroup_elements([h])
    ]
    out[(G2223, 8)] = [params_r8(G2223, h, t) for h in els3b for t in "po"]
    return out
