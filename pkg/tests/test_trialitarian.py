import random

import pytest

from triality.fgab import GroupHom, make_group, quotient
from triality.grading import Grading, coarsen, verify_grading
from triality.trialitarian import (
    alpha_involution_compatible,
    alpha_multiplicative_sample,
    clifford_center_dimension,
    detect_type,
    e_grading_kappa_alpha_compatible,
    induce_E_grading,
    lie_of_E,
    lie_of_E_equals_der,
)
from triality.trilie import der_cyclic
from triality.classify import build, params_r8, fine_typeIII


def test_dimensions(trial_zorn):
    assert trial_zorn["E"].dim == 192
    assert trial_zorn["Cl"].dim == 384
    assert len(trial_zorn["Cl"].masks) == 128


def test_sigma_identity(trial_zorn):
    E = trial_zorn["E"]
    unit = E.unit()
    assert E.sigma(unit) == unit


def test_clifford_center(mod, trial_zorn):
    assert clifford_center_dimension(mod["V_zorn"], trial_zorn["Cl"]) == 6


def test_clifford_associativity(trial_zorn):
    Cl = trial_zorn["Cl"]
    F = Cl.field
    low = [m for m in Cl.masks if bin(m).count("1") <= 2]
    for m1 in low[:12]:
        for m2 in low[:12]:
            for m3 in low[:12]:
                a, b, c = Cl.basis_vec(m1), Cl.basis_vec(m2), Cl.basis_vec(m3)
                assert Cl.product(Cl.product(a, b), c) == Cl.product(a, Cl.product(b, c))
    rng = random.Random(0)
    for _ in range(100):
        ms = [rng.choice(Cl.masks) for _ in range(3)]
        ks = [rng.randrange(3) for _ in range(3)]
        a, b, c = (Cl.basis_vec(m, k) for m, k in zip(ms, ks))
        assert Cl.product(Cl.product(a, b), c) == Cl.product(a, Cl.product(b, c))


def test_kappa_on_phi_xx(mod, trial_zorn):
    # kappa(phi_{x,x}) = x.x = Q(x) inside the Clifford algebra
    V = mod["V_zorn"]
    E, Cl, km = trial_zorn["E"], trial_zorn["Cl"], trial_zorn["kappa"]
    for i in range(0, V.dim, 5):
        p, a = V.split(i)
        phi = {}
        for r in range(8):
            c = V.S.forms["n"].get((p, r))
            if c is not None:
                phi[E.index[(p, r, (2 * a) % 3)]] = c
        got = km(phi)
        x = Cl.vector(V.basis_vec(i))
        assert got == Cl.odd_product(x, x)


def test_kappa_not_multiplicative(mod, trial_zorn):
    # kappa is L-linear but not an algebra map: exhibit a witness pair
    E, km = trial_zorn["E"], trial_zorn["kappa"]
    Cl = trial_zorn["Cl"]
    found = False
    for i in range(0, E.dim, 11):
        for j in range(0, E.dim, 13):
            a, b = E.basis_vec(i), E.basis_vec(j)
            ab = E.product(a, b)
            if km(ab) != Cl.product(km(a), km(b)):
                found = True
                break
        if found:
            break
    assert found


def test_alpha_certificates(trial_zorn):
    am = trial_zorn["alpha"]
    assert alpha_multiplicative_sample(am, seed=1, count=80)
    assert alpha_involution_compatible(am)


def test_alpha_on_squares(mod, trial_zorn):
    # alpha(x.x) = (rho(Q(x)) id, rho2(Q(x)) id) through the twisted
    # L-structures
    V = mod["V_zorn"]
    E, Cl, am = trial_zorn["E"], trial_zorn["Cl"], trial_zorn["alpha"]
    L = V.L
    for i in range(0, V.dim, 4):
        x = V.basis_vec(i)
        sq = Cl.odd_product(Cl.vector(x), Cl.vector(x))
        a1, a2 = am(sq)
        q = V.quadratic(x)
        assert a1 == E.central_scalar(L.rho(q, 1))
        assert a2 == E.central_scalar(L.rho(q, 2))


def test_lie_of_E(mod, trial_zorn):
    V = mod["V_zorn"]
    lie = lie_of_E(V, trial_zorn["E"], trial_zorn["Cl"], trial_zorn["kappa"], trial_zorn["alpha"])
    assert len(lie) == 28
    assert lie_of_E_equals_der(V, trial_zorn["E"], lie, der_cyclic(V))


def test_induced_E_grading_and_type(fines, trial_zorn):
    built = fines["cartan"]["built"]
    E = trial_zorn["E"]
    gE = induce_E_grading(built.grading, E)
    assert gE.verified
    ty, h = detect_type(gE)
    assert ty == "III" and h == built.params.h
    assert h.order() == 3
    # kappa and alpha preserve the degrees
    assert e_grading_kappa_alpha_compatible(
        built.grading, gE, E, trial_zorn["Cl"], trial_zorn["kappa"], trial_zorn["alpha"]
    )
    # center components are F, F xi, F xi^2
    G = built.params.group
    Q, pr = quotient(G, [built.params.h])
    gE_coarse = coarsen(gE, pr)
    ty2, _ = detect_type(gE_coarse)
    assert ty2 == "I"


def test_trivial_grading_detects_type_I(mod, trial_zorn):
    G = make_group(0, [3])
    built = build(params_r8(G, G.element((1,)), "p"))
    T = make_group(0, [])
    gr = coarsen(built.grading, GroupHom.zero(G, T))
    gE = induce_E_grading(gr, trial_zorn["E"])
    ty, _ = detect_type(gE)
    assert ty == "I"


def test_induce_coarsen_functorial(fines, trial_zorn):
    built = fines["cartan"]["built"]
    E = trial_zorn["E"]
    G = built.params.group
    Q, pr = quotient(G, [built.params.h])
    a = coarsen(induce_E_grading(built.grading, E), pr)
    b = induce_E_grading(coarsen(built.grading, pr), E)
    assert a.degree_map_equal(b)


def test_center_orbit_same_E_grading(fines, tri_okubo):
    # the four orbit gradings share the degree map on elementary operators
    from triality.trilie import center_orbit

    built = fines["okubo"]["built"]
    orbit = center_orbit(built.grading, tri_okubo)
    base = orbit[0]["e_degrees"]
    assert all(r["e_degrees"] == base for r in orbit)
