import pytest

from triality.scalars import default_field
from triality.classify import models, fine_typeIII


@pytest.fixture(scope="session")
def field():
    return default_field()


@pytest.fixture(scope="session")
def mod():
    return models(12)


@pytest.fixture(scope="session")
def tri_zorn(mod):
    from triality.trilie import tri_basis

    return tri_basis(mod["para_zorn"])


@pytest.fixture(scope="session")
def tri_okubo(mod):
    from triality.trilie import tri_basis

    return tri_basis(mod["okubo"])


@pytest.fixture(scope="session")
def trial_zorn(mod):
    """E, Cl, kappa, alpha for the para-Cayley triple model."""
    from triality.trialitarian import alpha, clifford_even, end_algebra, kappa

    V = mod["V_zorn"]
    E = end_algebra(V)
    Cl = clifford_even(V)
    km = kappa(V, E, Cl)
    am = alpha(V, E, Cl)
    return {"V": V, "E": E, "Cl": Cl, "kappa": km, "alpha": am}


@pytest.fixture(scope="session")
def fines():
    return {kind: fine_typeIII(kind) for kind in ("cartan", "z2cubed", "okubo")}


@pytest.fixture(scope="session")
def cyclic_axiom_reports(mod):
    from triality.cyclic import opposite, verify_cyclic_axioms

    return {
        "zorn": verify_cyclic_axioms(mod["V_zorn"]),
        "okubo": verify_cyclic_axioms(mod["V_okubo"]),
        "zorn_op": verify_cyclic_axioms(opposite(mod["V_zorn"])),
    }
