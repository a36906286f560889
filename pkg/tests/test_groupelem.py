"""Group elements over the Heisenberg pair and the sl2 adjoint instance.

The one-parameter family g_t = (Ad = id, rhoV = exp(t rho(x))) over the
Heisenberg pair is the main fixture: kappa(g_t) sends x to 0 and y to t Z,
is additive in t, and integrates to the extension automorphism
(z, ax + by) -> (z + t b Z, ax + by).
"""

from fractions import Fraction as F

import pytest

from hamflux.errors import (
    CocycleInvarianceViolation,
    IntertwiningViolation,
    NotAutomorphism,
    NotInvertible,
    NotNilpotent,
    ValueOutsideInvariants,
)
from hamflux.groupelem import (
    adjoint_on_extension,
    affine_action,
    compose,
    exp_nilpotent,
    group_cocycle,
    group_cocycle_check,
    group_element,
    identity_element,
    inverse,
)
from hamflux.hamiltonian import analyze
from hamflux.liealg import AlgebraHom, LieAlgebra
from hamflux.linalg import Matrix
from hamflux.momentum import solve_momentum

from util import heis_pair_instance, heis3, sl2_adjoint_instance


@pytest.fixture(scope="module")
def heis():
    module, omega = heis_pair_instance()
    analysis = analyze(module, omega)
    zeta = AlgebraHom.identity(module.algebra)
    momentum, _ = solve_momentum(analysis, zeta)
    return analysis, zeta, momentum


def family(heis, t):
    analysis, zeta, _ = heis
    rho_v = exp_nilpotent(analysis.module.action_of((1, 0)), t)
    return group_element(analysis, zeta, Matrix.identity(2), rho_v, label=f"g_{t}")


def test_exp_nilpotent_basic():
    assert exp_nilpotent(Matrix.zeros(2, 2), 7) == Matrix.identity(2)
    assert exp_nilpotent(Matrix([[0, 1], [0, 0]]), 1) == Matrix([[1, 1], [0, 1]])


def test_exp_nilpotent_heis3_adjoint():
    hei = heis3()
    out = exp_nilpotent(hei.ad_matrix((1, 0, 0)), F(1, 2))
    # Y picks up Z/2, everything else is fixed
    assert out == Matrix([[1, 0, 0], [0, 1, 0], [0, F(1, 2), 1]])


def test_exp_nilpotent_rejects():
    with pytest.raises(NotNilpotent):
        exp_nilpotent(Matrix.identity(2), 1)
    with pytest.raises(NotNilpotent):
        exp_nilpotent(Matrix([[0, 1], [1, 0]]), 1)
    with pytest.raises(ValueError):
        exp_nilpotent(Matrix.zeros(2, 3), 1)


def test_family_cocycle_values(heis):
    _, _, momentum = heis
    g = family(heis, F(1, 3))
    K = group_cocycle(g, momentum)
    assert K == Matrix([[0, 0], [0, 0], [0, F(1, 3)]])


def test_identity_element(heis):
    analysis, zeta, momentum = heis
    e = identity_element(analysis, zeta)
    assert group_cocycle(e, momentum).is_zero()
    assert adjoint_on_extension(e, momentum) == Matrix.identity(3)


def test_cocycle_identity_and_additivity(heis):
    _, _, momentum = heis
    g1 = family(heis, F(2, 5))
    g2 = family(heis, F(-3, 7))
    assert group_cocycle_check(g1, g2, momentum)
    prod = compose(g1, g2)
    assert group_cocycle(prod, momentum) == group_cocycle(
        family(heis, F(2, 5) + F(-3, 7)), momentum
    )


def test_inverse_relation(heis):
    _, _, momentum = heis
    g = family(heis, F(5, 2))
    lhs = group_cocycle(g, momentum) * g.ad
    rhs = -1 * group_cocycle(inverse(g), momentum)
    assert lhs == rhs


def test_adjoint_on_extension_matrix(heis):
    _, _, momentum = heis
    t = F(4, 3)
    g = family(heis, t)
    out = adjoint_on_extension(g, momentum)
    # basis (z, x, y): y picks up t z, everything else fixed
    assert out == Matrix([[1, 0, t], [0, 1, 0], [0, 0, 1]])
    back = adjoint_on_extension(inverse(g), momentum)
    assert out * back == Matrix.identity(3)


def test_affine_action(heis):
    _, _, momentum = heis
    g = family(heis, F(1, 2))
    zero = Matrix.zeros(3, 2)
    assert affine_action(g, momentum, zero) == -1 * group_cocycle(g, momentum)
    alpha = Matrix([[0, 0], [0, 0], [1, 2]])
    g2 = family(heis, F(2, 3))
    lhs = affine_action(compose(g, g2), momentum, alpha)
    rhs = affine_action(g, momentum, affine_action(g2, momentum, alpha))
    assert lhs == rhs


def test_validation_rejects_singular_ad(heis):
    analysis, zeta, _ = heis
    with pytest.raises(NotAutomorphism):
        group_element(analysis, zeta, Matrix([[1, 0], [0, 0]]), Matrix.identity(3))


def test_validation_rejects_bracket_breaking_ad():
    module, omega = sl2_adjoint_instance()
    analysis = analyze(module, omega)
    zeta = AlgebraHom.identity(module.algebra)
    swap = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    with pytest.raises(NotAutomorphism):
        group_element(analysis, zeta, swap, Matrix.identity(3))


def test_validation_rejects_singular_rho(heis):
    analysis, zeta, _ = heis
    with pytest.raises(NotInvertible):
        group_element(analysis, zeta, Matrix.identity(2), Matrix.zeros(3, 3))


def test_validation_intertwining(heis):
    analysis, zeta, _ = heis
    bad = Matrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(IntertwiningViolation) as exc:
        group_element(analysis, zeta, Matrix.identity(2), bad)
    assert exc.value.index == 1


def test_validation_cocycle_invariance(heis):
    analysis, zeta, _ = heis
    with pytest.raises(CocycleInvarianceViolation) as exc:
        group_element(analysis, zeta, Matrix.identity(2), 2 * Matrix.identity(3))
    assert exc.value.indices == (0, 1)


def test_kappa_detects_bogus_rho():
    # restrict to g = span{x}: the omega_g check is vacuous and rhoV = diag(2,1,1)
    # commutes with rho(x), yet kappa(x) = X escapes the invariants span{Z}
    module, omega = heis_pair_instance()
    analysis = analyze(module, omega)
    g = LieAlgebra.abelian(1)
    zeta = AlgebraHom(g, module.algebra, Matrix([[1], [0]]))
    momentum, _ = solve_momentum(analysis, zeta)
    elem = group_element(
        analysis, zeta, Matrix.identity(1), Matrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    )
    with pytest.raises(ValueOutsideInvariants) as exc:
        group_cocycle(elem, momentum)
    assert exc.value.index == 0


def test_equivariant_instance_has_zero_cocycle():
    module, omega = sl2_adjoint_instance()
    analysis = analyze(module, omega)
    alg = module.algebra
    zeta = AlgebraHom.identity(alg)
    momentum, _ = solve_momentum(analysis, zeta)
    n = alg.ad_matrix((1, 0, 0))
    for t in (F(1), F(-2, 3)):
        w = exp_nilpotent(n, t)
        g = group_element(analysis, zeta, w, w, label=f"exp({t} ad e)")
        assert group_cocycle(g, momentum).is_zero()
        assert adjoint_on_extension(g, momentum) == w  # kernel is zero here
