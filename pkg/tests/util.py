"""Shared instance constructors for the test suite."""

from fractions import Fraction as F

from hamflux.liealg import LieAlgebra


def z3(*entries):
    v = [0, 0, 0]
    for i, x in entries:
        v[i] = x
    return tuple(F(x) for x in v)


def heis3():
    """Basis (X, Y, Z) with [X, Y] = Z."""
    n = 3
    table = [[(0,) * n for _ in range(n)] for _ in range(n)]
    table[0][1] = (0, 0, 1)
    table[1][0] = (0, 0, -1)
    return LieAlgebra(table)


def sl2():
    """Basis (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    table = [[(0, 0, 0)] * 3 for _ in range(3)]
    table[0][1] = (0, 0, 1)
    table[1][0] = (0, 0, -1)
    table[2][0] = (2, 0, 0)
    table[0][2] = (-2, 0, 0)
    table[2][1] = (0, -2, 0)
    table[1][2] = (0, 2, 0)
    return LieAlgebra(table)


def solvable2():
    """Basis (a, b) with [a, b] = b."""
    return LieAlgebra([[(0, 0), (0, 1)], [(0, -1), (0, 0)]])


def heis_pair_instance():
    """Abelian h = Q^2 acting on V = heis3 coordinates (X, Y, Z) through the
    quotient action, with omega(x, y) = -[X, Y] = -Z. The running example for
    the hamiltonian analysis: rad = 0, sp = ham = h, V^h = span Z, V_omega = V."""
    from hamflux.cochain import Cochain
    from hamflux.liealg import LieModule

    h = LieAlgebra.abelian(2)
    rho_x = [[0, 0, 0], [0, 0, 0], [0, 1, 0]]
    rho_y = [[0, 0, 0], [0, 0, 0], [-1, 0, 0]]
    module = LieModule(h, 3, [rho_x, rho_y])
    omega = Cochain.from_dict(module, 2, {(0, 1): (0, 0, -1)})
    return module, omega


def sl2_adjoint_instance():
    """sl2 acting on itself with omega = -bracket, so the poisson bracket of
    two vectors is their commutator and the inclusion is an equivariant
    momentum map."""
    from hamflux.cochain import Cochain
    from hamflux.liealg import adjoint_module

    alg = sl2()
    module = adjoint_module(alg)
    omega = Cochain.from_values(
        module, 2, lambda i, j: tuple(-x for x in alg.structure[i][j])
    )
    return module, omega
