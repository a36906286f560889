"""Hamiltonian structure of a 2-cochain on a Lie algebra module.

Given omega in C^2(h, V) (not assumed closed or nondegenerate), analyze()
computes, as exact subspaces:

    symplectic   sp  = {xi : d(i_xi omega) = 0 and i_xi(d omega) = 0}
    hamiltonian  ham = {xi : i_xi(d omega) = 0 and i_xi omega is exact}
    radical      rad = {xi : i_xi omega = 0 and i_xi(d omega) = 0}
    normalizer       = {xi : i_xi(d omega) = 0 and [xi, rad] in rad}
    invariants   V^h = {v : h.v = 0}
    admissible       = {v : d v = i_xi omega solvable with xi hamiltonian}

together with stored factorizations for the two solves that everything else
repeats: producing a hamiltonian lift xi from an admissible v, and a
potential v from a hamiltonian xi. The Poisson bracket on admissible vectors
is {v1, v2} = xi1 . v2, which equals -omega(xi1, xi2) and -xi2 . v1 and is
independent of the lift choice because the lift is unique modulo the radical.
"""

from dataclasses import dataclass

from hamflux.cochain import (
    Cochain,
    cochain_dim,
    cohomology,
    contract,
    differential,
    differential_matrix,
    invariant_vectors,
)
from hamflux.errors import (
    InvariantViolation,
    NotAdmissible,
    NotInImage,
    NotSymplectic,
    Unsolvable,
)
from hamflux.linalg import (
    LinearSolver,
    Matrix,
    Subspace,
    hstack,
    kernel_basis,
    quotient_map,
    vec_add,
    vec_neg,
    vec_sub,
    vector,
    vstack,
    zero_vector,
)


def _basis_vec(n, i):
    v = [0] * n
    v[i] = 1
    return vector(v)


class HamiltonianAnalysis:
    """All derived subspaces and solvers for one (module, omega) pair."""

    def __init__(self, module, omega):
        if omega.module != module or omega.degree != 2:
            raise ValueError("omega must be a 2-cochain over the module")
        self.module = module
        self.omega = omega
        self.d_omega = differential(omega)

        n = module.algebra.dim
        m = module.dim
        # columns: coordinates of i_{e_i} omega and i_{e_i} d(omega)
        self._contraction = Matrix.from_columns(
            [contract(_basis_vec(n, i), omega).coords for i in range(n)],
            cochain_dim(module, 1),
        )
        self._contraction3 = Matrix.from_columns(
            [contract(_basis_vec(n, i), self.d_omega).coords for i in range(n)],
            cochain_dim(module, 2),
        )
        self._d0 = differential_matrix(module, 0)
        d1 = differential_matrix(module, 1)

        self.symplectic = kernel_basis(
            vstack(d1 * self._contraction, self._contraction3)
        )
        self.radical = kernel_basis(vstack(self._contraction, self._contraction3))
        self.invariants = invariant_vectors(module)

        # pairs (xi, v) with i_xi omega = d v and i_xi d(omega) = 0; the xi
        # projection is the hamiltonian subalgebra, the v projection the
        # admissible vectors
        top = hstack(self._contraction, -1 * self._d0)
        bottom = hstack(self._contraction3, Matrix.zeros(self._contraction3.nrows, m))
        pair_kernel = kernel_basis(vstack(top, bottom))
        self._pair_space = pair_kernel
        self.hamiltonian = Subspace.from_vectors(
            n, [p[:n] for p in pair_kernel.basis.columns()]
        )
        self.admissible = Subspace.from_vectors(
            m, [p[n:] for p in pair_kernel.basis.columns()]
        )

        self.normalizer = self._compute_normalizer()

        self._lift_solver = LinearSolver(vstack(self._contraction, self._contraction3))
        self._potential_solver = LinearSolver(self._d0)

    def _compute_normalizer(self):
        n = self.module.algebra.dim
        alg = self.module.algebra
        blocks = [self._contraction3]
        if self.radical.dim:
            q = quotient_map(n, self.radical)
            for r in self.radical.basis.columns():
                # xi -> [xi, r] composed with the quotient by the radical
                cols = [alg.bracket(_basis_vec(n, i), r) for i in range(n)]
                blocks.append(q * Matrix.from_columns(cols, n))
        stacked = blocks[0]
        for b in blocks[1:]:
            stacked = vstack(stacked, b)
        return kernel_basis(stacked)

    # -- solves ------------------------------------------------------------

    def hamiltonian_lift(self, v):
        """Canonical xi with d v = i_xi omega; NotAdmissible if none exists."""
        v = vector(v)
        rhs = tuple(self._d0.apply(v)) + zero_vector(self._contraction3.nrows)
        try:
            return self._lift_solver.solve(rhs)
        except Unsolvable:
            raise NotAdmissible("vector has no hamiltonian lift") from None

    def potential_of(self, xi):
        """Canonical v with d v = i_xi omega, for hamiltonian xi."""
        xi = vector(xi)
        try:
            return self._potential_solver.solve(contract(xi, self.omega).coords)
        except Unsolvable:
            raise NotAdmissible("element is not hamiltonian") from None

    # -- evaluations ---------------------------------------------------------

    def omega_value(self, x, y):
        return self.omega.evaluate(vector(x), vector(y))

    def poisson_bracket(self, v1, v2):
        """{v1, v2} = xi1 . v2 with xi1 a hamiltonian lift of v1."""
        xi1 = self.hamiltonian_lift(v1)
        return self.module.act(xi1, vector(v2))

    def flux_class(self, xi):
        """Class of i_xi omega in H^1(h, V); defined for symplectic xi."""
        xi = vector(xi)
        if not self.symplectic.contains(xi):
            raise NotSymplectic("flux is defined on the symplectic subalgebra")
        return cohomology(self.module, 1).class_of(contract(xi, self.omega))

    def exactness_report(self):
        """Dimension bookkeeping for ham and the admissible vectors.

        ham / rad is isomorphic to d(V_omega) via the lift correspondence,
        and V_omega / V^h is isomorphic to the same space via d, so

            dim ham     = dim rad + dim d(V_omega)
            dim V_omega = dim V^h + dim d(V_omega)
        """
        image = Subspace.from_vectors(
            cochain_dim(self.module, 1),
            [self._d0.apply(b) for b in self.admissible.basis.columns()],
        )
        dims = {
            "symplectic": self.symplectic.dim,
            "hamiltonian": self.hamiltonian.dim,
            "radical": self.radical.dim,
            "normalizer": self.normalizer.dim,
            "invariants": self.invariants.dim,
            "admissible": self.admissible.dim,
            "differential_image": image.dim,
        }
        return {
            "dims": dims,
            "hamiltonian_sequence_exact": dims["hamiltonian"]
            == dims["radical"] + dims["differential_image"],
            "admissible_sequence_exact": dims["admissible"]
            == dims["invariants"] + dims["differential_image"],
        }


def analyze(module, omega):
    """Full hamiltonian analysis of a 2-cochain."""
    return HamiltonianAnalysis(module, omega)


@dataclass(frozen=True)
class HamiltonianPair:
    """A vector with a chosen hamiltonian lift, d v = i_xi omega."""

    v: tuple
    xi: tuple


def hamiltonian_pair(analysis, v, xi):
    """Validate and wrap (v, xi); InvariantViolation if the equation fails."""
    v = vector(v)
    xi = vector(xi)
    dv = differential(Cochain(analysis.module, 0, v))
    if dv != contract(xi, analysis.omega):
        raise InvariantViolation("d v != i_xi omega for the supplied pair")
    return HamiltonianPair(v, xi)


def pair_bracket(analysis, p1, p2):
    """Bracket [(v1,x1),(v2,x2)] = (-omega(x1,x2), [x1,x2]) on valid pairs.

    This is the Lie algebra of pairs over the hamiltonian subalgebra; the
    first component also equals the Poisson bracket {v1, v2}.
    """
    w = vec_neg(analysis.omega_value(p1.xi, p2.xi))
    x = analysis.module.algebra.bracket(p1.xi, p2.xi)
    return hamiltonian_pair(analysis, w, x)


def abelian_bracket(analysis, p1, p2):
    """Semidirect bracket (x1.v2 - x2.v1 + omega(x1,x2), [x1,x2]) on
    V_omega x sp; the inputs need not satisfy the pairing equation."""
    for v, xi in (p1, p2):
        xi = vector(xi)
        v = vector(v)
        if not analysis.symplectic.contains(xi):
            raise NotSymplectic("second component must be symplectic")
        if not analysis.admissible.contains(v):
            raise NotAdmissible("first component must be admissible")
    v1, x1 = vector(p1[0]), vector(p1[1])
    v2, x2 = vector(p2[0]), vector(p2[1])
    mod = analysis.module
    w = vec_add(
        vec_sub(mod.act(x1, v2), mod.act(x2, v1)), analysis.omega_value(x1, x2)
    )
    return w, mod.algebra.bracket(x1, x2)


def oneform_bracket(analysis, a1, a2):
    """[i_x1 omega, i_x2 omega] := i_[x1,x2] omega on contractions by the
    radical's normalizer; NotInImage when an argument is not such a
    contraction. Well defined because [normalizer, rad] lies in rad."""
    xs = []
    basis = analysis.normalizer.basis
    restricted = analysis._contraction * basis
    solver = LinearSolver(restricted)
    for a in (a1, a2):
        if a.module != analysis.module or a.degree != 1:
            raise ValueError("arguments must be 1-cochains over the module")
        try:
            t = solver.solve(a.coords)
        except Unsolvable:
            raise NotInImage(
                "one-form is not i_xi omega for xi normalizing the radical"
            ) from None
        xs.append(basis.apply(t))
    bracket = analysis.module.algebra.bracket(xs[0], xs[1])
    return contract(bracket, analysis.omega)
