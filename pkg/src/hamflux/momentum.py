"""Momentum maps for an action zeta: g -> ham(h, omega) and the extensions
they generate.

A momentum map assigns to every X in g a potential J(X) of i_{zeta X} omega.
Its failure to be equivariant is the obstruction cocycle

    tau(X, Y) = X.J(Y) - J([X, Y]),

whose values land in the invariants V^h and which is closed for the trivial
action, so it defines a central extension V^h x_tau g. The pullback cocycle
omega_g(X, Y) = omega(zeta X, zeta Y) similarly defines the semidirect
extension V_omega x_{omega_g} g, and tau = d(J) + omega_g ties the two
together: the Baer product of the central extension with the semidirect
product V_omega x g is equivalent to the omega_g-extension, with equivalence
(v, X) -> (v + J(X), X).
"""

from dataclasses import dataclass

from hamflux.cochain import (
    Cochain,
    cohomology,
    contract,
    differential,
    differential_matrix,
    lie_derivative,
)
from hamflux.errors import (
    HamfluxError,
    ImageNotHamiltonian,
    InvariantViolation,
    KernelMismatch,
    NotPrimitive,
    Unsolvable,
)
from hamflux.hamiltonian import hamiltonian_pair, pair_bracket
from hamflux.liealg import AlgebraHom, LieAlgebra, LieModule
from hamflux.linalg import (
    LinearSolver,
    Matrix,
    Subspace,
    hstack,
    quotient_map,
    vec_add,
    vec_sub,
    vector,
    zero_vector,
)


def _check_image_hamiltonian(analysis, zeta):
    for i in range(zeta.source.dim):
        if not analysis.hamiltonian.contains(zeta.matrix.column(i)):
            raise ImageNotHamiltonian(i)


def pullback_module(analysis, zeta):
    """g acting on V through zeta (X . v := zeta(X) . v)."""
    g = zeta.source
    mats = [analysis.module.action_of(zeta.matrix.column(i)) for i in range(g.dim)]
    return LieModule(g, analysis.module.dim, mats)


def pullback_cocycle(analysis, zeta):
    """omega_g(X, Y) = omega(zeta X, zeta Y), closed over the pullback module."""
    _check_image_hamiltonian(analysis, zeta)
    pb = pullback_module(analysis, zeta)
    z = zeta.matrix
    omega_g = Cochain.from_values(
        pb, 2, lambda i, j: analysis.omega_value(z.column(i), z.column(j))
    )
    if not differential(omega_g).is_zero():
        raise HamfluxError("pullback cocycle is not closed; zeta image not symplectic")
    return omega_g


class MomentumMap:
    """A validated momentum map: d(J X) = i_{zeta X} omega for every basis X."""

    __slots__ = ("analysis", "zeta", "matrix")

    def __init__(self, analysis, zeta, matrix):
        matrix = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
        if matrix.nrows != analysis.module.dim or matrix.ncols != zeta.source.dim:
            raise ValueError("momentum matrix must be module.dim x g.dim")
        _check_image_hamiltonian(analysis, zeta)
        for i in range(zeta.source.dim):
            dv = differential(Cochain(analysis.module, 0, matrix.column(i)))
            if dv != contract(zeta.matrix.column(i), analysis.omega):
                raise InvariantViolation(
                    f"d(J e_{i}) != i_(zeta e_{i}) omega; not a momentum map"
                )
        object.__setattr__(self, "analysis", analysis)
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("MomentumMap is immutable")

    @property
    def g(self):
        return self.zeta.source

    def value(self, x):
        """J(x) for a coordinate vector x in g."""
        return self.matrix.apply(vector(x))

    def __repr__(self):
        return f"MomentumMap(g dim {self.g.dim} -> V dim {self.analysis.module.dim})"


def solve_momentum(analysis, zeta):
    """Canonical momentum map for zeta, plus its freedom.

    Returns (momentum, invariants): two momentum maps for the same zeta
    differ exactly by a linear map g -> V^h, so the freedom is
    Hom(g, invariants), dimension g.dim * invariants.dim.
    """
    _check_image_hamiltonian(analysis, zeta)
    cols = [
        analysis.potential_of(zeta.matrix.column(i)) for i in range(zeta.source.dim)
    ]
    momentum = MomentumMap(
        analysis, zeta, Matrix.from_columns(cols, analysis.module.dim)
    )
    return momentum, analysis.invariants


def obstruction_cocycle(momentum):
    """tau(X,Y) = X.J(Y) - J([X,Y]) with its structural identities asserted.

    Values are invariant vectors; tau is closed; tau = d(J) + omega_g.
    """
    analysis = momentum.analysis
    zeta = momentum.zeta
    g = zeta.source
    pb = pullback_module(analysis, zeta)
    J = momentum.matrix

    def tau_value(i, j):
        xi = zeta.matrix.column(i)
        return vec_sub(
            analysis.module.act(xi, J.column(j)), J.apply(g.structure[i][j])
        )

    tau = Cochain.from_values(pb, 2, tau_value)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if not analysis.invariants.contains(tau.value(i, j)):
                raise HamfluxError("obstruction value escaped the invariants")
    if not differential(tau).is_zero():
        raise HamfluxError("obstruction cocycle is not closed")
    omega_g = pullback_cocycle(analysis, zeta)
    j_cochain = Cochain(pb, 1, tuple(x for i in range(g.dim) for x in J.column(i)))
    if tau != differential(j_cochain) + omega_g:
        raise HamfluxError("tau != d J + omega_g; inconsistent data")
    return tau


def _invariants_coords(analysis, vec):
    return analysis.invariants.coords_of(vec)


def trivial_invariants_module(analysis, g):
    """g acting trivially on V^h coordinates."""
    return LieModule.trivial(g, analysis.invariants.dim)


def obstruction_as_invariant_cochain(momentum, tau=None):
    """tau rewritten over the trivial g-module on V^h coordinates."""
    analysis = momentum.analysis
    g = momentum.g
    if tau is None:
        tau = obstruction_cocycle(momentum)
    triv = trivial_invariants_module(analysis, g)
    return Cochain.from_values(
        triv, 2, lambda i, j: _invariants_coords(analysis, tau.value(i, j))
    )


# -- extensions ----------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionPresentation:
    """A Lie algebra extension kernel -> total -> base in fixed coordinates.

    injection embeds the kernel as the first coordinates, projection kills
    them, and section is a linear right inverse of projection sending base
    basis to the corresponding tail coordinates.
    """

    kind: str
    total: LieAlgebra
    base: LieAlgebra
    kernel_dim: int
    injection: Matrix
    projection: Matrix
    section: Matrix

    def __post_init__(self):
        t, b, k = self.total, self.base, self.kernel_dim
        if (self.projection * self.injection) != Matrix.zeros(b.dim, k):
            raise HamfluxError("projection does not kill the kernel")
        if (self.projection * self.section) != Matrix.identity(b.dim):
            raise HamfluxError("section is not a right inverse of the projection")
        # the projection must be an algebra map
        for i in range(t.dim):
            for j in range(i + 1, t.dim):
                lhs = self.projection.apply(t.structure[i][j])
                rhs = b.bracket(self.projection.column(i), self.projection.column(j))
                if lhs != rhs:
                    raise HamfluxError("projection is not an algebra map")
        central = self.kind == "central"
        kernel_cols = self.injection.columns()
        kernel_space = Subspace.from_vectors(t.dim, kernel_cols)
        for i in range(t.dim):
            for z in kernel_cols:
                w = t.bracket(self.total_basis(i), z)
                if central:
                    if any(x != 0 for x in w):
                        raise HamfluxError("kernel is not central")
                elif not kernel_space.contains(w):
                    raise HamfluxError("kernel is not an ideal")

    def total_basis(self, i):
        v = [0] * self.total.dim
        v[i] = 1
        return vector(v)


def central_extension(momentum):
    """V^h x_tau g with bracket ((z1,X1),(z2,X2)) -> (tau(X1,X2), [X1,X2])."""
    analysis = momentum.analysis
    g = momentum.g
    tau = obstruction_cocycle(momentum)
    k = analysis.invariants.dim
    n = k + g.dim
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    for l in range(g.dim):
        for p in range(g.dim):
            zpart = _invariants_coords(analysis, tau.value(l, p))
            gpart = g.structure[l][p]
            table[k + l][k + p] = vector(zpart + tuple(gpart))
    total = LieAlgebra(table)
    return ExtensionPresentation(
        kind="central",
        total=total,
        base=g,
        kernel_dim=k,
        injection=_block_injection(n, k),
        projection=_block_projection(n, k, g.dim),
        section=_block_section(n, k, g.dim),
    )


def abelian_extension(analysis, zeta):
    """V_omega x_{omega_g} g: semidirect action through zeta plus the
    pullback cocycle in the V_omega slot."""
    _check_image_hamiltonian(analysis, zeta)
    g = zeta.source
    omega_g = pullback_cocycle(analysis, zeta)
    adm = analysis.admissible
    k2 = adm.dim
    n = k2 + g.dim
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    mod = analysis.module

    def into_adm(v):
        try:
            return adm.coords_of(v)
        except Unsolvable:
            raise HamfluxError(
                "value escaped the admissible vectors; zeta image not hamiltonian"
            ) from None

    for l in range(g.dim):
        xi = zeta.matrix.column(l)
        for i in range(k2):
            w = into_adm(mod.act(xi, adm.basis.column(i)))
            table[k2 + l][i] = vector(w + (0,) * g.dim)
            table[i][k2 + l] = vector(tuple(-x for x in w) + (0,) * g.dim)
        for p in range(g.dim):
            if l == p:
                continue
            zpart = into_adm(omega_g.value(l, p))
            table[k2 + l][k2 + p] = vector(zpart + tuple(g.structure[l][p]))
    total = LieAlgebra(table)
    return ExtensionPresentation(
        kind="abelian",
        total=total,
        base=g,
        kernel_dim=k2,
        injection=_block_injection(n, k2),
        projection=_block_projection(n, k2, g.dim),
        section=_block_section(n, k2, g.dim),
    )


def _block_injection(n, k):
    return Matrix.from_columns(
        [tuple(1 if r == i else 0 for r in range(n)) for i in range(k)], n
    )


def _block_projection(n, k, gdim):
    return Matrix(
        [tuple(1 if c == k + i else 0 for c in range(n)) for i in range(gdim)], n
    )


def _block_section(n, k, gdim):
    return Matrix.from_columns(
        [tuple(1 if r == k + i else 0 for r in range(n)) for i in range(gdim)], n
    )


def extension_embedding(central, abelian, momentum):
    """The equivalence-compatible embedding V^h x_tau g -> V_omega x_{omega_g} g,
    (z, X) -> (z + J(X), X), verified to preserve brackets."""
    analysis = momentum.analysis
    k = central.kernel_dim
    k2 = abelian.kernel_dim
    g = momentum.g
    adm = analysis.admissible
    cols = []
    for i in range(k):
        z = analysis.invariants.basis.column(i)
        cols.append(vector(adm.coords_of(z) + (0,) * g.dim))
    for l in range(g.dim):
        jl = adm.coords_of(momentum.matrix.column(l))
        cols.append(vector(jl + tuple(1 if q == l else 0 for q in range(g.dim))))
    phi = Matrix.from_columns(cols, k2 + g.dim)
    AlgebraHom(central.total, abelian.total, phi)  # raises if not bracket-preserving
    return phi


# -- equivariantization ----------------------------------------------------------

@dataclass(frozen=True)
class EquivariantizationResult:
    momentum: object  # equivariant MomentumMap when successful, else None
    shift: object  # Matrix with columns in V^h, J_eq = J - shift
    obstruction_class: tuple  # class of tau in H^2(g, V^h), zero iff success
    cohomology_dim: int

    @property
    def success(self):
        return self.shift is not None


def equivariantize(momentum):
    """Shift J by a map into V^h to kill tau, when the class [tau] vanishes.

    Solves d c = tau in C^*(g, V^h) with the trivial action; on success the
    corrected map J - c is a momentum map with tau = 0, and the remaining
    freedom is Hom(g, V^h) with c([g,g]) = 0.
    """
    analysis = momentum.analysis
    g = momentum.g
    tau_t = obstruction_as_invariant_cochain(momentum)
    triv = tau_t.module
    h2 = cohomology(triv, 2)
    d1 = differential_matrix(triv, 1)
    try:
        c_flat, _ = _solve(d1, tau_t.coords)
    except Unsolvable:
        cls = h2.class_of(tau_t)
        return EquivariantizationResult(None, None, tuple(cls), h2.dim)
    k = analysis.invariants.dim
    shift_cols = []
    for l in range(g.dim):
        coeffs = c_flat[l * k : (l + 1) * k]
        shift_cols.append(analysis.invariants.basis.apply(coeffs))
    shift = Matrix.from_columns(shift_cols, analysis.module.dim)
    corrected = MomentumMap(analysis, momentum.zeta, momentum.matrix - shift)
    tau_after = obstruction_cocycle(corrected)
    if not tau_after.is_zero():
        raise HamfluxError("equivariantization failed to kill the obstruction")
    cls = h2.class_of(tau_t)
    return EquivariantizationResult(corrected, shift, tuple(cls), h2.dim)


def _solve(matrix, rhs):
    solver = LinearSolver(matrix)
    return solver.solve(rhs), solver.kernel()


def extended_momentum(momentum, central=None):
    """hat J on V^h x_tau g: (z, X) -> z + J(X), an equivariant momentum map
    for the extended action (z, X) -> zeta(X)."""
    analysis = momentum.analysis
    g = momentum.g
    if central is None:
        central = central_extension(momentum)
    if central.kernel_dim != analysis.invariants.dim:
        raise KernelMismatch("central extension kernel is not V^h")
    hat = hstack(analysis.invariants.basis, momentum.matrix)
    # momentum property for the extended action
    hat_alg = central.total
    zeta_hat_cols = []
    for i in range(hat_alg.dim):
        x = central.projection.column(i)
        zeta_hat_cols.append(momentum.zeta.matrix.apply(x))
    zeta_hat = AlgebraHom(
        hat_alg, analysis.module.algebra, Matrix.from_columns(zeta_hat_cols, analysis.module.algebra.dim)
    )
    hat_momentum = MomentumMap(analysis, zeta_hat, hat)
    if not obstruction_cocycle(hat_momentum).is_zero():
        raise HamfluxError("extended momentum map failed equivariance")
    return hat_momentum


def coboundary_trivialization(momentum, alpha):
    """Exact case omega = d(alpha) with alpha invariant: f(X) = J(X) + alpha(zeta X)
    lands in V^h and satisfies tau = d f, so [tau] = 0. NotPrimitive when alpha
    is not an invariant primitive of omega."""
    analysis = momentum.analysis
    if alpha.module != analysis.module or alpha.degree != 1:
        raise ValueError("alpha must be a 1-cochain over the module")
    if differential(alpha) != analysis.omega:
        raise NotPrimitive("d alpha != omega")
    g = momentum.g
    zeta = momentum.zeta
    for i in range(g.dim):
        if not lie_derivative(zeta.matrix.column(i), alpha).is_zero():
            raise NotPrimitive("alpha is not invariant under the action image")
    cols = []
    for i in range(g.dim):
        xi = zeta.matrix.column(i)
        a_of_xi = alpha.evaluate(xi)
        f = vec_add(momentum.matrix.column(i), a_of_xi)
        if not analysis.invariants.contains(f):
            raise HamfluxError("trivializing values escaped the invariants")
        cols.append(f)
    f_mat = Matrix.from_columns(cols, analysis.module.dim)
    # tau = d f for the trivial action: tau(X,Y) = -f([X,Y])
    tau = obstruction_cocycle(momentum)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            expected = tuple(-x for x in f_mat.apply(g.structure[i][j]))
            if tau.value(i, j) != expected:
                raise HamfluxError("tau != d f in the exact case")
    return f_mat


def equivariant_pair_check(momentum):
    """Report whether the four equivalent equivariance conditions hold
    (they must agree): J preserves brackets into the Poisson structure,
    X.J(Y) = J([X,Y]), tau = 0, and X -> (J(X), zeta X) is a hom into pairs."""
    analysis = momentum.analysis
    g = momentum.g
    zeta = momentum.zeta
    J = momentum.matrix
    tau = obstruction_cocycle(momentum)

    poisson_ok = True
    equivariant_ok = True
    section_ok = True
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            jb = J.apply(g.structure[i][j])
            if analysis.poisson_bracket(J.column(i), J.column(j)) != jb:
                poisson_ok = False
            if analysis.module.act(zeta.matrix.column(i), J.column(j)) != jb:
                equivariant_ok = False
            pi = hamiltonian_pair(analysis, J.column(i), zeta.matrix.column(i))
            pj = hamiltonian_pair(analysis, J.column(j), zeta.matrix.column(j))
            out = pair_bracket(analysis, pi, pj)
            if out.v != jb or out.xi != zeta.matrix.apply(g.structure[i][j]):
                section_ok = False
    report = {
        "poisson_map": poisson_ok,
        "equivariant": equivariant_ok,
        "obstruction_vanishes": tau.is_zero(),
        "pair_section_hom": section_ok,
    }
    report["agree"] = len(set(report.values())) == 1
    return report


# -- Baer product -----------------------------------------------------------------

@dataclass(frozen=True)
class BaerProductResult:
    extension: ExtensionPresentation  # V_omega x_tau g from the literal quotient
    abelian: ExtensionPresentation  # V_omega x_{omega_g} g
    equivalence: Matrix  # iso extension.total -> abelian.total, (v,X)->(v+J(X),X)
    momentum: MomentumMap


def baer_product(analysis, zeta, momentum=None, central=None):
    """Baer product of V^h x_tau g with V_omega x g, built literally.

    Forms the semidirect sum W = V_omega x (V^h x_tau g) where the central
    extension acts through its projection, quotients by the central
    antidiagonal {(z, -z, 0) : z in V^h}, and re-coordinates on V_omega + g.
    The result carries the cocycle tau in the V_omega slot and is equivalent
    to the omega_g-extension via (v, X) -> (v + J(X), X).
    """
    if momentum is None:
        momentum, _ = solve_momentum(analysis, zeta)
    if central is None:
        central = central_extension(momentum)
    k = analysis.invariants.dim
    if central.kernel_dim != k:
        raise KernelMismatch("central extension kernel dimension is not dim V^h")
    if central.base != momentum.g:
        raise KernelMismatch("central extension base does not match g")
    g = momentum.g
    adm = analysis.admissible
    k2 = adm.dim
    ng = g.dim
    cen = central.total
    nW = k2 + cen.dim

    # semidirect sum: cen acts on V_omega through its projection to g
    table = [[zero_vector(nW) for _ in range(nW)] for _ in range(nW)]
    for a in range(cen.dim):
        x = central.projection.column(a)  # image in g
        xi = zeta.matrix.apply(x)
        for i in range(k2):
            w = adm.coords_of(analysis.module.act(xi, adm.basis.column(i)))
            table[k2 + a][i] = vector(w + (0,) * cen.dim)
            table[i][k2 + a] = vector(tuple(-q for q in w) + (0,) * cen.dim)
        for b in range(cen.dim):
            if a == b:
                continue
            table[k2 + a][k2 + b] = vector((0,) * k2 + tuple(cen.structure[a][b]))
    W = LieAlgebra(table)

    # central antidiagonal {(incl z, -z, 0)}
    anti = []
    for j in range(k):
        z = analysis.invariants.basis.column(j)
        w_part = adm.coords_of(z)  # V^h sits inside V_omega
        z_part = tuple(-1 if q == j else 0 for q in range(k))
        anti.append(vector(w_part + z_part + (0,) * ng))
    delta = Subspace.from_vectors(nW, anti)
    for v in delta.basis.columns():
        for i in range(nW):
            if not all(
                x == 0 for x in W.bracket(_unit(nW, i), v)
            ):
                raise HamfluxError("antidiagonal is not central")

    q = quotient_map(nW, delta)
    qs = LinearSolver(q)
    sections = [qs.solve(_unit(nW - k, i)) for i in range(nW - k)]

    def q_bracket(u, v):
        return q.apply(W.bracket(u, v))

    quotient_table = [
        [q_bracket(sections[i], sections[j]) for j in range(nW - k)]
        for i in range(nW - k)
    ]
    LieAlgebra(quotient_table)  # validity of the literal quotient

    # re-coordinate on V_omega + g
    e_cols = [q.apply(_unit(nW, i)) for i in range(k2)]
    e_cols += [q.apply(_unit(nW, k2 + k + l)) for l in range(ng)]
    E = Matrix.from_columns(e_cols, nW - k)
    E_inv = E.inverse()

    def final_bracket(i, j):
        u = E.column(i)
        v = E.column(j)
        # pull back through the quotient: solve q s = u
        su = qs.solve(u)
        sv = qs.solve(v)
        return E_inv.apply(q.apply(W.bracket(su, sv)))

    n_final = k2 + ng
    final_table = [[final_bracket(i, j) for j in range(n_final)] for i in range(n_final)]
    total = LieAlgebra(final_table)

    result = ExtensionPresentation(
        kind="baer",
        total=total,
        base=g,
        kernel_dim=k2,
        injection=_block_injection(n_final, k2),
        projection=_block_projection(n_final, k2, ng),
        section=_block_section(n_final, k2, ng),
    )

    # the literal quotient must be V_omega x_tau g on the nose
    tau = obstruction_cocycle(momentum)
    expected_table = [[zero_vector(n_final) for _ in range(n_final)] for _ in range(n_final)]
    for l in range(ng):
        xi = zeta.matrix.column(l)
        for i in range(k2):
            w = adm.coords_of(analysis.module.act(xi, adm.basis.column(i)))
            expected_table[k2 + l][i] = vector(w + (0,) * ng)
            expected_table[i][k2 + l] = vector(tuple(-x for x in w) + (0,) * ng)
        for p in range(ng):
            if l == p:
                continue
            zpart = adm.coords_of(tau.value(l, p))
            expected_table[k2 + l][k2 + p] = vector(zpart + tuple(g.structure[l][p]))
    if total != LieAlgebra(expected_table):
        raise HamfluxError("Baer product is not V_omega with the tau cocycle over g")

    ab = abelian_extension(analysis, zeta)
    cols = []
    for i in range(k2):
        cols.append(_unit(n_final, i))
    for l in range(ng):
        jl = adm.coords_of(momentum.matrix.column(l))
        cols.append(vector(jl + tuple(1 if t == l else 0 for t in range(ng))))
    psi = Matrix.from_columns(cols, n_final)
    AlgebraHom(total, ab.total, psi)  # equivalence is an algebra map
    if psi.rank() != n_final:
        raise HamfluxError("equivalence is not invertible")
    return BaerProductResult(result, ab, psi, momentum)


def _unit(n, i):
    return vector(tuple(1 if q == i else 0 for q in range(n)))
