"""Finite-dimensional Lie algebras, modules and algebra maps, all validated
eagerly: a constructed object is guaranteed to satisfy its defining identities
(antisymmetry + Jacobi for algebras, the commutator rule for actions, bracket
preservation for maps). Scalars are exact rationals throughout.
"""

from hamflux.errors import (
    AntisymmetryViolation,
    BracketViolation,
    HamfluxError,
    HomViolation,
    JacobiViolation,
)
from hamflux.linalg import (
    Matrix,
    Subspace,
    is_zero_vector,
    kernel_basis,
    vec_add,
    vec_scale,
    vector,
    zero_vector,
)


class LieAlgebra:
    """Lie algebra given by structure constants on a fixed basis.

    structure[i][j] is the coordinate vector of [e_i, e_j]. Construction
    checks antisymmetry on all pairs and the Jacobi identity on strictly
    increasing triples; with antisymmetry in hand, multilinearity extends the
    identity from those triples to arbitrary arguments.
    """

    __slots__ = ("dim", "structure")

    def __init__(self, structure):
        table = tuple(tuple(vector(v) for v in row) for row in structure)
        n = len(table)
        for row in table:
            if len(row) != n or any(len(v) != n for v in row):
                raise ValueError("structure table must be n x n with length-n values")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "structure", table)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    def _validate(self):
        n, c = self.dim, self.structure
        for i in range(n):
            if not is_zero_vector(c[i][i]):
                raise AntisymmetryViolation(i, i, c[i][i])
            for j in range(i + 1, n):
                bad = vec_add(c[i][j], c[j][i])
                if not is_zero_vector(bad):
                    raise AntisymmetryViolation(i, j, bad)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    s = vec_add(
                        vec_add(
                            self.bracket_with_basis(c[i][j], k),
                            self.bracket_with_basis(c[j][k], i),
                        ),
                        self.bracket_with_basis(c[k][i], j),
                    )
                    if not is_zero_vector(s):
                        raise JacobiViolation(i, j, k, s)

    @classmethod
    def abelian(cls, n):
        zero = zero_vector(n)
        return cls(tuple(tuple(zero for _ in range(n)) for _ in range(n)))

    def bracket_with_basis(self, x, k):
        """[x, e_k] for a coordinate vector x."""
        out = zero_vector(self.dim)
        for i, xi in enumerate(x):
            if xi:
                out = vec_add(out, vec_scale(xi, self.structure[i][k]))
        return out

    def bracket(self, x, y):
        """[x, y] by bilinear expansion of the structure constants."""
        out = zero_vector(self.dim)
        for j, yj in enumerate(y):
            if yj:
                out = vec_add(out, vec_scale(yj, self.bracket_with_basis(x, j)))
        return out

    def ad_matrix(self, x):
        """Matrix of ad(x): y -> [x, y]."""
        x = vector(x)
        cols = [self.bracket_with_basis(x, j) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.structure == other.structure

    def __hash__(self):
        return hash(self.structure)

    def __repr__(self):
        return f"LieAlgebra(dim {self.dim})"


def center(algebra):
    """{x : [x, y] = 0 for all y}, as a Subspace."""
    if algebra.dim == 0:
        return Subspace.zero(0)
    return kernel_basis(_transpose_action(algebra))


def _transpose_action(algebra):
    # matrix sending x to the concatenation of [x, e_j] over j
    n = algebra.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append(tuple(algebra.structure[i][j][k] for i in range(n)))
    return Matrix(rows, n)


def _basis_vec(n, i):
    v = [0] * n
    v[i] = 1
    return vector(v)


class LieModule:
    """Representation of a LieAlgebra on Q^dim by matrices per basis element.

    Validates rho([e_i, e_j]) = rho(e_i) rho(e_j) - rho(e_j) rho(e_i) on all
    increasing pairs.
    """

    __slots__ = ("algebra", "dim", "action", "_cache")

    def __init__(self, algebra, dim, action):
        action = tuple(a if isinstance(a, Matrix) else Matrix(a) for a in action)
        if len(action) != algebra.dim:
            raise ValueError("one action matrix per algebra basis element required")
        for a in action:
            if a.nrows != dim or a.ncols != dim:
                raise ValueError("action matrices must be dim x dim")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "_cache", {})
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("LieModule is immutable")

    def _validate(self):
        n = self.algebra.dim
        for i in range(n):
            for j in range(i + 1, n):
                lhs = self.action_of(self.algebra.structure[i][j])
                rhs = self.action[i] * self.action[j] - self.action[j] * self.action[i]
                if lhs != rhs:
                    raise HomViolation(i, j)

    @classmethod
    def trivial(cls, algebra, dim):
        z = Matrix.zeros(dim, dim)
        return cls(algebra, dim, tuple(z for _ in range(algebra.dim)))

    def action_of(self, x):
        """Matrix of the action of the coordinate vector x."""
        out = Matrix.zeros(self.dim, self.dim)
        for i, xi in enumerate(x):
            if xi:
                out = out + xi * self.action[i]
        return out

    def act(self, x, v):
        """x . v for coordinate vectors."""
        out = zero_vector(self.dim)
        for i, xi in enumerate(x):
            if xi:
                out = vec_add(out, vec_scale(xi, self.action[i].apply(v)))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, LieModule)
            and self.algebra == other.algebra
            and self.dim == other.dim
            and self.action == other.action
        )

    def __hash__(self):
        return hash((self.algebra, self.dim, self.action))

    def __repr__(self):
        return f"LieModule(dim {self.dim} over algebra of dim {self.algebra.dim})"


def adjoint_module(algebra):
    """The algebra acting on itself by ad."""
    mats = [algebra.ad_matrix(_basis_vec(algebra.dim, i)) for i in range(algebra.dim)]
    return LieModule(algebra, algebra.dim, mats)


class AlgebraHom:
    """Linear map between Lie algebras, validated to preserve brackets."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix):
        matrix = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
        if matrix.nrows != target.dim or matrix.ncols != source.dim:
            raise ValueError("hom matrix must be target.dim x source.dim")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)
        for i in range(source.dim):
            for j in range(i + 1, source.dim):
                lhs = matrix.apply(source.structure[i][j])
                rhs = target.bracket(matrix.column(i), matrix.column(j))
                if lhs != rhs:
                    raise BracketViolation(i, j)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraHom is immutable")

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, algebra, Matrix.identity(algebra.dim))

    def apply(self, x):
        return self.matrix.apply(x)

    def __repr__(self):
        return f"AlgebraHom({self.source.dim} -> {self.target.dim})"


def subalgebra(algebra, subspace):
    """Present a bracket-closed subspace as an algebra of its own.

    Returns (presentation, inclusion hom). Raises if the subspace is not
    closed under the bracket.
    """
    if subspace.ambient != algebra.dim:
        raise ValueError("ambient mismatch")
    basis = subspace.basis.columns()
    k = len(basis)
    table = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            w = algebra.bracket(basis[i], basis[j])
            try:
                table[i][j] = subspace.coords_of(w)
            except HamfluxError as exc:
                raise HamfluxError(
                    f"subspace is not closed under the bracket at basis pair ({i}, {j})"
                ) from exc
    sub = LieAlgebra(table)
    return sub, AlgebraHom(sub, algebra, subspace.basis)
