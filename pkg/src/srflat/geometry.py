"""Vector fields, one-forms, frames and metrics over a chart.

Two input modes share one calculus.  In coordinate mode the base fields
are the coordinate derivations and brackets come from differentiation;
in constant-structure mode the base fields are an abstract frame with
declared rational structure constants (a left-invariant frame on a Lie
group), scalars are constants and the bracket is the bilinear extension
of the structure constants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .symexpr import Chart, Expr, ExprError, SampleConfig, const, is_zero

COORDINATES = "coordinates"
CONSTANT_STRUCTURE = "constant-structure"


class GeometryError(Exception):
    pass


class Space:
    """A chart together with the mode of its base frame."""

    def __init__(self, chart: Chart, mode: str = COORDINATES, structure=None):
        self.chart = chart
        self.mode = mode
        self.structure = None
        if mode == CONSTANT_STRUCTURE:
            if structure is None:
                raise GeometryError("constant-structure mode needs structure constants")
            n = chart.n
            c = [[[Fraction(structure[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
            _check_structure_constants(c)
            self.structure = c
        elif mode != COORDINATES:
            raise GeometryError(f"unknown mode {mode!r}")

    @property
    def dim(self) -> int:
        return self.chart.n

    def zero_field(self) -> "VectorField":
        z = self.chart.zero()
        return VectorField(self, (z,) * self.dim)

    def basis_field(self, i: int) -> "VectorField":
        comps = [self.chart.zero()] * self.dim
        comps[i] = self.chart.one()
        return VectorField(self, tuple(comps))

    def derive(self, i: int, f: Expr) -> Expr:
        """Action of the i-th base field on a scalar."""
        if self.mode == COORDINATES:
            return f.diff(self.chart.names[i])
        if f.as_fraction() is None:
            raise GeometryError(
                "constant-structure mode admits only constant scalars"
            )
        return self.chart.zero()

    def base_bracket(self, i: int, j: int) -> "VectorField":
        if self.mode == COORDINATES:
            return self.zero_field()
        comps = tuple(const(self.chart, self.structure[i][j][k]) for k in range(self.dim))
        return VectorField(self, comps)


def _check_structure_constants(c):
    n = len(c)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    raise GeometryError("structure constants are not antisymmetric")
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(n):
                    s = Fraction(0)
                    for m in range(n):
                        s += (
                            c[i][j][m] * c[m][k][l]
                            + c[j][k][m] * c[m][i][l]
                            + c[k][i][m] * c[m][j][l]
                        )
                    if s != 0:
                        raise GeometryError(
                            f"structure constants fail the Jacobi identity at ({i},{j},{k})"
                        )


def _same_space(a, b):
    if a.space is not b.space:
        raise GeometryError("objects belong to different spaces (mode or chart mismatch)")


class VectorField:
    """Components with respect to the base frame of the space."""

    __slots__ = ("space", "components")

    def __init__(self, space: Space, components: Sequence[Expr]):
        if len(components) != space.dim:
            raise GeometryError("component count must match the ambient dimension")
        self.space = space
        self.components = tuple(components)

    def apply(self, f: Expr) -> Expr:
        out = self.space.chart.zero()
        for i, c in enumerate(self.components):
            if not c.is_zero_expr:
                out = out + c * self.space.derive(i, f)
        return out

    def __add__(self, other):
        _same_space(self, other)
        return VectorField(self.space, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        _same_space(self, other)
        return VectorField(self.space, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return VectorField(self.space, tuple(-a for a in self.components))

    def scaled(self, f) -> "VectorField":
        if not isinstance(f, Expr):
            f = const(self.space.chart, f)
        return VectorField(self.space, tuple(f * a for a in self.components))

    def is_zero_field(self) -> bool:
        return all(c.is_zero_expr for c in self.components)

    def eval(self, point):
        return [c.eval(point) for c in self.components]

    def eval_exact(self, point):
        return [c.eval_exact(point) for c in self.components]

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]; derivation part plus the base-frame structure part."""
    _same_space(X, Y)
    space = X.space
    comps = [X.apply(Yc) - Y.apply(Xc) for Xc, Yc in zip(X.components, Y.components)]
    if space.mode == CONSTANT_STRUCTURE:
        for i, xi in enumerate(X.components):
            if xi.is_zero_expr:
                continue
            for j, yj in enumerate(Y.components):
                if yj.is_zero_expr or not any(space.structure[i][j]):
                    continue
                f = xi * yj
                for k in range(space.dim):
                    cij = space.structure[i][j][k]
                    if cij:
                        comps[k] = comps[k] + f * const(space.chart, cij)
    return VectorField(space, tuple(comps))


class OneForm:
    """Components against the coframe dual to the base frame."""

    __slots__ = ("space", "components")

    def __init__(self, space: Space, components: Sequence[Expr]):
        if len(components) != space.dim:
            raise GeometryError("component count must match the ambient dimension")
        self.space = space
        self.components = tuple(components)

    def pair(self, X: VectorField) -> Expr:
        _same_space(self, X)
        out = self.space.chart.zero()
        for a, x in zip(self.components, X.components):
            out = out + a * x
        return out

    def __call__(self, X: VectorField) -> Expr:
        return self.pair(X)

    def scaled(self, f: Expr) -> "OneForm":
        return OneForm(self.space, tuple(f * a for a in self.components))

    def __add__(self, other):
        _same_space(self, other)
        return OneForm(self.space, tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return OneForm(self.space, tuple(-a for a in self.components))

    def d(self) -> "TwoForm":
        return TwoForm(self)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


class TwoForm:
    """Exterior derivative of a one-form as a bilinear evaluator:
    da(X, Y) = X(a(Y)) - Y(a(X)) - a([X, Y])."""

    def __init__(self, alpha: OneForm):
        self.alpha = alpha

    def __call__(self, X: VectorField, Y: VectorField) -> Expr:
        a = self.alpha
        return X.apply(a.pair(Y)) - Y.apply(a.pair(X)) - a.pair(lie_bracket(X, Y))


def d_oneform(alpha: OneForm) -> TwoForm:
    return alpha.d()


class FrameField:
    """An ordered list of pointwise-independent vector fields."""

    def __init__(self, fields: Sequence[VectorField]):
        if not fields:
            raise GeometryError("empty frame")
        self.space = fields[0].space
        for f in fields:
            _same_space(self, f)
        self.fields = tuple(fields)
        self._inverse = None

    @property
    def rank(self) -> int:
        return len(self.fields)

    def matrix(self):
        """Columns are the frame fields' components."""
        n = self.space.dim
        return [[self.fields[j].components[i] for j in range(self.rank)] for i in range(n)]

    def _inverse_matrix(self):
        if self._inverse is None:
            if self.rank != self.space.dim:
                raise GeometryError("frame is not full rank by count")
            try:
                self._inverse = linalg.expr_mat_inv(self.matrix())
            except ValueError as exc:
                raise GeometryError("singular frame matrix") from exc
        return self._inverse

    def check_independent(self, points) -> bool:
        import numpy as np

        m = self.matrix()
        for p in points:
            arr = np.array([[e.eval(p) for e in row] for row in m], dtype=float)
            s = np.linalg.svd(arr, compute_uv=False)
            if len(s) < self.rank or s[self.rank - 1] <= 1e-8 * max(1.0, s[0]):
                return False
        return True

    def __iter__(self):
        return iter(self.fields)

    def __getitem__(self, i):
        return self.fields[i]

    def __len__(self):
        return len(self.fields)


def frame_expand(v: VectorField, frame: FrameField):
    """Coefficients a with v = sum a_k F_k, solved over the expression field."""
    _same_space(v, frame)
    inv = frame._inverse_matrix()
    return [
        sum((inv[k][i] * v.components[i] for i in range(v.space.dim)), v.space.chart.zero())
        for k in range(frame.rank)
    ]


def annihilator(frame: FrameField):
    """The n-k independent one-forms vanishing on a rank-k frame."""
    n = frame.space.dim
    if frame.rank > n:
        raise GeometryError("frame rank exceeds ambient dimension")
    if frame.rank == n:
        return []
    mt = [[frame.fields[j].components[i] for i in range(n)] for j in range(frame.rank)]
    basis = linalg.expr_nullspace(mt)
    if len(basis) != n - frame.rank:
        raise GeometryError("frame is rank deficient")
    return [OneForm(frame.space, tuple(v)) for v in basis]


class Metric:
    """Symmetric Expr matrix against the base frame of the space."""

    def __init__(self, space: Space, matrix):
        n = space.dim
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise GeometryError("metric matrix has wrong shape")
        for i in range(n):
            for j in range(i):
                if not (matrix[i][j] - matrix[j][i]).is_zero_expr:
                    raise GeometryError("metric matrix is not symmetric")
        self.space = space
        self.matrix = [list(row) for row in matrix]

    @classmethod
    def from_orthonormal_frame(cls, frame: FrameField) -> "Metric":
        inv = frame._inverse_matrix()
        n = frame.space.dim
        g = [
            [
                sum(
                    (inv[k][i] * inv[k][j] for k in range(n)),
                    frame.space.chart.zero(),
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
        return cls(frame.space, g)

    def inner(self, X: VectorField, Y: VectorField) -> Expr:
        _same_space(self, X)
        _same_space(self, Y)
        out = self.space.chart.zero()
        for i, xi in enumerate(X.components):
            if xi.is_zero_expr:
                continue
            for j, yj in enumerate(Y.components):
                if yj.is_zero_expr:
                    continue
                out = out + self.matrix[i][j] * xi * yj
        return out

    def check_positive_definite(self, points) -> bool:
        """Leading principal minors positive at the sample points."""
        n = self.space.dim
        for p in points:
            vals = [[e.eval(p) for e in row] for row in self.matrix]
            for k in range(1, n + 1):
                sub = [row[:k] for row in vals[:k]]
                det = _float_det(sub)
                if det <= 0:
                    return False
        return True


def _float_det(m):
    import numpy as np

    return float(np.linalg.det(np.array(m, dtype=float)))


def lie_derivative_metric(Z: VectorField, g: Metric, X: VectorField, Y: VectorField) -> Expr:
    """(L_Z g)(X, Y) = Z<X,Y> - <[Z,X],Y> - <X,[Z,Y]>."""
    return (
        Z.apply(g.inner(X, Y))
        - g.inner(lie_bracket(Z, X), Y)
        - g.inner(X, lie_bracket(Z, Y))
    )
