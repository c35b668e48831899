"""Levi-Civita connection, curvature tensors and the Riemannian
flatness test, plus the generic frame-connection torsion/curvature
calculus reused by the sub-Riemannian certifiers.

Index convention: R(e_i, e_j) e_k = sum_l R^l_{ijk} e_l.
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .geometry import (
    FrameField,
    GeometryError,
    Metric,
    Space,
    VectorField,
    frame_expand,
    lie_bracket,
)
from .report import FlatnessReport, aggregate_residuals
from .symexpr import Expr, SampleConfig


class ChristoffelTable:
    """Gamma^k_ij of a coordinate-frame connection: nabla_i d_j = sum Gamma^k_ij d_k."""

    def __init__(self, space: Space, gamma):
        self.space = space
        self.gamma = gamma  # gamma[i][j][k]

    def __getitem__(self, idx):
        i, j, k = idx
        return self.gamma[i][j][k]


class FrameConnection:
    """Connection coefficients against an arbitrary frame E_1..E_n:
    nabla_{E_i} E_j = sum_k gamma[i][j][k] E_k."""

    def __init__(self, frame: FrameField, gamma):
        if frame.rank != frame.space.dim:
            raise GeometryError("frame connection needs a full frame")
        self.frame = frame
        self.space = frame.space
        self.gamma = gamma
        self._b = None

    def structure_functions(self):
        """b[i][j] = coefficients of [E_i, E_j] in the frame."""
        if self._b is None:
            n = self.frame.rank
            b = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    if j < i:
                        b[i][j] = [-c for c in b[j][i]]
                    elif i == j:
                        b[i][j] = [self.space.chart.zero()] * n
                    else:
                        b[i][j] = frame_expand(
                            lie_bracket(self.frame[i], self.frame[j]), self.frame
                        )
            self._b = b
        return self._b

    def derivative(self, X: VectorField) -> VectorField:
        """nabla of a field along nothing; kept simple: not needed."""
        raise NotImplementedError


class CurvatureTensor:
    def __init__(self, space: Space, r):
        self.space = space
        self.r = r  # r[i][j][k][l] = R^l_ijk

    def __getitem__(self, idx):
        i, j, k, l = idx
        return self.r[i][j][k][l]

    def components(self):
        n = self.space.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    for l in range(n):
                        yield (i, j, k, l), self.r[i][j][k][l]


def metric_inverse(g: Metric):
    try:
        return linalg.expr_mat_inv(g.matrix)
    except ValueError as exc:
        raise GeometryError("degenerate metric") from exc


def levi_civita(g: Metric) -> ChristoffelTable:
    """Gamma^k_ij = 1/2 sum_l g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)."""
    space = g.space
    if space.mode != "coordinates":
        raise GeometryError("coordinate Christoffel symbols need coordinate mode")
    n = space.dim
    names = space.chart.names
    ginv = metric_inverse(g)
    dg = [[[g.matrix[i][j].diff(names[k]) for k in range(n)] for j in range(n)] for i in range(n)]
    half = None
    gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = space.chart.zero()
                for l in range(n):
                    s = s + ginv[k][l] * (dg[j][l][i] + dg[i][l][j] - dg[i][j][l])
                gamma[i][j][k] = s / 2
    return ChristoffelTable(space, gamma)


def riemann_tensor(ch: ChristoffelTable) -> CurvatureTensor:
    """R^l_ijk = d_i G^l_jk - d_j G^l_ik + sum_m (G^l_im G^m_jk - G^l_jm G^m_ik)."""
    space = ch.space
    n = space.dim
    names = space.chart.names
    g = ch.gamma
    r = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = g[j][k][l].diff(names[i]) - g[i][k][l].diff(names[j])
                    for m in range(n):
                        s = s + g[i][m][l] * g[j][k][m] - g[j][m][l] * g[i][k][m]
                    r[i][j][k][l] = s
    return CurvatureTensor(space, r)


def gaussian_curvature(g: Metric) -> Expr:
    """K = <R(d_x, d_y) d_y, d_x>_g / det(g) on a 2-dimensional chart."""
    if g.space.dim != 2:
        raise GeometryError("Gaussian curvature needs a 2-dimensional chart")
    r = riemann_tensor(levi_civita(g))
    num = g.space.chart.zero()
    for l in range(2):
        num = num + r[0, 1, 1, l] * g.matrix[l][0]
    det = g.matrix[0][0] * g.matrix[1][1] - g.matrix[0][1] * g.matrix[1][0]
    return num / det


def riemannian_flatness(g: Metric, config: SampleConfig = SampleConfig()) -> FlatnessReport:
    """Flat iff every Riemann component of the Levi-Civita connection vanishes."""
    if not g.check_positive_definite(g.space.chart.sample_points(8, seed=config.seed)):
        raise GeometryError("metric is not positive definite at sample points")
    r = riemann_tensor(levi_civita(g))
    named = [(f"R^{l}_{i}{j}{k}", e) for (i, j, k, l), e in r.components()]
    report = aggregate_residuals(named, config)
    report.transcript["tensor"] = "Riemann curvature of the Levi-Civita connection"
    return report


def frame_torsion(conn: FrameConnection):
    """T^k_ij = G^k_ij - G^k_ji - b^k_ij in the frame."""
    n = conn.frame.rank
    b = conn.structure_functions()
    t = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                t[i][j][k] = conn.gamma[i][j][k] - conn.gamma[j][i][k] - b[i][j][k]
    return t


def frame_curvature(conn: FrameConnection):
    """R^l_ijk = E_i(G^l_jk) - E_j(G^l_ik)
    + sum_m (G^m_jk G^l_im - G^m_ik G^l_jm) - sum_m b^m_ij G^l_mk."""
    n = conn.frame.rank
    b = conn.structure_functions()
    g = conn.gamma
    frame = conn.frame
    r = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = frame[i].apply(g[j][k][l]) - frame[j].apply(g[i][k][l])
                    for m in range(n):
                        s = s + g[j][k][m] * g[i][m][l] - g[i][k][m] * g[j][m][l]
                        s = s - b[i][j][m] * g[m][k][l]
                    r[i][j][k][l] = s
    return r


def zero_connection(frame: FrameField) -> FrameConnection:
    """The connection making every frame field parallel."""
    n = frame.rank
    z = frame.space.chart.zero()
    gamma = [[[z] * n for _ in range(n)] for _ in range(n)]
    return FrameConnection(frame, gamma)


def orthonormal_levi_civita(frame: FrameField) -> FrameConnection:
    """Levi-Civita of the metric declaring `frame` orthonormal, by the
    Koszul formula 2<nabla_i E_j, E_k> = b_ij^k - b_ik^j - b_jk^i."""
    conn = zero_connection(frame)
    b = conn.structure_functions()
    n = frame.rank
    gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                gamma[i][j][k] = (b[i][j][k] - b[i][k][j] - b[j][k][i]) / 2
    out = FrameConnection(frame, gamma)
    out._b = b
    return out
