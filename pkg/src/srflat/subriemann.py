"""Bracket flags, growth vectors, equiregularity and symbol algebras of
sub-Riemannian structures.

Bracket words are iterated brackets of the horizontal frame, ordered by
length then lexicographically by generator indices; the adapted basis
takes the first independent word at each step, so symbols are
deterministic.  Rank decisions are exact rational where the evaluated
brackets are rational, with an SVD fallback at threshold 1e-8.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .carnot import StratifiedAlgebra, validate
from .geometry import (
    CONSTANT_STRUCTURE,
    FrameField,
    GeometryError,
    Space,
    VectorField,
    annihilator,
    d_oneform,
    lie_bracket,
)
from .symexpr import DomainError, SampleConfig

SVD_TOL = 1e-8


class SubRiemannError(Exception):
    pass


class SRStructure:
    """An orthonormal horizontal frame spanning the distribution."""

    def __init__(self, space: Space, horizontal: Sequence[VectorField], sample_points=None):
        self.space = space
        self.frame = FrameField(horizontal)
        if self.frame.rank > space.dim:
            raise SubRiemannError("horizontal rank exceeds ambient dimension")
        self.declared_samples = list(sample_points) if sample_points else None

    @property
    def rank(self) -> int:
        return self.frame.rank

    @property
    def dim(self) -> int:
        return self.space.dim

    def sample_points(self, count: int, seed: int = 0):
        if self.space.mode == CONSTANT_STRUCTURE:
            origin = tuple(Fraction(0) for _ in range(self.dim))
            return [origin] * min(count, 1) or [origin]
        if self.declared_samples:
            return self.declared_samples[:count]
        return self.space.chart.sample_points(count, seed=seed)


def word_name(word) -> str:
    return "e" + "".join(str(i + 1) for i in word)


@dataclass
class FlagAtPoint:
    point: tuple
    ranks: tuple
    chosen: list  # list of (word, VectorField) in adapted order
    layer_of: list  # weight of each chosen word
    bracket_generating: bool
    exact: bool
    vectors: list  # evaluated chosen vectors at the point


def _eval_field(fieldv: VectorField, point):
    """(vector, exact) with Fraction entries when possible."""
    try:
        return fieldv.eval_exact(point), True
    except DomainError:
        return [float(c.eval(point)) for c in fieldv.components], False


def _rank_of(vectors, exact):
    if not vectors:
        return 0
    if exact:
        return linalg.bareiss_rank([list(v) for v in vectors])
    arr = np.array(vectors, dtype=float)
    s = np.linalg.svd(arr, compute_uv=False)
    return int(np.sum(s > SVD_TOL * max(1.0, s[0])))


def flag_at_point(structure: SRStructure, point) -> FlagAtPoint:
    """Evaluate the bracket flag at a point by breadth-first bracket
    words.  Stops at full rank, at a symbolically-zero candidate layer,
    or at the layer cap max(2n, 6)."""
    space = structure.space
    n = space.dim
    exact_all = True
    chosen, layer_of, vectors = [], [], []
    ranks = []
    current_words = []  # all words of the previous length, with fields
    for i, f in enumerate(structure.frame):
        current_words.append(((i,), f))
    rank = 0
    layer = 0
    cap = max(2 * n, 6)
    while True:
        layer += 1
        for word, f in current_words:
            vec, exact = _eval_field(f, point)
            if exact_all and not exact:
                exact_all = False
                vectors = [[float(x) for x in v] for v in vectors]
            vec = list(vec) if exact_all else [float(x) for x in vec]
            cand = vectors + [vec]
            newrank = _rank_of(cand, exact_all)
            if newrank > rank:
                rank = newrank
                chosen.append((word, f))
                layer_of.append(layer)
                vectors = cand
        ranks.append(rank)
        if rank == n:
            return FlagAtPoint(tuple(point), tuple(ranks), chosen, layer_of, True, exact_all, vectors)
        if layer >= cap:
            return FlagAtPoint(tuple(point), tuple(ranks), chosen, layer_of, False, exact_all, vectors)
        next_words = []
        any_nonzero = False
        for word, f in current_words:
            for i, xf in enumerate(structure.frame):
                nw = (i,) + word
                nf = lie_bracket(xf, f)
                if not nf.is_zero_field():
                    any_nonzero = True
                next_words.append((nw, nf))
        if not any_nonzero:
            return FlagAtPoint(
                tuple(point), tuple(ranks), chosen, layer_of, False, exact_all, vectors
            )
        next_words.sort(key=lambda wf: wf[0])
        current_words = next_words


def growth_vector(structure: SRStructure, point):
    """The flag ranks at the point; trailing repeats after stabilization
    are trimmed."""
    flag = flag_at_point(structure, point)
    ranks = list(flag.ranks)
    while len(ranks) >= 2 and ranks[-1] == ranks[-2]:
        ranks.pop()
    return tuple(ranks), flag.bracket_generating


@dataclass
class EquiregularReport:
    ok: bool
    classes: dict  # growth vector -> list of points
    bracket_generating: bool

    def __str__(self):
        if self.ok:
            gv = next(iter(self.classes))
            return f"equiregular with growth vector {gv}"
        parts = [f"{gv}: {len(pts)} points" for gv, pts in self.classes.items()]
        return "not equiregular; classes " + ", ".join(parts)


def equiregular_check(structure: SRStructure, points) -> EquiregularReport:
    if len(points) < 1:
        raise SubRiemannError("need at least one sample point")
    classes = {}
    bg = True
    for p in points:
        gv, gen = growth_vector(structure, p)
        bg = bg and gen
        classes.setdefault(gv, []).append(p)
    return EquiregularReport(len(classes) == 1, classes, bg)


class SymbolAlgebra(StratifiedAlgebra):
    """The nilpotentization at a point, on the adapted bracket-word basis."""

    def __init__(self, strata, names, brackets, gram1, point, words):
        super().__init__(strata, names, brackets, gram1)
        self.point = point
        self.words = words


def symbol_at_point(structure: SRStructure, point, check_locally: bool = True) -> SymbolAlgebra:
    """Structure constants of the graded quotient bracket at the point."""
    flag = flag_at_point(structure, point)
    if not flag.bracket_generating:
        raise SubRiemannError(f"not bracket-generating at {point}")
    if check_locally and structure.space.mode != CONSTANT_STRUCTURE:
        cloud = _local_cloud(structure, point)
        gv0 = tuple(_trim(flag.ranks))
        for q in cloud:
            gv, gen = growth_vector(structure, q)
            if not gen or gv != gv0:
                raise SubRiemannError(
                    f"growth vector is not locally constant near {point}: {gv0} vs {gv} at {q}"
                )
    n = structure.space.dim
    step = flag.layer_of[-1]
    strata = [flag.layer_of.count(w) for w in range(1, step + 1)]
    words = [w for w, _ in flag.chosen]
    fields = [f for _, f in flag.chosen]
    exact = flag.exact
    if exact:
        basis_matrix = [[Fraction(v[i]) for v in flag.vectors] for i in range(n)]
    else:
        basis_matrix = np.array(flag.vectors, dtype=float).T
    brackets = {}
    for a in range(n):
        for b in range(a + 1, n):
            wsum = flag.layer_of[a] + flag.layer_of[b]
            br = lie_bracket(fields[a], fields[b])
            vec, vec_exact = _eval_field(br, point)
            if exact and vec_exact:
                coeffs = linalg.solve(basis_matrix, [Fraction(x) for x in vec])
            else:
                coeffs = np.linalg.solve(
                    np.array(basis_matrix, dtype=float), np.array([float(x) for x in vec], dtype=float)
                )
                coeffs = [Fraction(c).limit_denominator(10**6) if abs(c) > SVD_TOL else Fraction(0) for c in coeffs]
            comp = {}
            for k in range(n):
                c = coeffs[k]
                if not c:
                    continue
                if flag.layer_of[k] == wsum:
                    comp[k] = c
                elif flag.layer_of[k] > wsum:
                    raise SubRiemannError(
                        "bracket escapes its flag layer; inconsistent structure"
                    )
            if comp:
                brackets[(a, b)] = comp
    names = [word_name(w) for w in words]
    n1 = strata[0]
    gram1 = [[Fraction(int(i == j)) for j in range(n1)] for i in range(n1)]
    sym = SymbolAlgebra(strata, names, brackets, gram1, tuple(point), words)
    rep = validate(sym)
    if not rep.ok:
        raise SubRiemannError(f"symbol fails validation: {rep}")
    return sym


def _trim(ranks):
    ranks = list(ranks)
    while len(ranks) >= 2 and ranks[-1] == ranks[-2]:
        ranks.pop()
    return ranks


def _local_cloud(structure: SRStructure, point, count: int = 4):
    import random

    rng = random.Random(11)
    out = []
    attempts = 0
    while len(out) < count and attempts < 100 * count:
        attempts += 1
        q = tuple(
            x + Fraction(rng.randint(-4, 4), 64) for x in (Fraction(v) for v in point)
        )
        if structure.space.chart.point_in_domain(q):
            out.append(q)
    return out


@dataclass
class ConstantSymbolReport:
    verdict: str  # constant | non-constant | undecided
    growth: Optional[tuple]
    reason: str
    spectra: Optional[list] = None
    per_point: Optional[dict] = None

    @property
    def constant(self) -> bool:
        return self.verdict == "constant"


def contact_spectrum_at(structure: SRStructure, point):
    """Eigenvalue profile (lambda_1 <= ... <= lambda_n, lambda_1 = 1) of
    the distribution two-form against the metric at a point, for
    corank-1 structures."""
    forms = annihilator(structure.frame)
    if len(forms) != 1:
        raise SubRiemannError("contact spectrum needs a corank-1 distribution")
    theta = forms[0]
    dtheta = d_oneform(theta)
    k = structure.rank
    amat = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            v = dtheta(structure.frame[i], structure.frame[j]).eval(point)
            amat[i, j] = v
            amat[j, i] = -v
    m0 = -amat @ amat
    eig = np.linalg.eigvalsh(m0)
    top = eig[-1]
    if top <= SVD_TOL:
        raise SubRiemannError("degenerate two-form; not a contact structure")
    lam = np.sqrt(top / np.maximum(eig, SVD_TOL * top))
    return tuple(sorted(lam))


def constant_symbol_check(
    structure: SRStructure, points, config: SampleConfig = SampleConfig()
) -> ConstantSymbolReport:
    """Decide constancy of the symbol by growth-vector class.

    Growth (2,3,4) and (2,3,5) admit a single Carnot algebra, so the
    symbol is automatically constant.  The contact class is constant
    exactly when the eigenvalue profile of the distribution two-form is
    point-independent.  Other classes are reported undecided with the
    per-point structure constants.
    """
    eq = equiregular_check(structure, points)
    if not eq.ok:
        return ConstantSymbolReport("non-constant", None, str(eq))
    if not eq.bracket_generating:
        return ConstantSymbolReport("undecided", None, "not bracket-generating")
    gv = next(iter(eq.classes))
    if gv == (2, 3, 4):
        return ConstantSymbolReport(
            "constant", gv, "growth (2,3,4) admits a single Carnot algebra"
        )
    if gv == (2, 3, 5):
        return ConstantSymbolReport(
            "constant", gv, "growth (2,3,5) admits a single Carnot algebra"
        )
    n = structure.space.dim
    if len(gv) == 2 and gv[0] == n - 1 and gv[0] % 2 == 0:
        if gv[0] == 2:
            return ConstantSymbolReport(
                "constant", gv, "3-dimensional contact structure; profile forced to (1,)",
                spectra=[(1.0,)] * len(points),
            )
        spectra = [contact_spectrum_at(structure, p) for p in points]
        lam = [sp[:: 2] for sp in spectra]  # eigenvalues come in pairs
        ref = lam[0]
        for other in lam[1:]:
            if len(other) != len(ref) or any(abs(a - b) > 1e-6 * max(1.0, abs(a)) for a, b in zip(ref, other)):
                return ConstantSymbolReport(
                    "non-constant", gv, "eigenvalue profile varies across points", spectra=spectra
                )
        return ConstantSymbolReport(
            "constant", gv, "constant contact eigenvalue profile", spectra=spectra
        )
    per_point = {}
    for p in points:
        sym = symbol_at_point(structure, p, check_locally=False)
        per_point[tuple(str(x) for x in p)] = sym.to_dict()
    return ConstantSymbolReport(
        "undecided",
        gv,
        "no constancy criterion implemented for this growth class",
        per_point=per_point,
    )
