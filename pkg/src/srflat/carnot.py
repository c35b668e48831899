"""Stratified (Carnot) Lie algebra toolkit.

Exact rational throughout: structure constants, free nilpotent algebras
on a Hall basis of Lyndon words, truncated Baker-Campbell-Hausdorff,
dilations, graded isometry (derivation) algebras, the canonical graded
inner-product extension, and the Spencer differential with its metric
adjoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from . import linalg


class CarnotError(Exception):
    pass


# -- free associative algebra, truncated ------------------------------


def nc_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def nc_scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def nc_mul(a, b, maxdeg):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            if len(ka) + len(kb) > maxdeg:
                continue
            k = ka + kb
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def nc_commutator(a, b, maxdeg):
    return nc_add(nc_mul(a, b, maxdeg), nc_scale(nc_mul(b, a, maxdeg), -1))


# -- Lyndon words ------------------------------------------------------


def lyndon_words(m: int, maxlen: int):
    """All Lyndon words over {0..m-1} of length <= maxlen, in
    lexicographic order (Duval's algorithm)."""
    return _lyndon_duval(m, maxlen)


def _lyndon_duval(m: int, maxlen: int):
    out = []
    w = [0]
    while True:
        if len(w) <= maxlen:
            out.append(tuple(w))
        ww = list(w)
        while len(ww) < maxlen:
            ww.append(ww[len(ww) % len(w)])
        while ww and ww[-1] == m - 1:
            ww.pop()
        if not ww:
            break
        ww[-1] += 1
        w = ww
    return sorted(out)


def standard_factorization(w):
    """Chen-Fox-Lyndon: w = uv with v the lexicographically least
    proper suffix."""
    assert len(w) >= 2
    v = min(w[i:] for i in range(1, len(w)))
    return w[: len(w) - len(v)], v


def _bracketing_poly(w, maxdeg, cache):
    if w in cache:
        return cache[w]
    if len(w) == 1:
        p = {w: Fraction(1)}
    else:
        u, v = standard_factorization(w)
        p = nc_commutator(
            _bracketing_poly(u, maxdeg, cache), _bracketing_poly(v, maxdeg, cache), maxdeg
        )
    cache[w] = p
    return p


def lie_to_lyndon(p, maxdeg, cache):
    """Expand a Lie element of the truncated tensor algebra in the
    Lyndon basis.  Uses the triangularity of Lyndon bracketings: the
    polynomial of b(w) is w plus lexicographically larger words."""
    coeffs = {}
    rem = dict(p)
    while rem:
        w = min(rem, key=lambda k: (len(k), k))
        c = rem[w]
        coeffs[w] = coeffs.get(w, Fraction(0)) + c
        rem = nc_add(rem, nc_scale(_bracketing_poly(w, maxdeg, cache), -c))
    return {w: c for w, c in coeffs.items() if c}


# -- free BCH coefficients ---------------------------------------------


def _nc_exp(a, maxdeg):
    out = {(): Fraction(1)}
    term = {(): Fraction(1)}
    for k in range(1, maxdeg + 1):
        term = nc_scale(nc_mul(term, a, maxdeg), Fraction(1, k))
        out = nc_add(out, term)
    return out


def _nc_log1p(u, maxdeg):
    out = {}
    term = {(): Fraction(1)}
    for k in range(1, maxdeg + 1):
        term = nc_mul(term, u, maxdeg)
        out = nc_add(out, nc_scale(term, Fraction((-1) ** (k + 1), k)))
    return out


_BCH_CACHE = {}


def bch_lyndon_coefficients(step: int):
    """log(exp(x) exp(y)) truncated at `step`, expanded over Lyndon
    bracketings of the two-letter alphabet."""
    if step not in _BCH_CACHE:
        x = {(0,): Fraction(1)}
        y = {(1,): Fraction(1)}
        prod = nc_mul(_nc_exp(x, step), _nc_exp(y, step), step)
        u = nc_add(prod, {(): Fraction(-1)})
        z = _nc_log1p(u, step)
        cache = {}
        _BCH_CACHE[step] = sorted(
            lie_to_lyndon(z, step, cache).items(), key=lambda kv: (len(kv[0]), kv[0])
        )
    return _BCH_CACHE[step]


# -- stratified algebras -----------------------------------------------


def witt_dimension(m: int, d: int) -> int:
    total = 0
    for e in range(1, d + 1):
        if d % e:
            continue
        total += _moebius(d // e) * m**e
    return total // d


def _moebius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    p = 2
    nn = n
    while p * p <= nn:
        if nn % p == 0:
            nn //= p
            if nn % p == 0:
                return 0
            result = -result
        p += 1
    if nn > 1:
        result = -result
    return result


class StratifiedAlgebra:
    """Graded Lie algebra with exact rational structure constants and an
    inner product on the first stratum."""

    def __init__(self, strata: Sequence[int], names: Sequence[str], brackets, gram1=None):
        """`brackets` maps (i, j) with i < j (0-based) to a dict
        {k: Fraction} of nonzero bracket coefficients."""
        self.strata = tuple(int(x) for x in strata)
        self.dim = sum(self.strata)
        if len(names) != self.dim:
            raise CarnotError("basis name count must match total dimension")
        self.names = list(names)
        self.weights = []
        for w, nk in enumerate(self.strata, start=1):
            self.weights.extend([w] * nk)
        self.step = len(self.strata)
        table = [[[Fraction(0)] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), comp in brackets.items():
            if i == j:
                raise CarnotError("bracket of a basis vector with itself must be zero")
            for k, c in comp.items():
                c = Fraction(c)
                table[i][j][k] = c
                table[j][i][k] = -c
        self.table = table
        n1 = self.strata[0]
        if gram1 is None:
            gram1 = [[Fraction(int(i == j)) for j in range(n1)] for i in range(n1)]
        self.gram1 = [[Fraction(x) for x in row] for row in gram1]
        self._isometry_basis = None
        self._gram_full = None

    def stratum_indices(self, w: int):
        start = sum(self.strata[: w - 1])
        return range(start, start + self.strata[w - 1])

    def bracket(self, u, v):
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.table[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                comp = row[j]
                f = ui * vj
                for k in range(self.dim):
                    if comp[k]:
                        out[k] += f * comp[k]
        return out

    def basis_vector(self, i):
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def to_dict(self):
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if self.table[i][j][k]:
                        brackets.append([i + 1, j + 1, k + 1, str(self.table[i][j][k])])
        return {
            "strata": list(self.strata),
            "basis": list(self.names),
            "brackets": brackets,
            "gram": [[str(x) for x in row] for row in self.gram1],
        }

    @classmethod
    def from_dict(cls, data) -> "StratifiedAlgebra":
        strata = data["strata"]
        names = data.get("basis") or [f"e{i+1}" for i in range(sum(strata))]
        brackets = {}
        for i, j, k, c in data.get("brackets", []):
            key = (i - 1, j - 1)
            if i - 1 > j - 1:
                key = (j - 1, i - 1)
                c = -Fraction(c)
            brackets.setdefault(key, {})[k - 1] = Fraction(c)
        gram = data.get("gram")
        if gram is not None:
            gram = [[Fraction(x) for x in row] for row in gram]
        return cls(strata, names, brackets, gram)


@dataclass
class ValidationIssue:
    rule: str
    detail: str
    triple: Optional[tuple] = None


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __str__(self):
        if self.ok:
            return "valid stratified algebra"
        return "; ".join(f"{i.rule}: {i.detail}" for i in self.issues)


def validate(algebra: StratifiedAlgebra) -> ValidationReport:
    """Antisymmetry, Jacobi, grading and generation, checked exactly."""
    rep = ValidationReport()
    n = algebra.dim
    t = algebra.table
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if t[i][j][k] != -t[j][i][k]:
                    rep.issues.append(
                        ValidationIssue("antisymmetry", f"[{i},{j}] component {k}", (i, j, k))
                    )
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc = algebra.bracket(algebra.table[i][j], algebra.basis_vector(k))
                acc2 = algebra.bracket(algebra.table[j][k], algebra.basis_vector(i))
                acc3 = algebra.bracket(algebra.table[k][i], algebra.basis_vector(j))
                for l in range(n):
                    if acc[l] + acc2[l] + acc3[l] != 0:
                        rep.issues.append(
                            ValidationIssue("jacobi", f"triple ({i},{j},{k})", (i, j, k))
                        )
                        break
    s = algebra.step
    for i in range(n):
        for j in range(n):
            wi, wj = algebra.weights[i], algebra.weights[j]
            fine = algebra.stratum_indices(wi + wj) if wi + wj <= s else ()
            for k in range(n):
                if t[i][j][k] and k not in fine:
                    rep.issues.append(
                        ValidationIssue(
                            "grading",
                            f"[{algebra.names[i]},{algebra.names[j]}] leaves stratum {wi + wj}",
                            (i, j, k),
                        )
                    )
    for w in range(1, s):
        rows = []
        target = list(algebra.stratum_indices(w + 1))
        for i in algebra.stratum_indices(1):
            for j in algebra.stratum_indices(w):
                rows.append([t[i][j][k] for k in target])
        rank = linalg.bareiss_rank(rows) if rows else 0
        if rank != algebra.strata[w]:
            rep.issues.append(
                ValidationIssue(
                    "generation",
                    f"[g_1, g_{w}] spans rank {rank} of g_{w + 1} (dim {algebra.strata[w]})",
                )
            )
    n1 = algebra.strata[0]
    for i in range(n1):
        for j in range(i):
            if algebra.gram1[i][j] != algebra.gram1[j][i]:
                rep.issues.append(ValidationIssue("inner-product", "not symmetric"))
    for k in range(1, n1 + 1):
        det = linalg.bareiss_det([row[:k] for row in algebra.gram1[:k]])
        if det <= 0:
            rep.issues.append(
                ValidationIssue("inner-product", f"leading {k}x{k} minor not positive")
            )
    return rep


# -- free nilpotent ----------------------------------------------------


def lyndon_name(w) -> str:
    return "".join(str(c + 1) for c in w)


def free_nilpotent(m: int, s: int, names: Optional[Sequence[str]] = None) -> StratifiedAlgebra:
    """Free nilpotent Carnot algebra on m generators of step s, on the
    Lyndon-word Hall basis ordered by (length, lexicographic)."""
    if m < 2 or s < 1:
        raise CarnotError("need at least 2 generators and step >= 1")
    dims = [witt_dimension(m, d) for d in range(1, s + 1)]
    total = sum(dims)
    if total > 1000:
        raise CarnotError(f"free nilpotent dimension {total} exceeds the 1000 cap")
    words = sorted(_lyndon_duval(m, s), key=lambda w: (len(w), w))
    index = {w: i for i, w in enumerate(words)}
    cache = {}
    brackets = {}
    for a, wa in enumerate(words):
        for b in range(a + 1, len(words)):
            wb = words[b]
            if len(wa) + len(wb) > s:
                continue
            p = nc_commutator(
                _bracketing_poly(wa, s, cache), _bracketing_poly(wb, s, cache), s
            )
            comp = {}
            for w, c in lie_to_lyndon(p, s, cache).items():
                comp[index[w]] = c
            if comp:
                brackets[(a, b)] = comp
    basis_names = list(names) if names else [f"e{lyndon_name(w)}" for w in words]
    return StratifiedAlgebra(dims, basis_names, brackets)


# -- dilations and BCH --------------------------------------------------


def dilation_matrix(algebra: StratifiedAlgebra, r) -> list:
    r = Fraction(r)
    if r <= 0:
        raise CarnotError("dilation factor must be positive")
    return [
        [r ** algebra.weights[i] if i == j else Fraction(0) for j in range(algebra.dim)]
        for i in range(algebra.dim)
    ]


def bch_truncated(algebra: StratifiedAlgebra, a, b):
    """Group product in exponential coordinates, exact to the algebra's step."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    values = {}

    def eval_word(w):
        if w in values:
            return values[w]
        if len(w) == 1:
            v = a if w[0] == 0 else b
        else:
            u, t = standard_factorization(w)
            v = algebra.bracket(eval_word(u), eval_word(t))
        values[w] = v
        return v

    out = [Fraction(0)] * algebra.dim
    for w, c in bch_lyndon_coefficients(algebra.step):
        v = eval_word(w)
        for i in range(algebra.dim):
            if v[i]:
                out[i] += c * v[i]
    return out


# -- graded isometry algebra --------------------------------------------


class GradedDerivationBasis:
    def __init__(self, algebra: StratifiedAlgebra, matrices):
        self.algebra = algebra
        self.matrices = matrices

    @property
    def dim(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)


def isometry_algebra(algebra: StratifiedAlgebra) -> GradedDerivationBasis:
    """Derivations preserving the strata whose stratum-1 restriction is
    skew-symmetric for the declared inner product; exact nullspace."""
    blocks = []
    offset = {}
    pos = 0
    for w, nk in enumerate(algebra.strata, start=1):
        offset[w] = pos
        blocks.append(nk)
        pos += nk * nk
    nunk = pos

    def unk(w, r, c):
        nk = algebra.strata[w - 1]
        return offset[w] + r * nk + c

    rows = []
    n = algebra.dim
    stratum_start = {w: min(algebra.stratum_indices(w)) for w in range(1, algebra.step + 1)}

    def local(i):
        w = algebra.weights[i]
        return w, i - stratum_start[w]

    for i in range(n):
        for j in range(i + 1, n):
            wi, li = local(i)
            wj, lj = local(j)
            for k in range(n):
                wk, lk = local(k)
                row = [Fraction(0)] * nunk
                # D[e_i, e_j] component k: sum_a t[i][j][a] D_{k a}, a in stratum wk
                for a in algebra.stratum_indices(wk):
                    if algebra.table[i][j][a]:
                        row[unk(wk, lk, a - stratum_start[wk])] += algebra.table[i][j][a]
                # -[D e_i, e_j]: D e_i = sum_a D_{a i} e_a, a in stratum wi
                for a in algebra.stratum_indices(wi):
                    if algebra.table[a][j][k]:
                        row[unk(wi, a - stratum_start[wi], li)] -= algebra.table[a][j][k]
                for a in algebra.stratum_indices(wj):
                    if algebra.table[i][a][k]:
                        row[unk(wj, a - stratum_start[wj], lj)] -= algebra.table[i][a][k]
                if any(row):
                    rows.append(row)
    n1 = algebra.strata[0]
    g = algebra.gram1
    for r in range(n1):
        for c in range(r, n1):
            row = [Fraction(0)] * nunk
            for a in range(n1):
                if g[r][a]:
                    row[unk(1, a, c)] += g[r][a]
                if g[c][a]:
                    row[unk(1, a, r)] += g[c][a]
            if any(row):
                rows.append(row)
    basis = linalg.nullspace(rows) if rows else [
        [Fraction(int(i == j)) for j in range(nunk)] for i in range(nunk)
    ]
    mats = []
    for v in basis:
        m = [[Fraction(0)] * n for _ in range(n)]
        for w in range(1, algebra.step + 1):
            nk = algebra.strata[w - 1]
            st = stratum_start[w]
            for r in range(nk):
                for c in range(nk):
                    m[st + r][st + c] = v[unk(w, r, c)]
        mats.append(m)
    return GradedDerivationBasis(algebra, mats)


# -- graded inner product -----------------------------------------------


def extend_inner_product(algebra: StratifiedAlgebra):
    """Extend the stratum-1 inner product to all of g by making the
    bracket map a linear isometry from the orthogonal complement of its
    kernel, one stratum at a time.  Returns the full block-diagonal Gram
    matrix; strata are mutually orthogonal."""
    if algebra._gram_full is not None:
        return algebra._gram_full
    n = algebra.dim
    grams = {1: algebra.gram1}
    start = {w: min(algebra.stratum_indices(w)) for w in range(1, algebra.step + 1)}
    for k in range(2, algebra.step + 1):
        pairs = []
        for j in range(1, k // 2 + 1):
            jj = k - j
            if j < jj:
                pairs.extend(
                    (a, b) for a in algebra.stratum_indices(j) for b in algebra.stratum_indices(jj)
                )
            elif j == jj:
                idx = list(algebra.stratum_indices(j))
                pairs.extend((a, b) for ii, a in enumerate(idx) for b in idx[ii + 1 :])
        dimw = len(pairs)
        gw = [[Fraction(0)] * dimw for _ in range(dimw)]

        def g1d(a, b):
            wa = algebra.weights[a]
            return grams[wa][a - start[wa]][b - start[wa]] if algebra.weights[b] == wa else Fraction(0)

        for p, (a, b) in enumerate(pairs):
            for q, (c, d) in enumerate(pairs):
                gw[p][q] = g1d(a, c) * g1d(b, d) - g1d(a, d) * g1d(b, c)
        target = list(algebra.stratum_indices(k))
        mmat = [
            [algebra.table[a][b][t] for (a, b) in pairs] for t in target
        ]
        gwinv = linalg.mat_inv(gw)
        mg = linalg.mat_mul(mmat, gwinv)
        mgmt = linalg.mat_mul(mg, [list(col) for col in zip(*mmat)])
        grams[k] = linalg.mat_inv(mgmt)
    full = [[Fraction(0)] * n for _ in range(n)]
    for w in range(1, algebra.step + 1):
        st = start[w]
        for i in range(algebra.strata[w - 1]):
            for j in range(algebra.strata[w - 1]):
                full[st + i][st + j] = grams[w][i][j]
    algebra._gram_full = full
    return full


# -- Spencer complex -----------------------------------------------------


class SpencerComplex:
    """Bases and matrices of the Lie algebra cohomology differential on
    forms over g with values in g0 + g, plus the metric adjoint."""

    def __init__(self, algebra: StratifiedAlgebra):
        self.algebra = algebra
        iso = algebra._isometry_basis
        if iso is None:
            iso = isometry_algebra(algebra)
            algebra._isometry_basis = iso
        self.g0 = iso
        self.dim0 = iso.dim
        self.dimhat = self.dim0 + algebra.dim

    def form_basis(self, k: int):
        combos = list(itertools.combinations(range(self.algebra.dim), k))
        return [(S, u) for S in combos for u in range(self.dimhat)]

    def _bracket_g_hat(self, i: int, u: int):
        """[e_i, hat-basis-u] as a hat-valued coefficient vector."""
        n = self.algebra.dim
        out = [Fraction(0)] * self.dimhat
        if u < self.dim0:
            m = self.g0.matrices[u]
            for r in range(n):
                if m[r][i]:
                    out[self.dim0 + r] -= m[r][i]
        else:
            comp = self.algebra.table[i][u - self.dim0]
            for r in range(n):
                if comp[r]:
                    out[self.dim0 + r] += comp[r]
        return out

    def differential(self, k: int):
        """Matrix of the degree-k Spencer differential; columns over the
        degree-k basis, rows over degree k+1."""
        n = self.algebra.dim
        dom = self.form_basis(k)
        cod = self.form_basis(k + 1)
        cod_index = {}
        for idx, (T, u) in enumerate(cod):
            cod_index[(T, u)] = idx
        mat = [[Fraction(0)] * len(dom) for _ in range(len(cod))]
        combos_k1 = list(itertools.combinations(range(n), k + 1))
        dom_pos = {}
        for idx, (S, u) in enumerate(dom):
            dom_pos.setdefault(S, []).append((u, idx))
        for T in combos_k1:
            for i, ti in enumerate(T):
                rest = T[:i] + T[i + 1 :]
                for u, col in dom_pos.get(rest, ()):  # first sum
                    vec = self._bracket_g_hat(ti, u)
                    sign = (-1) ** i
                    for w in range(self.dimhat):
                        if vec[w]:
                            mat[cod_index[(T, w)]][col] += sign * vec[w]
            for i, j in itertools.combinations(range(len(T)), 2):
                bi, bj = T[i], T[j]
                comp = self.algebra.table[bi][bj]
                if not any(comp):
                    continue
                rest = tuple(x for p, x in enumerate(T) if p not in (i, j))
                sign_ij = (-1) ** (i + j)
                for m_idx in range(n):
                    c = comp[m_idx]
                    if not c or m_idx in rest:
                        continue
                    S = tuple(sorted(rest + (m_idx,)))
                    p = S.index(m_idx)
                    sgn = sign_ij * ((-1) ** p)
                    for u, col in dom_pos.get(S, ()):
                        mat[cod_index[(T, u)]][col] += sgn * c
        return mat

    # -- inner products ------------------------------------------------

    def gram_hat(self):
        g = extend_inner_product(self.algebra)
        ginv = linalg.mat_inv(g)
        n = self.algebra.dim
        out = [[Fraction(0)] * self.dimhat for _ in range(self.dimhat)]
        for a in range(self.dim0):
            ma = self.g0.matrices[a]
            for b in range(self.dim0):
                mb = self.g0.matrices[b]
                acc = linalg.mat_mul(linalg.mat_mul(ma, ginv), [list(c) for c in zip(*mb)])
                acc = linalg.mat_mul(acc, g)
                out[a][b] = sum(acc[i][i] for i in range(n))
        for i in range(n):
            for j in range(n):
                out[self.dim0 + i][self.dim0 + j] = g[i][j]
        return out

    def gram_forms(self, k: int):
        g = extend_inner_product(self.algebra)
        ginv = linalg.mat_inv(g)
        ghat = self.gram_hat()
        combos = list(itertools.combinations(range(self.algebra.dim), k))
        wedge = [[Fraction(0)] * len(combos) for _ in range(len(combos))]
        for a, S in enumerate(combos):
            for b, T in enumerate(combos):
                sub = [[ginv[s][t] for t in T] for s in S]
                wedge[a][b] = linalg.bareiss_det(sub) if k else Fraction(1)
        basis = self.form_basis(k)
        gk = [[Fraction(0)] * len(basis) for _ in range(len(basis))]
        for p, (S, u) in enumerate(basis):
            sa = combos.index(S)
            for q, (T, v) in enumerate(basis):
                tb = combos.index(T)
                if wedge[sa][tb] and ghat[u][v]:
                    gk[p][q] = wedge[sa][tb] * ghat[u][v]
        return gk

    def adjoint(self, k: int):
        """Matrix of the metric dual of the degree-k differential,
        mapping degree k+1 forms to degree k."""
        d = self.differential(k)
        gk = self.gram_forms(k)
        gk1 = self.gram_forms(k + 1)
        dt = [list(col) for col in zip(*d)]
        return linalg.mat_mul(linalg.mat_inv(gk), linalg.mat_mul(dt, gk1))


def spencer_differential(algebra: StratifiedAlgebra, k: int):
    return SpencerComplex(algebra).differential(k)


def spencer_adjoint(algebra: StratifiedAlgebra, k: int):
    return SpencerComplex(algebra).adjoint(k)


# -- standard algebras ---------------------------------------------------


def heisenberg_algebra(n: int = 1, lambdas: Optional[Sequence] = None) -> StratifiedAlgebra:
    """h_n with [X_i, Y_i] = Z and <X_j, X_j> = <Y_j, Y_j> = lambda_j^2."""
    names = [f"X{i+1}" for i in range(n)] + [f"Y{i+1}" for i in range(n)] + ["Z"]
    brackets = {(i, n + i): {2 * n: Fraction(1)} for i in range(n)}
    gram = None
    if lambdas is not None:
        lam = [Fraction(x) for x in lambdas]
        diag = [l * l for l in lam] + [l * l for l in lam]
        gram = [
            [diag[i] if i == j else Fraction(0) for j in range(2 * n)] for i in range(2 * n)
        ]
    return StratifiedAlgebra((2 * n, 1), names, brackets, gram)


def engel_algebra() -> StratifiedAlgebra:
    names = ["A1", "A2", "B", "C"]
    brackets = {(0, 1): {2: Fraction(1)}, (0, 2): {3: Fraction(1)}}
    return StratifiedAlgebra((2, 1, 1), names, brackets)
