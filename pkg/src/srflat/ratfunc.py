"""Multivariate integer polynomials and normalized rational functions.

Polynomials are sparse dicts (see polyops_py); this module adds the
graded-lexicographic order, content/primitive decompositions, exact
division, a primitive-PRS gcd, and the canonical numerator/denominator
normalization used by the expression layer.

Canonical pair: num and den are integer polynomials with poly-gcd 1,
gcd(content(num), content(den)) = 1, and the grlex-leading coefficient
of den positive.  Dividing both by den's leading coefficient yields the
equivalent monic-denominator form over the rationals; the integer pair
is kept because it is unique and cheap to compare.
"""

from fractions import Fraction
from math import gcd as int_gcd

from .polycore import poly_add, poly_mul, poly_mul_term, poly_scale, poly_sub

__all__ = [
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_scale",
    "poly_const",
    "poly_var",
    "poly_pow",
    "grlex_key",
    "leading_term",
    "content",
    "primitive",
    "poly_gcd",
    "poly_divexact",
    "poly_derivative",
    "poly_eval_frac",
    "poly_eval_float",
    "poly_insert_vars",
    "poly_drop_vars",
    "ratnorm",
]


def poly_const(c, nvars):
    return {(0,) * nvars: c} if c else {}


def poly_var(i, nvars):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def poly_pow(a, k):
    if k < 0:
        raise ValueError("negative power on a polynomial")
    nvars = len(next(iter(a))) if a else 0
    out = poly_const(1, nvars)
    base = a
    while k:
        if k & 1:
            out = poly_mul(out, base)
        base = poly_mul(base, base)
        k >>= 1
    return out


def grlex_key(expo):
    return (sum(expo), expo)


def leading_term(a):
    """(exponent, coefficient) of the grlex-largest monomial."""
    k = max(a, key=grlex_key)
    return k, a[k]


def content(a):
    """Positive integer gcd of the coefficients (0 for the zero poly)."""
    g = 0
    for v in a.values():
        g = int_gcd(g, abs(v))
        if g == 1:
            return 1
    return g


def primitive(a):
    """Divide out the content; sign fixed so the leading coefficient > 0."""
    if not a:
        return a
    c = content(a)
    if leading_term(a)[1] < 0:
        c = -c
    if c == 1:
        return a
    return {k: v // c for k, v in a.items()}


def poly_divexact(a, b):
    """Exact division a / b; raises ValueError when not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    out = {}
    rem = dict(a)
    eb, cb = leading_term(b)
    while rem:
        er, cr = leading_term(rem)
        q = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in q) or cr % cb:
            raise ValueError("inexact polynomial division")
        c = cr // cb
        out[q] = c
        rem = poly_sub(rem, poly_mul_term(b, q, c))
    return out


def _max_degree(a, var):
    return max((k[var] for k in a), default=0)


def _to_univar(a, var):
    """Split into {degree: coefficient-poly-without-var}."""
    out = {}
    for k, v in a.items():
        d = k[var]
        kk = k[:var] + k[var + 1 :]
        coef = out.setdefault(d, {})
        coef[kk] = coef.get(kk, 0) + v
    return {d: {k: v for k, v in c.items() if v} for d, c in out.items() if c}


def _from_univar(u, var):
    out = {}
    for d, coef in u.items():
        for k, v in coef.items():
            out[k[:var] + (d,) + k[var:]] = v
    return out


def _uni_content(u):
    g = {}
    for coef in u.values():
        g = poly_gcd(g, coef)
        if g and sum(g.values()) == 1 and len(g) == 1 and not any(next(iter(g))):
            break
    return g


def _uni_scale(u, p):
    return {d: poly_mul(c, p) for d, c in u.items()}


def _uni_divexact(u, p):
    return {d: poly_divexact(c, p) for d, c in u.items()}


def _uni_prem(a, b, var_count):
    """Pseudo-remainder of univariate-with-poly-coefficient polynomials."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r.pop(dr)
        shift = dr - db
        nr = {}
        for d, c in r.items():
            nr[d] = poly_mul(c, lb)
        for d, c in b.items():
            if d == db:
                continue
            dd = d + shift
            t = poly_mul(c, lr)
            nr[dd] = poly_sub(nr.get(dd, {}), t)
        r = {d: c for d, c in nr.items() if c}
    return r


def _monomial_content(a):
    """Exponent-wise minimum over all monomials."""
    it = iter(a)
    m = list(next(it))
    for k in it:
        for i, e in enumerate(k):
            if e < m[i]:
                m[i] = e
        if not any(m):
            break
    return tuple(m)


def _shift_down(a, m):
    if not any(m):
        return a
    return {tuple(x - y for x, y in zip(k, m)): v for k, v in a.items()}


def _eval_uni_image(a, var, values):
    """Integer univariate image of a at integer values for the other
    variables, as a dense coefficient list."""
    deg = _max_degree(a, var)
    out = [0] * (deg + 1)
    for k, v in a.items():
        t = v
        for i, e in enumerate(k):
            if i != var and e:
                t *= values[i] ** e
        out[k[var]] += t
    while out and out[-1] == 0:
        out.pop()
    return out


def _gcd_uni_int(a, b):
    """Degree of gcd of two dense integer coefficient lists (primitive
    Euclid; only the degree is needed)."""
    a = a[:]
    b = b[:]
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        # pseudo remainder of a by b
        lb = b[-1]
        r = a[:]
        while r and len(r) >= len(b):
            lr = r[-1]
            shift = len(r) - len(b)
            r = [x * lb for x in r[:-1]]
            for i, c in enumerate(b[:-1]):
                r[shift + i] -= lr * c
            while r and r[-1] == 0:
                r.pop()
        g = 0
        for x in r:
            g = int_gcd(g, x)
            if g == 1:
                break
        if g > 1:
            r = [x // g for x in r]
        a, b = b, r
    return len(a) - 1 if a else -1


_PROBE_POINTS = ((5, -7, 11, -3, 13, 17, -19, 23), (9, 4, -13, 7, -5, 29, 31, -11))


def _probe_gcd_degree(a, b, var, nvars):
    """Sound upper bound for the gcd degree in `var`, or None when the
    probe is inconclusive.  Uses that the image of the gcd divides the
    gcd of the images whenever the image preserves the degree of one
    argument."""
    da, db = _max_degree(a, var), _max_degree(b, var)
    for pts in _PROBE_POINTS:
        values = [pts[i % len(pts)] + (i // len(pts)) for i in range(nvars)]
        ia = _eval_uni_image(a, var, values)
        ib = _eval_uni_image(b, var, values)
        if len(ia) - 1 == da or len(ib) - 1 == db:
            if not ia or not ib:
                continue
            return _gcd_uni_int(ia, ib)
    return None


def poly_gcd(a, b):
    """gcd up to integer content, primitive with positive leading
    coefficient.  Monomial content is split off first; a sound
    integer-image probe skips the PRS when the gcd is content-free."""
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    nvars = len(next(iter(a)))
    if nvars == 0:
        return {(): int_gcd(a[()], b[()])}
    ma, mb = _monomial_content(a), _monomial_content(b)
    mg = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(mg):
        a = _shift_down(a, mg)
        b = _shift_down(b, mg)
    used = [
        i
        for i in range(nvars)
        if _max_degree(a, i) > 0 or _max_degree(b, i) > 0
    ]
    unused = [i for i in range(nvars) if i not in used]
    if unused:
        core = _poly_gcd_core(
            poly_drop_vars(a, unused), poly_drop_vars(b, unused), len(used)
        )
        g = poly_insert_vars(core, unused, nvars)
    else:
        g = _poly_gcd_core(a, b, nvars)
    if any(mg):
        g = poly_mul_term(g, mg, 1)
    return primitive(g)


def _poly_gcd_core(a, b, nvars):
    if nvars == 0:
        return {(): int_gcd(a.get((), 0), b.get((), 0))}
    shared = [
        i for i in range(nvars) if _max_degree(a, i) > 0 and _max_degree(b, i) > 0
    ]
    if not shared:
        return {(0,) * nvars: 1}
    # probe every shared variable; a zero bound removes it from the gcd
    best_var, best_deg = None, None
    positive = []
    for v in shared:
        d = _probe_gcd_degree(a, b, v, nvars)
        if d == 0:
            # gcd free of v: reduce to the gcd of the v-coefficients
            ua = _to_univar(a, v)
            ub = _to_univar(b, v)
            g = {}
            for coef in list(ua.values()) + list(ub.values()):
                g = poly_gcd(g, coef)
                if len(g) == 1 and not any(next(iter(g))) and abs(g[next(iter(g))]) == 1:
                    return {(0,) * nvars: 1}
            return poly_insert_vars(g, (v,), nvars)
        if d is not None:
            positive.append((d, v))
    var = min(positive)[1] if positive else shared[-1]
    ua, ub = _to_univar(a, var), _to_univar(b, var)
    ca, cb = _uni_content(ua), _uni_content(ub)
    ua, ub = _uni_divexact(ua, ca), _uni_divexact(ub, cb)
    cg = poly_gcd(ca, cb)
    if max(ua) < max(ub):
        ua, ub = ub, ua
    while True:
        r = _uni_prem(ua, ub, nvars)
        if not r:
            break
        rc = _uni_content(r)
        r = _uni_divexact(r, rc)
        ua, ub = ub, r
        if max(ub) == 0:
            break
    if max(ub) == 0:
        return poly_insert_vars(cg, (var,), nvars)
    return poly_mul(_from_univar(ub, var), poly_insert_vars(cg, (var,), nvars))


def poly_derivative(a, var):
    out = {}
    for k, v in a.items():
        e = k[var]
        if e:
            kk = k[:var] + (e - 1,) + k[var + 1 :]
            out[kk] = out.get(kk, 0) + v * e
    return {k: v for k, v in out.items() if v}


def poly_eval_frac(a, values):
    total = Fraction(0)
    for k, v in a.items():
        t = Fraction(v)
        for e, x in zip(k, values):
            if e:
                t *= x**e
        total += t
    return total


def poly_eval_float(a, values):
    total = 0.0
    for k, v in a.items():
        t = float(v)
        for e, x in zip(k, values):
            if e:
                t *= x**e
        total += t
    return total


def poly_eval_float_abs(a, values):
    """Sum of |term| values: the cancellation envelope of the evaluation."""
    total = 0.0
    for k, v in a.items():
        t = float(abs(v))
        for e, x in zip(k, values):
            if e:
                t *= abs(x) ** e
        total += t
    return total


def poly_insert_vars(a, positions, new_nvars):
    """Insert zero-exponent axes so the result has new_nvars variables.

    `positions` are the axis indices (in the new numbering) being added.
    """
    pos = set(positions)
    out = {}
    for k, v in a.items():
        it = iter(k)
        out[tuple(0 if i in pos else next(it) for i in range(new_nvars))] = v
    return out


def poly_drop_vars(a, positions):
    """Remove axes that are zero in every monomial."""
    pos = set(positions)
    out = {}
    for k, v in a.items():
        out[tuple(x for i, x in enumerate(k) if i not in pos)] = v
    return out


def ratnorm(num, den, skip_gcd=False):
    """Canonicalize a rational function given by integer polynomials.

    `skip_gcd` asserts the pair is already polynomial-coprime (products
    of reduced fractions after cross-cancellation); content and sign
    normalization still run.
    """
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        nvars = len(next(iter(den)))
        return {}, poly_const(1, nvars)
    if not skip_gcd:
        g = poly_gcd(num, den)
        if len(g) > 1 or any(any(k) for k in g):
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
    cn, cd = content(num), content(den)
    c = int_gcd(cn, cd)
    if c > 1:
        num = {k: v // c for k, v in num.items()}
        den = {k: v // c for k, v in den.items()}
    if leading_term(den)[1] < 0:
        num = poly_scale(num, -1)
        den = poly_scale(den, -1)
    return num, den
