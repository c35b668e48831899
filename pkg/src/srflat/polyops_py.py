"""Pure-Python kernels for sparse multivariate integer polynomials.

A polynomial is a dict mapping exponent tuples (all the same length) to
nonzero Python ints.  The zero polynomial is the empty dict.  These four
functions are the hot inner loop of every symbolic computation in the
package; `srflat._polyops` is a compiled drop-in replacement with the
same signatures (see `srflat.polycore` for backend selection).
"""


def poly_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def poly_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def poly_scale(a, c):
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    return {k: v * c for k, v in a.items()}


def poly_mul(a, b):
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(key, 0) + va * vb
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def poly_mul_term(a, expo, c):
    """Multiply by the single term c * X^expo."""
    if c == 0 or not a:
        return {}
    return {tuple(x + y for x, y in zip(k, expo)): v * c for k, v in a.items()}
