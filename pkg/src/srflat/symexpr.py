"""Symbolic scalar expressions over a coordinate chart.

An Expr is a canonical rational function with exact integer/rational
coefficients in the chart coordinates plus a set of transcendental
"atoms" (sin/cos/exp/log/atan/sqrt applied to inner expressions).  Atoms
are opaque generators: no trigonometric rewriting is attempted, so
equality of purely rational expressions is decided exactly while
anything involving atoms falls back to seeded numeric sampling.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import ratfunc as rf

FUNCTIONS = ("sin", "cos", "exp", "log", "atan", "sqrt")


class ExprError(Exception):
    pass


class ParseError(ExprError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DomainError(ExprError):
    pass


class SamplingError(ExprError):
    pass


class Chart:
    """An ordered set of coordinate names with optional open constraints.

    Each constraint is an expression required to be strictly positive on
    the domain (so "x" encodes x > 0).
    """

    def __init__(self, names: Sequence[str], constraints: Sequence[str] = ()):
        names = tuple(names)
        if len(names) < 1:
            raise ValueError("chart needs at least one coordinate")
        if len(set(names)) != len(names):
            raise ValueError("coordinate names must be distinct")
        self.names = names
        self.index = {nm: i for i, nm in enumerate(names)}
        self.constraints = tuple(parse(c, self) for c in constraints)

    @property
    def n(self) -> int:
        return len(self.names)

    def coord(self, name: str) -> "Expr":
        return coord(self, name)

    def zero(self) -> "Expr":
        return const(self, 0)

    def one(self) -> "Expr":
        return const(self, 1)

    def point_in_domain(self, point) -> bool:
        for c in self.constraints:
            try:
                if c.is_rational and all(isinstance(x, Fraction) for x in point):
                    if c.eval_exact(point) <= 0:
                        return False
                elif c.eval(point) <= 0:
                    return False
            except DomainError:
                return False
        return True

    def sample_point(self, rng: random.Random):
        return tuple(Fraction(rng.randint(-32, 32), 16) for _ in range(self.n))

    def sample_points(self, count: int, seed: int = 0, reject=None):
        """Seeded rational points satisfying the domain constraints.

        `reject` may veto points (used to skip poles of an expression
        under test).  Raises SamplingError after 100*count attempts.
        """
        rng = random.Random(seed)
        pts = []
        attempts = 0
        while len(pts) < count:
            attempts += 1
            if attempts > 100 * count:
                raise SamplingError(
                    f"could not find {count} valid domain points in {attempts - 1} attempts"
                )
            p = self.sample_point(rng)
            if not self.point_in_domain(p):
                continue
            if reject is not None and reject(p):
                continue
            pts.append(p)
        return pts

    def __repr__(self):
        return f"Chart{self.names}"


class Atom:
    """A unary elementary function applied to an inner expression."""

    __slots__ = ("fn", "arg", "_key")

    def __init__(self, fn: str, arg: "Expr"):
        self.fn = fn
        self.arg = arg
        self._key = (fn, arg.key)

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Atom) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        return f"{self.fn}({self.arg})"

    def eval(self, point) -> float:
        x = self.arg.eval(point)
        if self.fn == "sin":
            return math.sin(x)
        if self.fn == "cos":
            return math.cos(x)
        if self.fn == "exp":
            return math.exp(x)
        if self.fn == "atan":
            return math.atan(x)
        if self.fn == "log":
            if x <= 0:
                raise DomainError(f"log of non-positive value {x}")
            return math.log(x)
        if x < 0:
            raise DomainError(f"sqrt of negative value {x}")
        return math.sqrt(x)


class Expr:
    """Canonical rational function in chart coordinates and atoms.

    Invariants: num/den are coprime integer polynomials, den's leading
    coefficient (grlex) is positive, every atom axis is used, and the
    atom tuple is sorted.  Structural equality therefore decides
    equality of rational functions exactly.
    """

    __slots__ = ("chart", "atoms", "num", "den", "_keycache", "_diffcache")

    def __init__(self, chart, atoms, num, den):
        self.chart = chart
        self.atoms = atoms
        self.num = num
        self.den = den
        self._keycache = None
        self._diffcache = {}

    # -- construction ------------------------------------------------

    @staticmethod
    def _normalized(chart, atoms, num, den, skip_gcd=False):
        num, den = rf.ratnorm(num, den, skip_gcd=skip_gcd)
        n = chart.n
        used = [False] * len(atoms)
        for poly in (num, den):
            for k in poly:
                for i in range(len(atoms)):
                    if k[n + i]:
                        used[i] = True
        if not all(used):
            drop = tuple(n + i for i, u in enumerate(used) if not u)
            num = rf.poly_drop_vars(num, drop)
            den = rf.poly_drop_vars(den, drop)
            atoms = tuple(a for a, u in zip(atoms, used) if u)
        return Expr(chart, atoms, num, den)

    @property
    def nvars(self):
        return self.chart.n + len(self.atoms)

    @property
    def key(self):
        if self._keycache is None:
            self._keycache = (
                tuple(sorted(self.num.items())),
                tuple(sorted(self.den.items())),
                tuple(a.key for a in self.atoms),
            )
        return self._keycache

    @property
    def is_rational(self) -> bool:
        return not self.atoms

    @property
    def is_zero_expr(self) -> bool:
        return not self.num

    def as_fraction(self) -> Optional[Fraction]:
        """The exact constant value, or None if not a rational constant."""
        if self.atoms:
            return None
        nc = [v for k, v in self.num.items() if any(k)]
        dc = [v for k, v in self.den.items() if any(k)]
        if nc or dc:
            return None
        return Fraction(self.num.get((0,) * self.nvars, 0), self.den[(0,) * self.nvars])

    # -- arithmetic --------------------------------------------------

    def _merge(self, other):
        if self.chart is not other.chart and self.chart.names != other.chart.names:
            raise ExprError("expressions over different charts")
        if self.atoms == other.atoms:
            return self.atoms, self.num, self.den, other.num, other.den
        merged = sorted(set(self.atoms) | set(other.atoms), key=lambda a: a.key)
        merged = tuple(merged)
        n = self.chart.n
        nv = n + len(merged)

        def remap(e):
            pos = {a: n + i for i, a in enumerate(merged)}
            src = [pos[a] for a in e.atoms]
            out_num, out_den = {}, {}
            for poly, out in ((e.num, out_num), (e.den, out_den)):
                for k, v in poly.items():
                    kk = [0] * nv
                    for i in range(n):
                        kk[i] = k[i]
                    for j, p in enumerate(src):
                        kk[p] = k[n + j]
                    out[tuple(kk)] = v
            return out_num, out_den

        n1, d1 = remap(self)
        n2, d2 = remap(other)
        return merged, n1, d1, n2, d2

    def _coerce(self, other):
        if isinstance(other, Expr):
            return other
        if isinstance(other, (int, Fraction)):
            return const(self.chart, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero_expr:
            return other
        if other.is_zero_expr:
            return self
        atoms, n1, d1, n2, d2 = self._merge(other)
        if d1 == d2:
            return Expr._normalized(self.chart, atoms, rf.poly_add(n1, n2), d1)
        g = rf.poly_gcd(d1, d2)
        if _poly_is_one(g):
            num = rf.poly_add(rf.poly_mul(n1, d2), rf.poly_mul(n2, d1))
            den = rf.poly_mul(d1, d2)
        else:
            t1 = rf.poly_divexact(d1, g)
            t2 = rf.poly_divexact(d2, g)
            num = rf.poly_add(rf.poly_mul(n1, t2), rf.poly_mul(n2, t1))
            den = rf.poly_mul(d1, t2)
        return Expr._normalized(self.chart, atoms, num, den)

    __radd__ = __add__

    def __neg__(self):
        return Expr(self.chart, self.atoms, rf.poly_scale(self.num, -1), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero_expr or other.is_zero_expr:
            return const(self.chart, 0)
        atoms, n1, d1, n2, d2 = self._merge(other)
        n1, d2 = _cross_cancel(n1, d2)
        n2, d1 = _cross_cancel(n2, d1)
        return Expr._normalized(
            self.chart, atoms, rf.poly_mul(n1, n2), rf.poly_mul(d1, d2), skip_gcd=True
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero_expr:
            raise ZeroDivisionError("division by the zero expression")
        atoms, n1, d1, n2, d2 = self._merge(other)
        n1, n2 = _cross_cancel(n1, n2)
        d1, d2 = _cross_cancel(d1, d2)
        return Expr._normalized(
            self.chart, atoms, rf.poly_mul(n1, d2), rf.poly_mul(d1, n2), skip_gcd=True
        )

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return const(self.chart, 1)
        num, den = self.num, self.den
        if k < 0:
            if not num:
                raise ZeroDivisionError("zero expression to a negative power")
            num, den = den, num
            if rf.leading_term(den)[1] < 0:
                num = rf.poly_scale(num, -1)
                den = rf.poly_scale(den, -1)
            k = -k
        return Expr(self.chart, self.atoms, rf.poly_pow(num, k), rf.poly_pow(den, k))

    def __eq__(self, other):
        if not isinstance(other, Expr):
            if isinstance(other, (int, Fraction)):
                return self.as_fraction() == other
            return NotImplemented
        return self.chart.names == other.chart.names and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    # -- calculus ----------------------------------------------------

    def diff(self, name: str) -> "Expr":
        if name not in self.chart.index:
            raise ExprError(f"unknown coordinate {name!r}")
        cached = self._diffcache.get(name)
        if cached is not None:
            return cached
        ci = self.chart.index[name]
        n = self.chart.n

        def total(poly):
            """Sum over generators of d(poly)/dg * dg/dname as an Expr."""
            out = _raw(self.chart, self.atoms, rf.poly_derivative(poly, ci), _one(self.nvars))
            for j, a in enumerate(self.atoms):
                part = rf.poly_derivative(poly, n + j)
                if not part:
                    continue
                out = out + _raw(self.chart, self.atoms, part, _one(self.nvars)) * _atom_diff(a, name)
            return out

        nume = _raw(self.chart, self.atoms, self.num, _one(self.nvars))
        dene = _raw(self.chart, self.atoms, self.den, _one(self.nvars))
        res = (total(self.num) * dene - nume * total(self.den)) / (dene * dene)
        self._diffcache[name] = res
        return res

    # -- evaluation --------------------------------------------------

    def _gen_values_float(self, point):
        vals = [float(x) for x in point]
        vals.extend(a.eval(point) for a in self.atoms)
        return vals

    def eval(self, point) -> float:
        """IEEE-double evaluation; raises DomainError at invalid points."""
        if len(point) != self.chart.n:
            raise ExprError("point dimension mismatch")
        vals = self._gen_values_float(point)
        d = rf.poly_eval_float(self.den, vals)
        if d == 0.0:
            raise DomainError("division by zero at evaluation point")
        return rf.poly_eval_float(self.num, vals) / d

    def eval_exact(self, point) -> Fraction:
        if self.atoms:
            raise DomainError("exact evaluation requires a rational expression")
        point = [Fraction(x) for x in point]
        d = rf.poly_eval_frac(self.den, point)
        if d == 0:
            raise DomainError("division by zero at evaluation point")
        return rf.poly_eval_frac(self.num, point) / d

    def eval_envelope(self, point) -> float:
        """|value| scale from the absolute-value sum of numerator terms."""
        vals = self._gen_values_float(point)
        d = rf.poly_eval_float(self.den, vals)
        if d == 0.0:
            raise DomainError("division by zero at evaluation point")
        return rf.poly_eval_float_abs(self.num, vals) / abs(d)

    # -- printing ----------------------------------------------------

    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return f"Expr({to_string(self)})"


def _one(nvars):
    return {(0,) * nvars: 1}


def _poly_is_one(p):
    return len(p) == 1 and abs(next(iter(p.values()))) == 1 and not any(next(iter(p)))


def _cross_cancel(a, b):
    """Divide a common factor out of two polynomials (for products of
    reduced fractions, where cancellation only happens crosswise)."""
    if not a or not b:
        return a, b
    g = rf.poly_gcd(a, b)
    if _poly_is_one(g):
        return a, b
    return rf.poly_divexact(a, g), rf.poly_divexact(b, g)


def _raw(chart, atoms, num, den):
    return Expr._normalized(chart, atoms, num, den)


def const(chart: Chart, value) -> Expr:
    value = Fraction(value)
    num = {(0,) * chart.n: value.numerator} if value else {}
    return Expr(chart, (), num, {(0,) * chart.n: value.denominator})


def coord(chart: Chart, name: str) -> Expr:
    if name not in chart.index:
        raise ExprError(f"unknown coordinate {name!r}")
    return Expr(chart, (), rf.poly_var(chart.index[name], chart.n), _one(chart.n))


def _atom_expr(atom: Atom) -> Expr:
    chart = atom.arg.chart
    nv = chart.n + 1
    e = [0] * nv
    e[chart.n] = 1
    return Expr(chart, (atom,), {tuple(e): 1}, _one(nv))


def _sqrt_fraction(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    pn, pd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if pn * pn == q.numerator and pd * pd == q.denominator:
        return Fraction(pn, pd)
    return None


_CONST_FOLDS = {"sin": (0, 0), "cos": (0, 1), "exp": (0, 1), "atan": (0, 0), "log": (1, 0)}


def apply_function(fn: str, arg: Expr) -> Expr:
    """Build fn(arg), folding the exact rational special values."""
    if fn not in FUNCTIONS:
        raise ExprError(f"unknown function {fn!r}")
    c = arg.as_fraction()
    if c is not None:
        if fn == "sqrt":
            r = _sqrt_fraction(c)
            if r is not None:
                return const(arg.chart, r)
            if c < 0:
                raise DomainError("sqrt of a negative constant")
        elif _CONST_FOLDS[fn][0] == c:
            return const(arg.chart, _CONST_FOLDS[fn][1])
        if fn == "log" and c <= 0:
            raise DomainError("log of a non-positive constant")
    return _atom_expr(Atom(fn, arg))


def _atom_diff(atom: Atom, name: str) -> Expr:
    u = atom.arg
    du = u.diff(name)
    if du.is_zero_expr:
        return du
    one = const(u.chart, 1)
    if atom.fn == "sin":
        return _atom_expr(Atom("cos", u)) * du
    if atom.fn == "cos":
        return -_atom_expr(Atom("sin", u)) * du
    if atom.fn == "exp":
        return _atom_expr(atom) * du
    if atom.fn == "log":
        return du / u
    if atom.fn == "atan":
        return du / (one + u * u)
    return du / (_atom_expr(atom) * 2)


# -- operations on expressions ---------------------------------------


def diff(e: Expr, name: str) -> Expr:
    return e.diff(name)


def simplify(e: Expr) -> Expr:
    """Expressions are canonicalized on construction; idempotent."""
    return e


def evaluate(e: Expr, point) -> float:
    return e.eval(point)


# -- parser -----------------------------------------------------------


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self):
        c = self.peek()
        self.pos += 1
        return c

    def number(self):
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", self.pos)
        return int(self.text[start : self.pos])

    def ident(self):
        self._skip()
        start = self.pos
        ch = self.text[self.pos]
        if not (ch.isalpha() or ch == "_"):
            raise ParseError("expected an identifier", self.pos)
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]


def parse(text: str, chart: Chart) -> Expr:
    """Parse the expression grammar over the chart coordinates.

    expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
    factor := base ('^' integer)? ;
    base := number | ident | func '(' expr ')' | '(' expr ')' | '-' base
    """
    tk = _Tokens(text)

    def p_expr():
        e = p_term()
        while tk.peek() in ("+", "-"):
            op = tk.take()
            t = p_term()
            e = e + t if op == "+" else e - t
        return e

    def p_term():
        e = p_factor()
        while tk.peek() in ("*", "/"):
            op = tk.take()
            f = p_factor()
            if op == "*":
                e = e * f
            else:
                if f.is_zero_expr:
                    raise ParseError("division by zero", tk.pos)
                e = e / f
        return e

    def p_factor():
        e = p_base()
        if tk.peek() == "^":
            tk.take()
            sign = 1
            if tk.peek() == "-":
                tk.take()
                sign = -1
            k = tk.number()
            e = e ** (sign * k)
        return e

    def p_base():
        c = tk.peek()
        if c is None:
            raise ParseError("unexpected end of input", tk.pos)
        if c == "-":
            tk.take()
            return -p_base()
        if c == "(":
            tk.take()
            e = p_expr()
            if tk.peek() != ")":
                raise ParseError("expected ')'", tk.pos)
            tk.take()
            return e
        if c.isdigit():
            return const(chart, tk.number())
        if c.isalpha() or c == "_":
            pos = tk.pos
            name = tk.ident()
            if name in FUNCTIONS:
                if tk.peek() != "(":
                    raise ParseError(f"expected '(' after {name}", tk.pos)
                tk.take()
                e = p_expr()
                if tk.peek() != ")":
                    raise ParseError("expected ')'", tk.pos)
                tk.take()
                return apply_function(name, e)
            if name in chart.index:
                return coord(chart, name)
            raise ParseError(f"unknown identifier {name!r}", pos)
        raise ParseError(f"unexpected character {c!r}", tk.pos)

    e = p_expr()
    if tk.peek() is not None:
        raise ParseError(f"unexpected trailing input {tk.peek()!r}", tk.pos)
    return e


# -- printer ----------------------------------------------------------


def _poly_to_string(poly, gens):
    if not poly:
        return "0"
    items = sorted(poly.items(), key=lambda kv: rf.grlex_key(kv[0]), reverse=True)
    pieces = []
    for expo, coeff in items:
        factors = []
        for g, e in zip(gens, expo):
            if e == 1:
                factors.append(g)
            elif e > 1:
                factors.append(f"{g}^{e}")
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        if not pieces:
            pieces.append(term if coeff > 0 else f"-{term}")
        else:
            pieces.append(f"+ {term}" if coeff > 0 else f"- {term}")
    return " ".join(pieces)


def to_string(e: Expr) -> str:
    gens = list(e.chart.names) + [str(a) for a in e.atoms]
    num = _poly_to_string(e.num, gens)
    if e.den == _one(e.nvars):
        return num
    den = _poly_to_string(e.den, gens)
    return f"({num})/({den})"


# -- zero testing ------------------------------------------------------


@dataclass(frozen=True)
class SampleConfig:
    samples: int = 32
    tol: float = 1e-9
    seed: int = 0


@dataclass(frozen=True)
class ZeroVerdict:
    kind: str  # ProvenZero | ProvenNonZero | NumericallyZero | NumericallyNonZero
    witness: Optional[tuple] = None
    value: Optional[float] = None
    samples: int = 0
    max_abs: float = 0.0

    @property
    def is_zero(self) -> bool:
        return self.kind in ("ProvenZero", "NumericallyZero")

    @property
    def proven(self) -> bool:
        return self.kind in ("ProvenZero", "ProvenNonZero")

    def __str__(self):
        if self.kind == "ProvenZero":
            return "ProvenZero"
        if self.kind == "ProvenNonZero":
            return f"ProvenNonZero(witness={self.witness})"
        if self.kind == "NumericallyZero":
            return f"NumericallyZero(samples={self.samples}, max|v|={self.max_abs:.3e})"
        return f"NumericallyNonZero(witness={self.witness}, value={self.value:.6g})"


def is_zero(e: Expr, chart: Optional[Chart] = None, config: SampleConfig = SampleConfig()) -> ZeroVerdict:
    """Decide whether e vanishes identically on its domain.

    Rational expressions get an exact verdict from the canonical form;
    atom-bearing expressions are sampled at `config.samples` seeded
    rational points, scaled by the evaluated magnitude envelope.
    """
    chart = chart or e.chart
    if e.is_rational:
        if e.is_zero_expr:
            return ZeroVerdict("ProvenZero")
        rng = random.Random(config.seed)
        for _ in range(100 * max(config.samples, 1)):
            p = chart.sample_point(rng)
            if not chart.point_in_domain(p):
                continue
            try:
                v = e.eval_exact(p)
            except DomainError:
                continue
            if v != 0:
                return ZeroVerdict("ProvenNonZero", witness=p, value=float(v))
        raise SamplingError("no nonzero witness found for a canonically nonzero expression")

    def bad(p):
        try:
            e.eval(p)
            return False
        except DomainError:
            return True

    pts = chart.sample_points(config.samples, seed=config.seed, reject=bad)
    worst_p, worst_v, max_abs = None, 0.0, 0.0
    ok = True
    for p in pts:
        v = e.eval(p)
        env = max(1.0, e.eval_envelope(p))
        if abs(v) > config.tol * env:
            ok = False
        if abs(v) > max_abs:
            max_abs, worst_p, worst_v = abs(v), p, v
    if ok:
        return ZeroVerdict("NumericallyZero", samples=len(pts), max_abs=max_abs)
    return ZeroVerdict("NumericallyNonZero", witness=worst_p, value=worst_v, samples=len(pts), max_abs=max_abs)
