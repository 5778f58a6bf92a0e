"""Dense univariate polynomials over F_p.

Coefficients are stored ascending as reduced ints; the zero polynomial is the
empty tuple and its degree is ``NEG_INF``, never -1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import DuplicateNode, ModulusMismatch, ParseError, ZeroPolynomial
from .field import FieldCtx, FieldElem, char_guard

NEG_INF = float("-inf")

# schoolbook below this length, evaluation/interpolation above
MUL_INTERP_THRESHOLD = 512


def _trim(coeffs: Iterable[int], p: int) -> tuple[int, ...]:
    c = [int(v) % p for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class DensePoly:
    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", _trim(coeffs, ctx.p))

    # constructors
    @classmethod
    def const(cls, ctx: FieldCtx, c: int) -> "DensePoly":
        return cls(ctx, [c])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "DensePoly":
        return cls(ctx, [0, 1])

    @classmethod
    def from_roots(cls, ctx: FieldCtx, roots: Iterable[int]) -> "DensePoly":
        out = cls(ctx, [1])
        for r in roots:
            out = out * cls(ctx, [-r, 1])
        return out

    # structure
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def elems(self) -> list[FieldElem]:
        return [FieldElem(c, self.ctx) for c in self.coeffs]

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def padded(self, n: int) -> list[int]:
        """Coefficients padded with zeros to length n."""
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    def _check(self, other: "DensePoly"):
        if not isinstance(other, DensePoly):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ModulusMismatch(f"{self.ctx.p} vs {other.ctx.p}")
        return other

    def _coerce(self, other):
        if isinstance(other, int):
            return DensePoly(self.ctx, [other])
        if isinstance(other, FieldElem):
            return DensePoly(self.ctx, [other.value])
        return self._check(other)

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return poly_pow(self, e)

    def __call__(self, point) -> int:
        return poly_eval(self, point)

    def scale(self, c: int) -> "DensePoly":
        return DensePoly(self.ctx, [v * c for v in self.coeffs])

    def shift(self, k: int) -> "DensePoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return DensePoly(self.ctx, [0] * k + list(self.coeffs))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"DensePoly({format_poly(self)!r}, p={self.ctx.p})"


def poly_add(f: DensePoly, g: DensePoly) -> DensePoly:
    f._check(g)
    n = max(len(f.coeffs), len(g.coeffs))
    return DensePoly(f.ctx, [a + b for a, b in zip(f.padded(n), g.padded(n))])


def poly_mul(f: DensePoly, g: DensePoly) -> DensePoly:
    f._check(g)
    if f.is_zero or g.is_zero:
        return DensePoly(f.ctx)
    if min(len(f.coeffs), len(g.coeffs)) > MUL_INTERP_THRESHOLD and f.ctx.p > len(f.coeffs) + len(g.coeffs):
        return poly_mul_interp(f, g)
    return poly_mul_schoolbook(f, g)


def poly_mul_schoolbook(f: DensePoly, g: DensePoly) -> DensePoly:
    ctx = f.ctx
    if f.is_zero or g.is_zero:
        return DensePoly(ctx)
    if K.use_jit(ctx):
        a = np.array(f.coeffs, dtype=np.int64)
        b = np.array(g.coeffs, dtype=np.int64)
        # float-free exact convolution: chunks keep partial sums below 2^63
        return DensePoly(ctx, K.tolist(_conv_int64(a, b, ctx.p)))
    p = ctx.p
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] += a * b
    return DensePoly(ctx, [v % p for v in out])


def _conv_int64(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    limit = (1 << 62) // max((p - 1) ** 2, 1)
    if min(len(a), len(b)) <= limit:
        return np.convolve(a, b) % p
    if len(a) > len(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for s in range(0, len(a), limit):
        part = np.convolve(a[s : s + limit], b) % p
        out[s : s + len(part)] = (out[s : s + len(part)] + part) % p
    return out


def poly_mul_interp(f: DensePoly, g: DensePoly) -> DensePoly:
    """Product by evaluation at 0..D and interpolation."""
    ctx = f.ctx
    D = f.degree + g.degree
    char_guard(ctx, D)
    nodes = list(range(D + 1))
    vf = eval_many(f, nodes)
    vg = eval_many(g, nodes)
    vals = [a * b % ctx.p for a, b in zip(vf, vg)]
    return interpolate_consecutive(ctx, vals)


def poly_pow(f: DensePoly, e: int) -> DensePoly:
    if e < 0:
        raise ValueError("negative exponent")
    out = DensePoly(f.ctx, [1])
    base = f
    while e:
        if e & 1:
            out = out * base
        e >>= 1
        if e:
            base = base * base
    return out


def poly_derivative(f: DensePoly, r: int = 1) -> DensePoly:
    if r < 0:
        raise ValueError("derivative order must be >= 0")
    c = list(f.coeffs)
    p = f.ctx.p
    for _ in range(r):
        c = [(i * c[i]) % p for i in range(1, len(c))]
    return DensePoly(f.ctx, c)


def poly_eval(f: DensePoly, point) -> int:
    x = int(point) % f.ctx.p
    p = f.ctx.p
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % p
    return acc


def eval_many(f: DensePoly, points: Sequence[int]) -> list[int]:
    return [poly_eval(f, x) for x in points]


def reverse(f: DensePoly, n: int | None = None) -> DensePoly:
    """rev(f) = x^n f(1/x) at n = deg f unless a larger declared degree is given."""
    if f.is_zero:
        raise ZeroPolynomial("reverse of the zero polynomial")
    if n is None:
        n = f.degree
    return DensePoly(f.ctx, list(reversed(f.padded(n + 1))))


def interpolate_coeffs(ctx: FieldCtx, evals: Sequence[tuple[int, int]]) -> DensePoly:
    """Unique polynomial of degree < len(evals) through the given pairs."""
    if not evals:
        raise ValueError("need at least one point")
    p = ctx.p
    xs = [int(a) % p for a, _ in evals]
    ys = [int(b) % p for _, b in evals]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("interpolation nodes must be distinct")
    if xs == list(range(len(xs))):
        return interpolate_consecutive(ctx, ys)
    n = len(xs)
    master = [1]
    for a in xs:
        master = _mul_linear(master, a, p)
    out = [0] * n
    for a, b in zip(xs, ys):
        if b == 0:
            continue
        q = _div_linear(master, a, p)
        denom = 1
        for a2 in xs:
            if a2 != a:
                denom = denom * (a - a2) % p
        w = b * pow(denom, p - 2, p) % p
        for k in range(n):
            out[k] = (out[k] + w * q[k]) % p
    return DensePoly(ctx, out)


def interpolate_consecutive(ctx: FieldCtx, vals: Sequence[int]) -> DensePoly:
    """Interpolate through (i, vals[i]) for the default nodes i = 0..D."""
    D = len(vals) - 1
    char_guard(ctx, D)
    k = K.kern(ctx)
    _, invfact = K.tables(ctx, D)
    return DensePoly(ctx, K.tolist(k.interp_consec(K.arr(ctx, vals), ctx.p, invfact)))


def _mul_linear(c: list[int], a: int, p: int) -> list[int]:
    out = [0] * (len(c) + 1)
    for i, v in enumerate(c):
        out[i + 1] = (out[i + 1] + v) % p
        out[i] = (out[i] - a * v) % p
    return out


def _div_linear(c: list[int], a: int, p: int) -> list[int]:
    """Quotient of c by (x - a), assuming exactness."""
    n = len(c) - 1
    q = [0] * n
    carry = 0
    for k in range(n, 0, -1):
        carry = (c[k] + carry * a) % p
        q[k - 1] = carry
    return q


def leading_coeff_select(coeffs_high_to_low: Sequence) -> int:
    """First nonzero entry scanning from the top, else 0 (select semantics)."""
    for c in coeffs_high_to_low:
        if int(c) != 0:
            return c
    return 0


def make_monic(f: DensePoly) -> tuple[DensePoly, int]:
    if f.is_zero:
        raise ZeroPolynomial("cannot normalise the zero polynomial")
    lc = f.lc
    return f.scale(f.ctx.inv(lc)), lc


def esym_values(ctx: FieldCtx, values: Sequence[int], d: int) -> int:
    """e_d(values) by expanding prod(1 + y v_i) at y = 0..n and interpolating."""
    n = len(values)
    if d > n or d < 0:
        return 0
    char_guard(ctx, n)
    p = ctx.p
    vals = []
    for y in range(n + 1):
        acc = 1
        for v in values:
            acc = acc * (1 + y * int(v)) % p
        vals.append(acc)
    return interpolate_consecutive(ctx, vals).coeff(d)


@lru_cache(maxsize=256)
def vandermonde_inverse(ctx: FieldCtx, D: int) -> tuple[tuple[int, ...], ...]:
    """Rows give interpolation weights for nodes 0..D: coeff_k = sum_i W[k][i] v_i."""
    char_guard(ctx, D)
    cols = []
    for i in range(D + 1):
        e = [0] * (D + 1)
        e[i] = 1
        cols.append(interpolate_consecutive(ctx, e).padded(D + 1))
    return tuple(tuple(cols[i][k] for i in range(D + 1)) for k in range(D + 1))


# ---- text format ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*^(),]))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _ExprParser:
    """Recursive descent over + - * ^ ( ) with a single variable."""

    def __init__(self, ctx: FieldCtx, text: str, var: str):
        self.ctx = ctx
        self.toks = _tokens(text)
        self.i = 0
        self.var = var

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> DensePoly:
        if not self.toks:
            raise ParseError("empty polynomial")
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near token {self.i}")
        return out

    def expr(self) -> DensePoly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> DensePoly:
        acc = self.power()
        while True:
            nxt = self.peek()
            if nxt == ("op", "*"):
                self.take()
                acc = acc * self.power()
            elif nxt[0] in ("num", "name") or nxt == ("op", "("):
                acc = acc * self.power()  # implicit product, e.g. 3x
            else:
                return acc

    def power(self) -> DensePoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            base = base**e
        return base

    def atom(self) -> DensePoly:
        kind, val = self.take()
        if kind == "num":
            return DensePoly(self.ctx, [val])
        if kind == "name":
            if val != self.var:
                raise ParseError(f"unknown variable {val!r}")
            return DensePoly.x(self.ctx)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(ctx: FieldCtx, text: str, var: str = "x") -> DensePoly:
    """Read either an ascending comma list "2,3,1" or an expression "x^2+3*x+2"."""
    s = text.strip()
    if re.fullmatch(r"\s*-?\d+(\s*,\s*-?\d+)+\s*,?\s*", s):
        return DensePoly(ctx, [int(t) for t in s.split(",") if t.strip()])
    return _ExprParser(ctx, s, var).parse()


def format_poly(f: DensePoly, var: str = "x") -> str:
    """Expression syntax, highest degree first, zero terms suppressed."""
    if f.is_zero:
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.ctx.signed(f.coeffs[i])
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)
