"""Resultants, discriminants and structured matrices (Sylvester, Bezout,
triangular Toeplitz), remainders, composed sums/products and implicitization.

The remainder and the Sylvester adjugate are computed from symmetric
functions of the roots of one input: a discriminant-scaled Lagrange
interpolation that needs no division until the final scaling. When that
discriminant vanishes the code falls back to classical long division or a
characteristic-polynomial adjugate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import (
    DegenerateParameterization,
    DegreeTooHigh,
    NotCoprime,
    SingularMatrix,
    ZeroPolynomial,
)
from .field import FieldCtx, char_guard
from .newton import _require_monic, exact_div, to_power_sums
from .symroots import ParamPoly, esym_over_roots
from .upoly import DensePoly, interpolate_consecutive, poly_derivative


@dataclass(frozen=True)
class Matrix:
    ctx: FieldCtx
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must be rows*cols")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(ctx, r, c, tuple(int(v) % ctx.p for row in rows for v in row))

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "Matrix":
        return cls.from_rows(ctx, [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def signed_rows(self) -> list[list[int]]:
        return [[self.ctx.signed(v) for v in row] for row in self.to_rows()]

    def to_json(self) -> str:
        return json.dumps(self.signed_rows())

    def scale(self, c: int) -> "Matrix":
        p = self.ctx.p
        return Matrix(self.ctx, self.rows, self.cols, tuple(v * c % p for v in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix.from_rows(self.ctx, [list(col) for col in zip(*self.to_rows())])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix.from_rows(self.ctx, [row[c0:c1] for row in self.to_rows()[r0:r1]])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        prod = _matmul_obj(self.to_rows(), other.to_rows(), self.ctx.p)
        return Matrix.from_rows(self.ctx, prod) if self.rows else Matrix(self.ctx, 0, other.cols, ())

    def __str__(self):
        return self.to_json()


def _matmul_obj(A, B, p):
    a = np.array(A, dtype=object).reshape(len(A), -1)
    b = np.array(B, dtype=object).reshape(len(B), -1)
    return [[int(v) % p for v in row] for row in a.dot(b)]


# ---- Sylvester matrix, resultant, discriminant -----------------------------


def sylvester_matrix(f: DensePoly, g: DensePoly) -> Matrix:
    """First deg g columns: f's coefficients (top-down) shifted down one row per
    column; last deg f columns: the same for g."""
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("Sylvester matrix of a zero polynomial")
    n, m = f.degree, g.degree
    N = n + m
    S = [[0] * N for _ in range(N)]
    fc, gc = f.coeffs[::-1], g.coeffs[::-1]
    for j in range(m):
        for i, v in enumerate(fc):
            S[i + j][j] = v
    for j in range(n):
        for i, v in enumerate(gc):
            S[i + j][m + j] = v
    return Matrix.from_rows(f.ctx, S)


def resultant(f: DensePoly, g: DensePoly) -> int:
    """res(f, g) = prod g(alpha) over the roots of monic f, i.e. e_n(g(alpha))."""
    _require_monic(f)
    n = f.degree
    char_guard(f.ctx, n)
    if n == 0:
        return 1
    if g.is_zero:
        return 0
    return esym_over_roots(f, g, n)


def discriminant(f: DensePoly) -> int:
    _require_monic(f)
    n = f.degree
    char_guard(f.ctx, n)
    if n <= 1:
        return 1
    r = resultant(f, poly_derivative(f))
    return r if comb(n, 2) % 2 == 0 else (-r) % f.ctx.p


# ---- the discriminant-scaled Lagrange step ---------------------------------


def _lagrange_scaled(g: DensePoly, C: DensePoly, rows: Sequence[Sequence[int]], nx: int) -> list[list[int]]:
    """For each row A (ascending coefficients) the polynomial in x of degree < nx
    given by the y^(m-1) coefficient of prod over roots b of g of
    A(b) + y (x - b) C(b)."""
    ctx = g.ctx
    m = g.degree
    if m == 0:
        return [[0] * nx for _ in rows]
    W = max(1, max((len(r) for r in rows), default=1))
    ps = to_power_sums(g, m + W - 2).sums if m + W - 2 >= 0 else (m,)
    inv, invfact = K.tables(ctx, max(m, nx))
    out = K.kern(ctx).y_top_coeffs(
        K.arr(ctx, g.coeffs),
        K.arr(ctx, ps),
        K.arr(ctx, C.coeffs or (0,)),
        K.arr2(ctx, rows, W),
        nx,
        ctx.p,
        inv,
        invfact,
    )
    return [K.tolist(r) for r in out]


# ---- classical fallbacks (used only when a discriminant vanishes) ----------


def _classical_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    q = [0] * max(len(a) - len(b) + 1, 0)
    il = pow(b[-1], p - 2, p)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * il % p
        q[k] = c
        if c:
            for j, v in enumerate(b):
                a[k + j] = (a[k + j] - c * v) % p
    return q, a[: len(b) - 1]


def _faddeev_adjugate(S: Matrix) -> Matrix:
    """adj(S) from the Faddeev-LeVerrier recurrence; needs p > size."""
    ctx = S.ctx
    p = ctx.p
    N = S.rows
    char_guard(ctx, N)
    A = np.array(S.to_rows(), dtype=object)
    I = np.identity(N, dtype=object)
    M = np.zeros((N, N), dtype=object)
    c = 1
    for k in range(1, N + 1):
        M = (A.dot(M) + c * I) % p
        AM = A.dot(M) % p
        c = (-int(np.trace(AM)) * ctx.inv(k)) % p
    sign = 1 if (N - 1) % 2 == 0 else -1
    return Matrix.from_rows(ctx, [[int(v) * sign % p for v in row] for row in M])


# ---- remainder and division ------------------------------------------------


def remainder(f: DensePoly, g: DensePoly) -> DensePoly:
    """f mod monic g.

    rho(x) = sum_i f(b_i) prod_{j != i} (x - b_j) g'(b_j) equals
    (-1)^C(m,2) disc(g) times the remainder.
    """
    _require_monic(g)
    ctx = g.ctx
    m = g.degree
    if m == 0 or f.is_zero:
        return DensePoly(ctx)
    char_guard(ctx, max(f.degree, m))
    dg = discriminant(g)
    if dg == 0:
        return DensePoly(ctx, _classical_divmod(list(f.coeffs), list(g.coeffs), ctx.p)[1])
    rho = _lagrange_scaled(g, poly_derivative(g), [f.coeffs], m)[0]
    s = dg if comb(m, 2) % 2 == 0 else (-dg) % ctx.p
    return DensePoly(ctx, rho).scale(ctx.inv(s))


def div_rem(f: DensePoly, g: DensePoly) -> tuple[DensePoly, DensePoly]:
    r = remainder(f, g)
    ctx = g.ctx
    if f == r:
        return DensePoly(ctx), r
    d = f - r
    lc = d.lc
    return exact_div(d.scale(ctx.inv(lc)), g).scale(lc), r


# ---- Sylvester adjugate and inverse ----------------------------------------


def _adjugate_columns(f: DensePoly, g: DensePoly, cols: Iterable[int]) -> dict[int, tuple[DensePoly, DensePoly]]:
    """Column l of adj Syl(f, g) as (A_l, B_l) with A_l f + B_l g = res x^(n+m-1-l).

    A_l (degree < m) comes from the roots of g, B_l (degree < n) from the
    roots of f; when one discriminant is zero that half is recovered from
    the other by exact division, and when both are zero the adjugate is
    taken from the characteristic polynomial.
    """
    ctx = f.ctx
    p = ctx.p
    n, m = f.degree, g.degree
    N = n + m
    cols = list(cols)
    res = resultant(f, g)
    dg, df = discriminant(g), discriminant(f)
    if dg == 0 and df == 0:
        adj = _faddeev_adjugate(sylvester_matrix(f, g))
        out = {}
        for l in cols:
            col = [adj[i, l] for i in range(N)]
            out[l] = (DensePoly(ctx, col[:m][::-1]), DensePoly(ctx, col[m:][::-1]))
        return out
    units = [[0] * (N - 1 - l) + [1] for l in cols]
    A = B = None
    if dg != 0:
        raw = _lagrange_scaled(g, f * poly_derivative(g), units, m)
        s = dg if (n * m + comb(m, 2)) % 2 == 0 else (-dg) % p
        A = [DensePoly(ctx, r).scale(ctx.inv(s)) for r in raw]
    if df != 0:
        raw = _lagrange_scaled(f, g * poly_derivative(f), units, n)
        s = df if comb(n, 2) % 2 == 0 else (-df) % p
        B = [DensePoly(ctx, r).scale(ctx.inv(s)) for r in raw]
    if A is None:
        A = []
        for l, b in zip(cols, B):
            num = DensePoly(ctx, [0] * (N - 1 - l) + [res]) - b * g
            A.append(DensePoly(ctx, _classical_divmod(list(num.coeffs), list(f.coeffs), p)[0]))
    if B is None:
        B = []
        for l, a in zip(cols, A):
            num = DensePoly(ctx, [0] * (N - 1 - l) + [res]) - a * f
            B.append(DensePoly(ctx, _classical_divmod(list(num.coeffs), list(g.coeffs), p)[0]))
    return {l: (a, b) for l, a, b in zip(cols, A, B)}


def _columns_to_matrix(ctx: FieldCtx, n: int, m: int, cols: dict) -> Matrix:
    N = n + m
    M = [[0] * N for _ in range(N)]
    for l, (a, b) in cols.items():
        ca = a.padded(m)[::-1]
        cb = b.padded(n)[::-1]
        for i in range(m):
            M[i][l] = ca[i]
        for i in range(n):
            M[m + i][l] = cb[i]
    return Matrix.from_rows(ctx, M)


def sylvester_adjugate(f: DensePoly, g: DensePoly) -> Matrix:
    _require_monic(f)
    _require_monic(g)
    n, m = f.degree, g.degree
    if n < 1 or m < 1:
        raise ValueError("Sylvester adjugate needs degrees >= 1")
    char_guard(f.ctx, max(n, m, n + m - 1))
    return _columns_to_matrix(f.ctx, n, m, _adjugate_columns(f, g, range(n + m)))


def sylvester_inverse(f: DensePoly, g: DensePoly) -> Matrix:
    """Column l holds (a_l, b_l), top-down, with a_l f + b_l g = x^(n+m-1-l)."""
    _require_monic(f)
    _require_monic(g)
    char_guard(f.ctx, max(f.degree, g.degree))
    res = resultant(f, g)
    if res == 0:
        raise SingularMatrix("res(f, g) = 0")
    return sylvester_adjugate(f, g).scale(f.ctx.inv(res))


def bezout_coeffs_coprime(f: DensePoly, g: DensePoly) -> tuple[DensePoly, DensePoly]:
    """(a, b) with a f + b g = 1, deg a < deg g, deg b < deg f."""
    _require_monic(f)
    ctx = f.ctx
    if g.is_zero:
        if f.degree == 0:
            return DensePoly(ctx, [1]), DensePoly(ctx)
        raise NotCoprime("gcd(f, 0) = f")
    if g.degree == 0:
        return DensePoly(ctx), DensePoly(ctx, [ctx.inv(g.lc)])
    if f.degree == 0:
        return DensePoly(ctx, [1]), DensePoly(ctx)
    n, m = f.degree, g.degree
    char_guard(ctx, n + m)
    lc = g.lc
    g1 = g.scale(ctx.inv(lc))
    res = resultant(f, g1)
    if res == 0:
        raise NotCoprime("f and g share a root")
    a, b = _adjugate_columns(f, g1, [n + m - 1])[n + m - 1]
    ir = ctx.inv(res)
    return a.scale(ir), b.scale(ir * ctx.inv(lc))


# ---- Bezout matrix ---------------------------------------------------------


def bezout_matrix(f: DensePoly, g: DensePoly, n: int) -> Matrix:
    """B[i][j] = coefficient of x^i y^j in (f(x) g(y) - f(y) g(x)) / (x - y)."""
    ctx = f.ctx
    p = ctx.p
    if n < 1:
        raise ValueError("order must be >= 1")
    if f.degree > n or g.degree > n:
        raise DegreeTooHigh(f"degrees exceed order {n}")
    char_guard(ctx, n)
    fc, gc = f.padded(n + 1), g.padded(n + 1)
    by_node = []
    for y0 in range(n):
        gy, fy = g(y0), f(y0)
        num = [(gy * a - fy * b) % p for a, b in zip(fc, gc)]
        q = [0] * n  # exact synthetic division by (x - y0)
        carry = 0
        for k in range(n, 0, -1):
            carry = (num[k] + carry * y0) % p
            q[k - 1] = carry
        by_node.append(q)
    B = [interpolate_consecutive(ctx, [by_node[y][i] for y in range(n)]).padded(n) for i in range(n)]
    return Matrix.from_rows(ctx, B)


def bezout_inverse(f: DensePoly, g: DensePoly) -> Matrix:
    """Bez_n(f, g)^-1 as the Hankel matrix of h_1..h_(2n-1), the series
    coefficients of x^n q(1/x) / (x^n f(1/x)) where q g = 1 mod f."""
    _require_monic(f)
    ctx = f.ctx
    n = f.degree
    if n < 1:
        raise ValueError("f must have degree >= 1")
    if g.degree > n:
        raise DegreeTooHigh("deg g exceeds deg f")
    char_guard(ctx, 2 * n)
    if g.is_zero or resultant(f, g) == 0:
        raise SingularMatrix("res(f, g) = 0")
    q = bezout_coeffs_coprime(f, g)[1]
    num = q.padded(n + 1)[::-1]
    den = f.padded(n + 1)[::-1]
    h = _series_div(num, den, 2 * n, ctx.p)
    return Matrix.from_rows(ctx, [[h[i + j + 1] for j in range(n)] for i in range(n)])


def _series_div(num: list[int], den: list[int], N: int, p: int) -> list[int]:
    """num/den mod t^N for den(0) = 1."""
    out = [0] * N
    for k in range(N):
        s = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            s -= den[j] * out[k - j]
        out[k] = s % p
    return out


# ---- triangular Toeplitz ---------------------------------------------------


def toeplitz_inverse(A: Matrix) -> Matrix:
    """Inverse of an upper-triangular Toeplitz matrix A[i][j] = a_(j-i).

    Syl(f, x^n) for f = x^n + sum_(k<n) a_k x^k has A as its lower-left block
    and zeros below-right, so A^-1 is the upper-right block of Syl^-1.
    """
    ctx = A.ctx
    n = A.rows
    if A.cols != n or n == 0:
        raise ValueError("expected a nonempty square matrix")
    a = [A[0, j] for j in range(n)]
    for i in range(n):
        for j in range(n):
            if A[i, j] != (a[j - i] if j >= i else 0):
                raise ValueError("not upper-triangular Toeplitz")
    if a[0] == 0:
        raise SingularMatrix("zero diagonal")
    char_guard(ctx, 2 * n)
    f = DensePoly(ctx, a + [1])
    g = DensePoly(ctx, [0] * n + [1])
    res = resultant(f, g)
    cols = _adjugate_columns(f, g, range(n, 2 * n))
    ir = ctx.inv(res)
    out = [[0] * n for _ in range(n)]
    for l, (al, _) in cols.items():
        ca = al.padded(n)[::-1]
        for i in range(n):
            out[i][l - n] = ca[i] * ir % ctx.p
    return Matrix.from_rows(ctx, out)


# ---- composed sums/products and implicitization ----------------------------


def composed(f: DensePoly, g: DensePoly, mode: str = "sum") -> DensePoly:
    """prod over roots a of f, b of g of (x - (a + b)) or (x - a b), as the
    resultant in y of f(y) and g(x - y) (resp. y^m g(x / y)) with x a parameter."""
    _require_monic(f)
    _require_monic(g)
    ctx = f.ctx
    p = ctx.p
    n, m = f.degree, g.degree
    char_guard(ctx, max(n * m, n, m))
    if n == 0 or m == 0:
        return DensePoly(ctx, [1])
    terms: dict = {}
    # root variable of f is the polynomial variable; the parameter is x
    if mode == "sum":
        for k, c in enumerate(g.coeffs):
            for i in range(k + 1):
                key = (i, k - i, 0)
                v = c * comb(k, i) * (-1) ** i
                terms[key] = (terms.get(key, 0) + v) % p
    elif mode == "product":
        for k, c in enumerate(g.coeffs):
            terms[(m - k, k, 0)] = c
    else:
        raise ValueError("mode must be 'sum' or 'product'")
    table = esym_over_roots(f, ParamPoly(ctx, terms), n)
    return DensePoly(ctx, [row[0] for row in table])


def _res_declared(F: list[int], G: list[int], d: int, e: int, ctx: FieldCtx) -> int:
    """det Syl of F, G at declared degrees d, e (trailing coefficients may vanish)."""
    p = ctx.p
    Fp, Gp = DensePoly(ctx, F), DensePoly(ctx, G)
    if Fp.is_zero or Gp.is_zero:
        return 0 if d + e > 0 else 1
    dF, dG = Fp.degree, Gp.degree
    if dF < d and dG < e:
        return 0
    if dF < d:
        k = d - dF
        return pow(-1, e * k, p) * pow(Gp.lc, k, p) * _res_declared(F, G, dF, e, ctx) % p
    if dF == 0:
        return pow(Fp.lc, e, p)
    lc = Fp.lc
    r = resultant(Fp.scale(ctx.inv(lc)), Gp)
    return pow(lc, e, p) * r % p


def implicitize(f: DensePoly, g: DensePoly, h: DensePoly) -> tuple[tuple[int, ...], ...]:
    """r(x, y) = res_t(x h(t) - f(t), y h(t) - g(t)); table[i][j] is the
    coefficient of x^i y^j, scaled so the lexicographically last term is 1."""
    ctx = f.ctx
    p = ctx.p
    if h.is_zero:
        raise ZeroPolynomial("h must be nonzero")
    d = max(f.degree, g.degree, h.degree, 0)
    if d == 0:
        raise DegenerateParameterization("constant parameterization")
    char_guard(ctx, d)
    hc, fc, gc = h.padded(d + 1), f.padded(d + 1), g.padded(d + 1)
    grid = []
    for x0 in range(d + 1):
        F = [(x0 * a - b) % p for a, b in zip(hc, fc)]
        grid.append([_res_declared(F, [(y0 * a - b) % p for a, b in zip(hc, gc)], d, d, ctx) for y0 in range(d + 1)])
    per_x = [interpolate_consecutive(ctx, row).padded(d + 1) for row in grid]
    table = [interpolate_consecutive(ctx, [per_x[x0][j] for x0 in range(d + 1)]).padded(d + 1) for j in range(d + 1)]
    coeff = [[table[j][i] for j in range(d + 1)] for i in range(d + 1)]
    last = max(((i, j) for i in range(d + 1) for j in range(d + 1) if coeff[i][j]), default=None)
    if last is None:
        raise DegenerateParameterization("resultant vanishes identically")
    il = ctx.inv(coeff[last[0]][last[1]])
    return tuple(tuple(v * il % p for v in row) for row in coeff)
