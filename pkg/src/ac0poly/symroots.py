"""Symmetric functions evaluated at the roots of a polynomial known only by
its coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from . import _kernels as K
from .errors import SharedRoot
from .field import FieldCtx, char_guard
from .newton import _require_monic, to_power_sums
from .upoly import DensePoly, interpolate_consecutive


@dataclass(frozen=True)
class ParamPoly:
    """g(x, y, z) stored as {(i, j, k): coeff of x^i y^j z^k}; at most two parameters."""

    ctx: FieldCtx
    terms: Mapping[tuple[int, int, int], int]

    def __init__(self, ctx: FieldCtx, terms: Mapping[tuple, int]):
        clean = {}
        for key, c in terms.items():
            key = tuple(key) + (0,) * (3 - len(key))
            if len(key) != 3:
                raise ValueError("at most two parameters (y, z) are supported")
            c %= ctx.p
            if c:
                clean[key] = (clean.get(key, 0) + c) % ctx.p
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    @classmethod
    def from_poly(cls, f: DensePoly) -> "ParamPoly":
        return cls(f.ctx, {(i, 0, 0): c for i, c in enumerate(f.coeffs)})

    @classmethod
    def from_y_coeffs(cls, ctx: FieldCtx, polys: list[DensePoly]) -> "ParamPoly":
        """sum_j y^j polys[j](x)."""
        return cls(ctx, {(i, j, 0): c for j, g in enumerate(polys) for i, c in enumerate(g.coeffs)})

    @property
    def deg_y(self) -> int:
        return max((k[1] for k in self.terms), default=0)

    @property
    def deg_z(self) -> int:
        return max((k[2] for k in self.terms), default=0)

    @property
    def deg_x(self) -> int:
        return max((k[0] for k in self.terms), default=0)

    def at(self, y: int, z: int = 0) -> DensePoly:
        """Specialise the parameters, leaving a polynomial in x."""
        p = self.ctx.p
        c = [0] * (self.deg_x + 1)
        for (i, j, k), v in self.terms.items():
            c[i] = (c[i] + v * pow(y, j, p) * pow(z, k, p)) % p
        return DensePoly(self.ctx, c)


# A polynomial in (y, z) returned by the parameterised variants:
# table[j][k] is the coefficient of y^j z^k.
ParamTable = tuple[tuple[int, ...], ...]


def table_eval(ctx: FieldCtx, table: ParamTable, y: int, z: int = 0) -> int:
    p = ctx.p
    return sum(c * pow(y, j, p) * pow(z, k, p) for j, row in enumerate(table) for k, c in enumerate(row)) % p


def _esym_all(f: DensePoly, g: DensePoly, top: int) -> list[int]:
    """e_0..e_top of g(alpha_1), ..., g(alpha_n) via power sums of g^k."""
    ctx = f.ctx
    n = f.degree
    k = K.kern(ctx)
    inv, invfact = K.tables(ctx, max(n, top))
    fa = K.arr(ctx, f.coeffs)
    ps = k.power_sums(fa, max(n - 1, 0), ctx.p)
    gred = k.rem_monic(K.arr(ctx, g.coeffs), fa, ctx.p)
    if top > n:
        e = K.tolist(k.esym_all(fa, gred, ps, n, ctx.p, inv, invfact))
        return e + [0] * (top - n)
    return K.tolist(k.esym_all(fa, gred, ps, top, ctx.p, inv, invfact))


def sum_over_roots(f: DensePoly, g: DensePoly) -> int:
    """sum_i g(alpha_i) = sum_j g_j p_j."""
    _require_monic(f)
    m = max(g.degree, 0) if not g.is_zero else 0
    char_guard(f.ctx, max(f.degree, m))
    ps = to_power_sums(f, m).sums
    return sum(c * s for c, s in zip(g.coeffs, ps)) % f.ctx.p


def _interp_grid(ctx: FieldCtx, grid: list[list[int]]) -> ParamTable:
    """grid[a][b] = value at (y=a, z=b) -> coefficient table."""
    rows = [interpolate_consecutive(ctx, col).padded(len(col)) for col in grid]  # over z, per y node
    ny, nz = len(grid), len(grid[0])
    out = [[0] * nz for _ in range(ny)]
    for k in range(nz):
        col = interpolate_consecutive(ctx, [rows[a][k] for a in range(ny)]).padded(ny)
        for j in range(ny):
            out[j][k] = col[j]
    return tuple(tuple(r) for r in out)


def _grid_esym(f: DensePoly, g: ParamPoly, top: int, degree_factor: int) -> tuple[int, int, list]:
    """Evaluate e_0..e_top on the node grid sized for degree degree_factor*deg."""
    Dy = degree_factor * g.deg_y
    Dz = degree_factor * g.deg_z
    char_guard(f.ctx, max(Dy, Dz, f.degree))
    vals = [[_esym_all(f, g.at(y, z), top) for z in range(Dz + 1)] for y in range(Dy + 1)]
    return Dy, Dz, vals


def esym_over_roots(f: DensePoly, g: Union[DensePoly, ParamPoly], d: int):
    """e_d(g(alpha_1), ..., g(alpha_n)); a (y, z) coefficient table when g has parameters."""
    _require_monic(f)
    n = f.degree
    char_guard(f.ctx, n)
    if isinstance(g, DensePoly):
        if d > n:
            return 0
        return _esym_all(f, g, d)[d]
    if g.deg_y == 0 and g.deg_z == 0:
        return ((esym_over_roots(f, g.at(0, 0), d),),)
    if d > n:
        return ((0,),)
    Dy, Dz, vals = _grid_esym(f, g, d, d)
    return _interp_grid(f.ctx, [[vals[a][b][d] for b in range(Dz + 1)] for a in range(Dy + 1)])


def nonzero_product_over_roots(f: DensePoly, g: Union[DensePoly, ParamPoly]):
    """Product of the nonzero values g(alpha_i): select(e_n, ..., e_1, e_0 = 1)."""
    _require_monic(f)
    n = f.degree
    char_guard(f.ctx, n)
    if isinstance(g, DensePoly):
        e = _esym_all(f, g, n)
        for k in range(n, -1, -1):
            if e[k] != 0:
                return e[k]
        return 1
    Dy, Dz, vals = _grid_esym(f, g, n, n)
    for k in range(n, 0, -1):
        if any(vals[a][b][k] for a in range(Dy + 1) for b in range(Dz + 1)):
            Dy_k, Dz_k = k * g.deg_y, k * g.deg_z
            return _interp_grid(f.ctx, [[vals[a][b][k] for b in range(Dz_k + 1)] for a in range(Dy_k + 1)])
    return ((1,),)


def _y_linear_esym(f: DensePoly, g: DensePoly, h: DensePoly) -> tuple[int, int]:
    """(coefficient of y in prod(g(a) y + h(a)), prod h(a))."""
    ctx = f.ctx
    n = f.degree
    vals = []
    for y in range(n + 1):
        vals.append(_esym_all(f, g.scale(y) + h, n)[n])
    r = interpolate_consecutive(ctx, vals)
    return r.coeff(1), r.coeff(0)


def rational_sum_over_roots(f: DensePoly, g: DensePoly, h: DensePoly) -> int:
    """sum g(alpha_i)/h(alpha_i) over a common denominator."""
    _require_monic(f)
    n = f.degree
    char_guard(f.ctx, n)
    num, den = _y_linear_esym(f, g, h)
    if den == 0:
        raise SharedRoot("h vanishes at a root of f")
    return num * f.ctx.inv(den) % f.ctx.p


def rational_esym_over_roots(f: DensePoly, g: DensePoly, h: DensePoly, d: int) -> int:
    """e_d of the ratios g(alpha_i)/h(alpha_i) from their power sums."""
    _require_monic(f)
    n = f.degree
    char_guard(f.ctx, n)
    if d == 0:
        return 1
    if d > n:
        return 0
    ctx = f.ctx
    sums = [n % ctx.p]
    gk, hk = DensePoly(ctx, [1]), DensePoly(ctx, [1])
    for _ in range(d):
        gk, hk = gk * g, hk * h
        sums.append(rational_sum_over_roots(f, gk, hk))
    inv, invfact = K.tables(ctx, d)
    e = K.kern(ctx).esym_from_sums(K.arr(ctx, sums), d, ctx.p, inv, invfact)
    return int(e[d])
