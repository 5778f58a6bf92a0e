"""Coefficients <-> Newton series (power sums of the roots), exact division
and perfect roots computed through power sums."""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels as K
from .errors import (
    DegreeNotDivisible,
    InconsistentSeries,
    NotAPerfectPower,
    NotDivisible,
    NotMonic,
    ZeroPolynomial,
)
from .field import FieldCtx, char_guard
from .upoly import DensePoly


@dataclass(frozen=True)
class NewtonSeries:
    ctx: FieldCtx
    n: int
    sums: tuple[int, ...]  # p_0 .. p_d

    @property
    def order(self) -> int:
        return len(self.sums) - 1

    def __add__(self, other: "NewtonSeries") -> "NewtonSeries":
        d = min(self.order, other.order)
        p = self.ctx.p
        return NewtonSeries(self.ctx, self.n + other.n, tuple((a + b) % p for a, b in zip(self.sums[: d + 1], other.sums)))

    def __sub__(self, other: "NewtonSeries") -> "NewtonSeries":
        d = min(self.order, other.order)
        p = self.ctx.p
        return NewtonSeries(self.ctx, self.n - other.n, tuple((a - b) % p for a, b in zip(self.sums[: d + 1], other.sums)))

    def scaled(self, c: int) -> "NewtonSeries":
        """Multiply every sum by the field element c (n is left to the caller)."""
        p = self.ctx.p
        return NewtonSeries(self.ctx, self.n, tuple(v * c % p for v in self.sums))


def _require_monic(f: DensePoly):
    if f.is_zero:
        raise ZeroPolynomial("expected a nonzero monic polynomial")
    if not f.is_monic():
        raise NotMonic(f"leading coefficient is {f.lc}")


def to_power_sums(f: DensePoly, d: int) -> NewtonSeries:
    """p_0..p_d of the roots of monic f, from rev(f')/rev(f).

    1/rev(f) is the truncated geometric series in h = 1 - rev(f).
    """
    _require_monic(f)
    n = f.degree
    char_guard(f.ctx, max(n, d))
    ps = K.kern(f.ctx).power_sums(K.arr(f.ctx, f.coeffs), d, f.ctx.p)
    return NewtonSeries(f.ctx, n, tuple(K.tolist(ps)))


def _coeffs_from_sums(ctx: FieldCtx, sums, n: int) -> DensePoly:
    inv, invfact = K.tables(ctx, n)
    c = K.kern(ctx).from_power_sums(K.arr(ctx, list(sums[: n + 1])), n, ctx.p, inv, invfact)
    return DensePoly(ctx, K.tolist(c))


def from_power_sums(ps: NewtonSeries, verify: bool = True) -> DensePoly:
    """Monic degree-n polynomial with the given power sums, via the truncated
    exponential of sum (-1)^(k+1) p_k t^k / k."""
    ctx, n = ps.ctx, ps.n
    if n < 0:
        raise InconsistentSeries("negative degree")
    char_guard(ctx, n)
    if ps.order < n:
        raise InconsistentSeries(f"need p_0..p_{n}, got order {ps.order}")
    if ps.sums[0] != n % ctx.p:
        raise InconsistentSeries(f"p_0 = {ps.sums[0]} but n = {n}")
    f = _coeffs_from_sums(ctx, ps.sums, n)
    if verify and ps.order > n and n > 0:
        if to_power_sums(f, ps.order).sums != ps.sums:
            raise InconsistentSeries("series is not the Newton series of any degree-n polynomial")
    return f


def exact_div(f: DensePoly, g: DensePoly) -> DensePoly:
    """f / g for monic g | f by subtracting power sums; the promise is verified."""
    _require_monic(f)
    _require_monic(g)
    n, m = f.degree, g.degree
    if m > n:
        raise NotDivisible(f"degree {m} divisor of degree {n} polynomial")
    if m == 0:
        return f
    if m == n:
        if f == g:
            return DensePoly(f.ctx, [1])
        raise NotDivisible("equal degrees but different polynomials")
    char_guard(f.ctx, n)
    d = n - m
    q = _coeffs_from_sums(f.ctx, (to_power_sums(f, d) - to_power_sums(g, d)).sums, d)
    if q * g != f:
        raise NotDivisible("divisor does not divide")
    return q


def perfect_root(f: DensePoly, r: int) -> DensePoly:
    """Monic g with g^r = f, by dividing the power sums by r; verified."""
    _require_monic(f)
    if r < 1:
        raise ValueError("r must be >= 1")
    n = f.degree
    if n % r:
        raise DegreeNotDivisible(f"{r} does not divide degree {n}")
    if r == 1 or n == 0:
        return f
    char_guard(f.ctx, n)
    k = n // r
    ps = to_power_sums(f, k).scaled(f.ctx.inv(r))
    g = _coeffs_from_sums(f.ctx, ps.sums, k)
    if g**r != f:
        raise NotAPerfectPower(f"not an exact {r}-th power")
    return g
