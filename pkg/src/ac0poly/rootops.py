"""Split a polynomial by properties of its roots (vanishing of other
polynomials, multiplicities) without ever finding the roots."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import _kernels as K
from .field import char_guard
from .newton import _require_monic, exact_div, perfect_root
from .symroots import ParamPoly, nonzero_product_over_roots
from .upoly import DensePoly, poly_derivative


def _deg(g: DensePoly) -> int:
    return g.degree if not g.is_zero else 0


def _filter_out(f: DensePoly, g: DensePoly) -> DensePoly:
    """Factors of monic f at roots where g is nonzero (normalized nonzero
    product over the roots of (y - x) g(x))."""
    ctx = f.ctx
    if f.degree == 0:
        return f
    inv, invfact = K.tables(ctx, f.degree)
    out = K.kern(ctx).filter_out(K.arr(ctx, f.coeffs), K.arr(ctx, g.coeffs or (0,)), ctx.p, inv, invfact)
    return DensePoly(ctx, K.tolist(out))


def _split(f: DensePoly, g: DensePoly) -> tuple[DensePoly, DensePoly]:
    out = _filter_out(f, g)
    return exact_div(f, out), out


def filter_common_roots(f: DensePoly, gs: Sequence[DensePoly]) -> tuple[DensePoly, DensePoly]:
    """(f_in, f_out): the factors of f at common roots of all gs, and the rest.

    Filters are applied one polynomial at a time, each acting on the part kept
    by the previous one, so the kept part ends up at the common roots.
    """
    _require_monic(f)
    if not gs:
        raise ValueError("need at least one filter polynomial")
    char_guard(f.ctx, max([f.degree] + [_deg(g) for g in gs]))
    keep = f
    for g in gs:
        if keep.degree == 0:
            break
        keep = _split(keep, g)[0]
    return keep, exact_div(f, keep)


def filter_common_roots_param(f: DensePoly, gs: Sequence[DensePoly]) -> tuple[DensePoly, DensePoly]:
    """Same split with all filters folded into g(x, z) = sum z^(i-1) g_i(x):
    the nonzero product over the roots of (y - x) g(x, z), divided by its
    leading coefficient in y. Grid size grows with len(gs); meant for small
    inputs and cross-checks."""
    _require_monic(f)
    ctx = f.ctx
    n = f.degree
    char_guard(ctx, max([n * max(len(gs) - 1, 1)] + [_deg(g) for g in gs]))
    if n == 0:
        return f, f
    terms: dict = {}
    for k, g in enumerate(gs):
        for i, c in enumerate(g.coeffs):
            terms[(i, 1, k)] = (terms.get((i, 1, k), 0) + c) % ctx.p
            terms[(i + 1, 0, k)] = (terms.get((i + 1, 0, k), 0) - c) % ctx.p
    if not terms:  # every g is zero: nothing is filtered out
        return f, DensePoly(ctx, [1])
    table = nonzero_product_over_roots(f, ParamPoly(ctx, terms))
    J = max(j for j, row in enumerate(table) if any(row))
    s = table[J]
    k0 = next(k for k, v in enumerate(s) if v)
    il = ctx.inv(s[k0])
    out = DensePoly(ctx, [table[j][k0] * il if k0 < len(table[j]) else 0 for j in range(J + 1)])
    return exact_div(f, out), out


def threshold_multiplicity(f: DensePoly, gs: Sequence[DensePoly], rs: Sequence[int]) -> tuple[DensePoly, DensePoly]:
    """(f_ge, f_lt): factors of f whose root has multiplicity >= r_j in every g_j,
    and the rest; multiplicities as in f. Uses g_j, g_j', ..., g_j^(r_j - 1)
    as filter polynomials."""
    _require_monic(f)
    if len(gs) != len(rs) or not gs:
        raise ValueError("gs and rs must be nonempty and of equal length")
    if any(r < 0 for r in rs):
        raise ValueError("thresholds must be nonnegative")
    ctx = f.ctx
    char_guard(ctx, max([f.degree] + [_deg(g) for g in gs]))
    one = DensePoly(ctx, [1])
    if any(not g.is_zero and r > g.degree for g, r in zip(gs, rs)):
        return one, f
    filters = [poly_derivative(g, k) for g, r in zip(gs, rs) for k in range(r)]
    if not filters:
        return f, one
    return filter_common_roots(f, filters)


@dataclass(frozen=True)
class SquarefreeDecomposition:
    parts: tuple[DensePoly, ...]  # parts[i] has multiplicity i + 1

    def __len__(self):
        return len(self.parts)

    def part(self, r: int) -> DensePoly:
        """f_r (1-based); 1 beyond the top multiplicity."""
        if 1 <= r <= len(self.parts):
            return self.parts[r - 1]
        raise IndexError(r)

    def reconstruct(self, ctx=None) -> DensePoly:
        ctx = ctx or self.parts[0].ctx
        out = DensePoly(ctx, [1])
        for i, q in enumerate(self.parts, start=1):
            out = out * q**i
        return out


def _ge_chain(f: DensePoly) -> list[DensePoly]:
    """[f_{>=1}, f_{>=2}, ...] ending with 1: f_{>=r+1} keeps the factors of
    f_{>=r} where f^(r) also vanishes."""
    chain = [f]
    r = 1
    while chain[-1].degree > 0:
        chain.append(_split(chain[-1], poly_derivative(f, r))[0])
        r += 1
    return chain


def squarefree_decomposition(f: DensePoly) -> SquarefreeDecomposition:
    """f_{<=r} = f / f_{>=r+1}, f_{=r} = f_{<=r} / f_{<=r-1}, f_r = f_{=r}^(1/r)."""
    _require_monic(f)
    char_guard(f.ctx, f.degree)
    return _sqfree_cached(f)


@lru_cache(maxsize=4096)
def _sqfree_cached(f: DensePoly) -> SquarefreeDecomposition:
    if f.degree == 0:
        return SquarefreeDecomposition(())
    chain = _ge_chain(f)
    le = [exact_div(f, c) for c in chain]  # le[r] = f_{<=r}
    parts = [perfect_root(exact_div(le[r], le[r - 1]), r) for r in range(1, len(chain))]
    return SquarefreeDecomposition(tuple(parts))


def squarefree_part(f: DensePoly) -> DensePoly:
    _require_monic(f)
    out = DensePoly(f.ctx, [1])
    for q in squarefree_decomposition(f).parts:
        out = out * q
    return out
