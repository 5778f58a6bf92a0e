"""Classical sequential reference algorithms and seeded instance generation.

Nothing here calls into the constant-depth code paths: arithmetic is done on
plain coefficient lists so the oracles stay independent ground truth.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CharacteristicTooSmall, FieldTooSmall, ZeroPolynomial
from .field import FieldCtx
from .upoly import DensePoly

# ---- list arithmetic ------------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _sub(a, b, p):
    return _add(a, [(-v) % p for v in b], p)


def _mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim([v % p for v in out])


def _divmod(a, b, p):
    if not b:
        raise ZeroPolynomial("division by the zero polynomial")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    ilc = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        c = a[-1] * ilc % p
        k = len(a) - len(b)
        q[k] = c
        for j, v in enumerate(b):
            a[k + j] = (a[k + j] - c * v) % p
        _trim(a)
    return _trim(q), a


def _monic(a, p):
    if not a:
        return a
    il = pow(a[-1], p - 2, p)
    return [v * il % p for v in a]


def _deriv(a, p):
    return _trim([i * a[i] % p for i in range(1, len(a))])


def _poly(ctx, c):
    return DensePoly(ctx, c)


# ---- oracles --------------------------------------------------------------


def long_division(f: DensePoly, g: DensePoly) -> tuple[DensePoly, DensePoly]:
    p = f.ctx.p
    q, r = _divmod(list(f.coeffs), list(g.coeffs), p)
    return _poly(f.ctx, q), _poly(f.ctx, r)


def euclid_gcd(f: DensePoly, g: DensePoly) -> DensePoly:
    p = f.ctx.p
    a, b = list(f.coeffs), list(g.coeffs)
    if not a and not b:
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _poly(f.ctx, _monic(a, p))


def euclid_gcd_many(fs: Sequence[DensePoly]) -> DensePoly:
    g = fs[0]
    for f in fs[1:]:
        g = euclid_gcd(g, f)
    return euclid_gcd(g, DensePoly(g.ctx))


def euclid_lcm_many(fs: Sequence[DensePoly]) -> DensePoly:
    p = fs[0].ctx.p
    acc = [1]
    for f in fs:
        g = list(euclid_gcd(_poly(f.ctx, acc), f).coeffs)
        acc = _mul(acc, _divmod(list(f.coeffs), g, p)[0], p)
    return _poly(fs[0].ctx, _monic(acc, p))


@dataclass
class EuclidScheme:
    rows: list[tuple[DensePoly, DensePoly, DensePoly]]  # (r_i, s_i, t_i)
    gcd: DensePoly
    bezout: tuple[DensePoly, DensePoly]  # (a, b) with a f + b g = gcd


def extended_euclid(f: DensePoly, g: DensePoly) -> EuclidScheme:
    ctx = f.ctx
    p = ctx.p
    r0, r1 = list(f.coeffs), list(g.coeffs)
    if not r0 and not r1:
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    s0, s1 = [1], []
    t0, t1 = [], [1]
    rows = [(r0, s0, t0), (r1, s1, t1)]
    while r1:
        q, r2 = _divmod(r0, r1, p)
        s2 = _sub(s0, _mul(q, s1, p), p)
        t2 = _sub(t0, _mul(q, t1, p), p)
        rows.append((r2, s2, t2))
        r0, r1, s0, s1, t0, t1 = r1, r2, s1, s2, t1, t2
    il = pow(r0[-1], p - 2, p)
    a = [v * il % p for v in s0]
    b = [v * il % p for v in t0]
    return EuclidScheme(
        rows=[(_poly(ctx, r), _poly(ctx, s), _poly(ctx, t)) for r, s, t in rows],
        gcd=_poly(ctx, _monic(r0, p)),
        bezout=(_poly(ctx, a), _poly(ctx, b)),
    )


def yun_squarefree(f: DensePoly) -> list[DensePoly]:
    """Yun's gcd chain; returns (f_1, ..., f_m) with f = prod f_i^i."""
    ctx = f.ctx
    p = ctx.p
    a = _monic(list(f.coeffs), p)
    if not a:
        raise ZeroPolynomial("squarefree decomposition of zero")
    if not p > len(a) - 1:
        raise CharacteristicTooSmall(p, len(a) - 1)
    if len(a) == 1:
        return []
    da = _deriv(a, p)
    g = list(euclid_gcd(_poly(ctx, a), _poly(ctx, da)).coeffs)
    b = _divmod(a, g, p)[0]
    c = _divmod(da, g, p)[0]
    d = _sub(c, _deriv(b, p), p)
    parts = []
    while len(b) > 1:
        h = list(euclid_gcd(_poly(ctx, b), _poly(ctx, d)).coeffs)
        parts.append(_poly(ctx, h))
        b = _divmod(b, h, p)[0]
        c = _divmod(d, h, p)[0]
        d = _sub(c, _deriv(b, p), p)
    while parts and parts[-1].is_one():
        parts.pop()
    return parts


def bareiss_det(M: Sequence[Sequence[int]], p: int) -> int:
    """Fraction-free elimination; the exact quotient uses a field inverse."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    A = [[int(v) % p for v in r] for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        iprev = pow(prev, p - 2, p)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) * iprev % p
        prev = A[k][k]
    return sign * A[n - 1][n - 1] % p


def cofactor_det(M: Sequence[Sequence[int]], p: int) -> int:
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0] % p
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * cofactor_det(minor, p)
    return total % p


def sylvester_oracle(f: DensePoly, g: DensePoly) -> list[list[int]]:
    """Sylvester matrix written out independently of structmat."""
    n, m = f.degree, g.degree
    N = n + m
    S = [[0] * N for _ in range(N)]
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for j in range(m):
        for i, v in enumerate(fc):
            S[i + j][j] = v
    for j in range(n):
        for i, v in enumerate(gc):
            S[i + j][m + j] = v
    return S


def matmul(A, B, p):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) % p for j in range(len(B[0]))] for i in range(len(A))]


def newton_sums_oracle(f: DensePoly, d: int) -> list[int]:
    """p_0..p_d of monic f by the triangular Newton recurrence."""
    p = f.ctx.p
    a = list(f.coeffs)
    n = len(a) - 1
    ps = [n % p]
    for k in range(1, d + 1):
        acc = k * a[n - k] if k <= n else 0
        for i in range(1, min(k - 1, n) + 1):
            acc += a[n - i] * ps[k - i]
        ps.append(-acc % p)
    return ps


def coeffs_from_sums_oracle(ctx: FieldCtx, sums: Sequence[int], n: int) -> DensePoly:
    """Monic degree-n polynomial with power sums p_1..p_n (Newton-Girard)."""
    p = ctx.p
    e = [1]
    for k in range(1, n + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * sums[i] for i in range(1, k + 1))
        e.append(acc * pow(k, p - 2, p) % p)
    return _poly(ctx, [(-1) ** (n - j) * e[n - j] % p for j in range(n)] + [1])


def filter_oracle(f: DensePoly, gs: Sequence[DensePoly]) -> tuple[DensePoly, DensePoly]:
    """(kept, rest): factors of f at common roots of the gs, by repeated gcds."""
    p = f.ctx.p
    h = list(euclid_gcd_many(list(gs) + [f]).coeffs) if any(not g.is_zero for g in gs) else list(f.coeffs)
    rest = list(f.coeffs)
    while True:
        r = list(euclid_gcd(_poly(f.ctx, rest), _poly(f.ctx, h)).coeffs)
        if len(r) == 1:
            break
        rest = _divmod(rest, r, p)[0]
    return _poly(f.ctx, _divmod(list(f.coeffs), rest, p)[0]), _poly(f.ctx, _monic(rest, p))


def gcd_free_basis(fs: Sequence[DensePoly]) -> list[DensePoly]:
    """Pairwise coprime squarefree monic polynomials such that every f is a
    product of their powers (Yun parts refined by Euclid)."""
    ctx = fs[0].ctx
    p = ctx.p
    basis = [list(q.coeffs) for f in fs for q in yun_squarefree(f) if q.degree > 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                g = list(euclid_gcd(_poly(ctx, basis[i]), _poly(ctx, basis[j])).coeffs)
                if len(g) == 1:
                    continue
                a = _divmod(basis[i], g, p)[0]
                b = _divmod(basis[j], g, p)[0]
                basis = [c for k, c in enumerate(basis) if k not in (i, j)] + [c for c in (g, a, b) if len(c) > 1]
                changed = True
                break
            if changed:
                break
    return [_poly(ctx, _monic(b, p)) for b in basis]


def diamond_oracle(fs: Sequence[DensePoly], P) -> DensePoly:
    """prod over roots of (x - a)^P(mults), reading multiplicities off a
    gcd-free basis by trial division."""
    ctx = fs[0].ctx
    p = ctx.p
    acc = [1]
    for b in gcd_free_basis(fs):
        bc = list(b.coeffs)
        mults = []
        for f in fs:
            k, rem = 0, list(f.coeffs)
            while True:
                q, r = _divmod(rem, bc, p)
                if r:
                    break
                k, rem = k + 1, q
            mults.append(k)
        for _ in range(P(*mults)):
            acc = _mul(acc, bc, p)
    return _poly(ctx, acc)


def _lagrange_consecutive(vals: list[int], p: int) -> list[int]:
    n = len(vals)
    out = [0] * n
    for i, v in enumerate(vals):
        if not v % p:
            continue
        num, den = [1], 1
        for j in range(n):
            if j != i:
                num = _mul(num, [(-j) % p, 1], p)
                den = den * (i - j) % p
        c = v * pow(den, p - 2, p) % p
        for k, a in enumerate(num):
            out[k] = (out[k] + c * a) % p
    return _trim(out)


def composed_oracle(f: DensePoly, g: DensePoly, mode: str = "sum") -> DensePoly:
    """prod (x - (a + b)) or prod (x - a b) over roots of monic f, g: Bareiss
    determinants of Sylvester matrices at x = 0..nm, then interpolation."""
    ctx = f.ctx
    p = ctx.p
    n, m = f.degree, g.degree
    if n == 0 or m == 0:
        return _poly(ctx, [1])
    gc = list(g.coeffs)
    vals = []
    for x0 in range(n * m + 1):
        if mode == "sum":  # g(x0 - y)
            h = [0]
            for k in reversed(range(m + 1)):
                h = _add(_mul(h, [x0 % p, p - 1], p), [gc[k]], p)
        else:  # y^m g(x0 / y)
            h = _trim([gc[m - j] * pow(x0, m - j, p) % p for j in range(m + 1)])
        if not h:
            vals.append(0)
            continue
        M = sylvester_oracle(f, _poly(ctx, h))
        vals.append(bareiss_det(M, p) if M else 1)
    return _poly(ctx, _lagrange_consecutive(vals, p))


# ---- instances ------------------------------------------------------------


@dataclass
class MultiplicityProfile:
    entries: list[tuple[int, list[int]]] = field(default_factory=list)

    @property
    def arity(self) -> int:
        return len(self.entries[0][1]) if self.entries else 0

    def to_json(self) -> str:
        return json.dumps({"roots": [{"root": r, "mults": list(m)} for r, m in self.entries]})

    @classmethod
    def from_json(cls, text: str) -> "MultiplicityProfile":
        data = json.loads(text)
        return cls([(int(e["root"]), [int(v) for v in e["mults"]]) for e in data["roots"]])

    def degrees(self) -> list[int]:
        return [sum(m[j] for _, m in self.entries) for j in range(self.arity)]


def instance_from_profile(ctx: FieldCtx, prof: MultiplicityProfile) -> list[DensePoly]:
    p = ctx.p
    roots = [r % p for r, _ in prof.entries]
    if len(set(roots)) != len(roots):
        raise ValueError("profile roots must be distinct")
    out = []
    for j in range(prof.arity):
        acc = [1]
        for r, mults in prof.entries:
            for _ in range(mults[j]):
                acc = _mul(acc, [(-r) % p, 1], p)
        out.append(DensePoly(ctx, acc))
    return out


def random_profile(
    seed: int,
    m: int,
    max_roots: int,
    max_mult: int,
    ctx: FieldCtx | None = None,
    max_degree: int | None = None,
    zero_prob: float = 0.3,
) -> MultiplicityProfile:
    """Distinct random roots; per polynomial each multiplicity is 0 with
    probability ``zero_prob`` and otherwise uniform in 1..max_mult. Degrees
    are capped at ``max_degree`` and every polynomial gets some root."""
    ctx = ctx or FieldCtx()
    if ctx.p <= max_roots:
        raise FieldTooSmall(f"need more than {max_roots} field elements")
    rng = random.Random(seed)
    k = rng.randint(1, max_roots)
    roots = rng.sample(range(ctx.p), k) if ctx.p < 1 << 40 else [rng.randrange(ctx.p) for _ in range(k)]
    if len(set(roots)) != k:
        roots = list(dict.fromkeys(roots))
    mults = [[0 if rng.random() < zero_prob else rng.randint(1, max_mult) for _ in range(m)] for _ in roots]
    for j in range(m):
        if all(row[j] == 0 for row in mults):
            mults[rng.randrange(len(roots))][j] = rng.randint(1, max_mult)
        if max_degree is not None:
            while sum(row[j] for row in mults) > max_degree:
                i = max(range(len(roots)), key=lambda t: mults[t][j])
                mults[i][j] -= 1
    return MultiplicityProfile([(r, row) for r, row in zip(roots, mults)])


def multiplicity_poly(ctx: FieldCtx, prof: MultiplicityProfile, P) -> DensePoly:
    """prod (x - root)^P(mults) read directly off the profile."""
    p = ctx.p
    acc = [1]
    for r, mults in prof.entries:
        for _ in range(P(*mults)):
            acc = _mul(acc, [(-r) % p, 1], p)
    return DensePoly(ctx, acc)
