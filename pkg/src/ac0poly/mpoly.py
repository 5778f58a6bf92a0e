"""Squarefree decomposition, GCD and LCM of multivariate polynomials given as
circuits.

The inputs are made monic in a fresh variable y by the shift
x -> x + y * alpha, their y-coefficients are extracted, and the univariate
pipeline runs over those coefficients. The pipeline below is written once
against a small coefficient-arithmetic interface with two implementations:
field elements, and circuit nodes over x whose zero tests go through PIT.

Circuit nodes also carry their values on a random affine copy of the
principal lattice of degree D; since every output has degree <= D, the
division-free output circuit is the lattice interpolant of those values.
Normalization: each returned polynomial g is g(x) / g_top(alpha), the y^0
coefficient of its monic-in-y image.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .circuit import ArithCircuit, Builder, _inline, coefficient_circuits, eval_batch, find_nonzero_point, homogeneous_components, pit
from .errors import DivisionByZeroAtGate, NoNonzeroPoint, ParseError, ZeroCircuit
from .field import FieldCtx, char_guard


# ---- coefficient arithmetic -------------------------------------------------


class FieldArith:
    """Plain field elements (ints mod p)."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.p = ctx.p

    def const(self, c):
        return c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def scale(self, a, c):
        return a * c % self.p

    def mul(self, a, b):
        return a * b % self.p

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def lin(self, xs, cs):
        return sum(x * c for x, c in zip(xs, cs)) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0


class KElem:
    __slots__ = ("node", "v")

    def __init__(self, node: int, v):
        self.node = node
        self.v = v


class CircuitArith:
    """Circuit nodes over x_1..x_n with their values at fixed points.

    The first `npit` points are uniform random and serve as the PIT sample:
    an element is declared zero when it vanishes at all of them. Points where
    a division hits zero are recorded in `bad` and ignored from then on.
    """

    def __init__(self, ctx: FieldCtx, b: Builder, npoints: int, npit: int):
        self.ctx = ctx
        self.p = ctx.p
        self.b = b
        self.dt = np.int64 if ctx.p < (1 << 31) else object
        self.P = npoints
        self.npit = npit
        self.bad = np.zeros(npoints, dtype=bool)
        self._c: dict = {}

    def const(self, c):
        c %= self.p
        if c not in self._c:
            self._c[c] = KElem(self.b.const(c), np.full(self.P, c, dtype=self.dt))
        return self._c[c]

    def add(self, a, b):
        return KElem(self.b.add([a.node, b.node]), (a.v + b.v) % self.p)

    def sub(self, a, b):
        return KElem(self.b.add([a.node, b.node], [1, -1]), (a.v - b.v) % self.p)

    def scale(self, a, c):
        c %= self.p
        return KElem(self.b.add([a.node], [c]), a.v * c % self.p)

    def mul(self, a, b):
        return KElem(self.b.mul([a.node, b.node]), a.v * b.v % self.p)

    def dot(self, xs, ys):
        p = self.p
        if not xs:
            return self.const(0)
        v = np.zeros(self.P, dtype=self.dt)
        for x, y in zip(xs, ys):
            v = (v + x.v * y.v) % p
        return KElem(self.b.add([self.b.mul([x.node, y.node]) for x, y in zip(xs, ys)]), v)

    def lin(self, xs, cs):
        p = self.p
        v = np.zeros(self.P, dtype=self.dt)
        for x, c in zip(xs, cs):
            v = (v + x.v * (c % p)) % p
        return KElem(self.b.add([x.node for x in xs], [c % p for c in cs]), v)

    def inv(self, a):
        p = self.p
        zero = a.v == 0
        self.bad |= zero
        v = np.array([0 if z else pow(int(x), -1, p) for x, z in zip(a.v, zero)], dtype=self.dt)
        return KElem(self.b.div(self.b.const(1), a.node), v)

    def is_zero(self, a) -> bool:
        ok = ~self.bad[: self.npit]
        if not ok.any():
            raise NoNonzeroPoint("every PIT point hit a vanishing denominator")
        return not np.any(a.v[: self.npit][ok])


# ---- univariate pipeline over any coefficient arithmetic ------------------------
# Polynomials are coefficient lists, low to high; monic ones end in A.const(1).


def _deg(f) -> int:
    return len(f) - 1


def _one(A):
    return [A.const(1)]


def _power_sums(A, f, N: int) -> list:
    """p_0..p_N of monic f by Newton's identities."""
    n = _deg(f)
    ps = [A.const(n)]
    for k in range(1, N + 1):
        xs, cs = [], []
        if k <= n:
            xs.append(f[n - k])
            cs.append(-k)
        m = min(k - 1, n)
        acc = A.lin(xs, cs)
        if m:
            acc = A.sub(acc, A.dot([f[n - i] for i in range(1, m + 1)], [ps[k - i] for i in range(1, m + 1)]))
        ps.append(acc)
    return ps


def _esym_from_sums(A, c: Sequence, D: int) -> list:
    """e_0..e_D from power sums c[1..D] (c[0] unused)."""
    p = A.p
    e = [A.const(1)]
    for k in range(1, D + 1):
        s = A.dot([e[k - i] for i in range(1, k + 1)], [c[i] if i % 2 else A.scale(c[i], -1) for i in range(1, k + 1)])
        e.append(A.scale(s, pow(k, -1, p)))
    return e


def _from_power_sums(A, ps: Sequence, n: int) -> list:
    e = _esym_from_sums(A, ps, n)
    return [e[n - j] if (n - j) % 2 == 0 else A.scale(e[n - j], -1) for j in range(n)] + [A.const(1)]


def _derivative(A, f, r: int) -> list:
    out = []
    for j in range(len(f) - r):
        w = 1
        for t in range(j + 1, j + r + 1):
            w *= t
        out.append(A.scale(f[j + r], w))
    return out


def _polymul(A, a, b) -> list:
    out = []
    for k in range(len(a) + len(b) - 1):
        lo, hi = max(0, k - len(b) + 1), min(k, len(a) - 1)
        out.append(A.dot([a[i] for i in range(lo, hi + 1)], [b[k - i] for i in range(lo, hi + 1)]))
    return out


def _xpow_table(A, f, top: int) -> list:
    """x^k mod f for k = 0..top, as length-n lists."""
    n = _deg(f)
    zero, one = A.const(0), A.const(1)
    rows = []
    for k in range(top + 1):
        if k < n:
            rows.append([one if i == k else zero for i in range(n)])
        else:
            prev = rows[-1]
            hi = prev[n - 1]
            rows.append([A.sub(prev[i - 1] if i else zero, A.mul(hi, f[i])) for i in range(n)])
    return rows


def _reduce(A, u, R) -> list:
    n = len(R[0])
    if len(u) <= n:
        return list(u) + [A.const(0)] * (n - len(u))
    return [A.add(u[i] if i < n else A.const(0), A.dot(u[n:], [R[k][i] for k in range(n, len(u))])) for i in range(n)]


def _exact_div(A, f, g) -> list:
    d = _deg(f) - _deg(g)
    if _deg(g) == 0:
        return f
    if d == 0:
        return _one(A)
    pf, pg = _power_sums(A, f, d), _power_sums(A, g, d)
    return _from_power_sums(A, [A.sub(a, b) for a, b in zip(pf, pg)], d)


def _perfect_root(A, f, r: int) -> list:
    n = _deg(f)
    if r == 1 or n == 0:
        return f
    ir = pow(r, -1, A.p)
    ps = [A.scale(v, ir) for v in _power_sums(A, f, n // r)]
    return _from_power_sums(A, ps, n // r)


def filter_split(A, f, g) -> tuple[list, list]:
    """(in, out) for monic f against g: out has the roots of f where g is
    nonzero. D = #{alpha : g(alpha) != 0} is the top nonvanishing
    e_k(g(alpha)); the power sums of out come from the t-linear part of
    e_D(g(alpha)(1 + t alpha^k)) = s (1 + t p_k(out))."""
    n = _deg(f)
    if n == 0:
        return f, f
    while len(g) > 1 and A.is_zero(g[-1]):
        g = g[:-1]
    R = _xpow_table(A, f, max(2 * n - 2, len(g) - 1))
    G = _reduce(A, g, R)
    ps = _power_sums(A, f, 2 * n)
    pows = [G]
    for _ in range(1, n):
        pows.append(_reduce(A, _polymul(A, pows[-1], G), R))
    c = [None] + [A.dot(P, ps[:n]) for P in pows]
    e = _esym_from_sums(A, c, n)
    D = max((k for k in range(n + 1) if not A.is_zero(e[k])), default=0)
    if D == 0:
        return f, _one(A)
    if D == n:
        return _one(A), f
    sinv = A.inv(e[D])
    p = A.p
    pout = [A.const(D)]
    for k in range(1, D + 1):
        cd = [None] + [A.scale(A.dot(pows[j - 1], ps[k:k + n]), j) for j in range(1, n + 1)]
        # dual Newton recurrence for the t-part of e_1..e_D
        ed = [A.const(0)]
        for m in range(1, D + 1):
            xs = [e[m - i] for i in range(1, m + 1)] + [ed[m - i] for i in range(1, m + 1)]
            ys = [cd[i] for i in range(1, m + 1)] + [c[i] for i in range(1, m + 1)]
            sg = [1 if i % 2 else -1 for i in range(1, m + 1)] * 2
            ys = [y if s == 1 else A.scale(y, -1) for y, s in zip(ys, sg)]
            ed.append(A.scale(A.dot(xs, ys), pow(m, -1, p)))
        pout.append(A.mul(ed[D], sinv))
    out = _from_power_sums(A, pout, D)
    return _exact_div(A, f, out), out


def _ge_chain(A, f) -> list:
    chain = [f]
    r = 1
    while _deg(chain[-1]) > 0:
        chain.append(filter_split(A, chain[-1], _derivative(A, f, r))[0])
        r += 1
    return chain


def squarefree_parts(A, f) -> list:
    """[f_1, f_2, ...] with f = prod f_i^i, for monic f."""
    if _deg(f) == 0:
        return []
    chain = _ge_chain(A, f)
    le = [_exact_div(A, f, c) for c in chain]
    return [_perfect_root(A, _exact_div(A, le[r], le[r - 1]), r) for r in range(1, len(chain))]


def _sqfree(A, f) -> list:
    out = _one(A)
    for q in squarefree_parts(A, f):
        out = _polymul(A, out, q)
    return out


def _support(A, fs) -> list:
    s = _one(A)
    for f in fs:
        sf = _sqfree(A, f)
        if _deg(s) == 0:
            s = sf
        elif _deg(sf) > 0:
            s = _polymul(A, s, filter_split(A, sf, s)[1])
    return s


def _gcd_with_support(A, fs, s) -> list:
    delta = min(_deg(f) for f in fs)
    out = _one(A)
    cur = s
    r = 1
    while r <= delta and _deg(cur) > 0:
        for f in fs:
            if _deg(cur) == 0:
                break
            cur = filter_split(A, cur, _derivative(A, f, r - 1))[0]
        if _deg(cur) > 0:
            out = _polymul(A, out, cur)
        r += 1
    return out


def gcd_many(A, fs) -> list:
    if len(fs) == 1:
        return fs[0]
    if min(_deg(f) for f in fs) == 0:
        return _one(A)
    return _gcd_with_support(A, fs, _support(A, fs))


def lcm_many(A, fs) -> list:
    fs = [f for f in fs if _deg(f) > 0] or [fs[0]]
    if len(fs) == 1:
        return fs[0]
    prod = _one(A)
    for f in fs:
        prod = _polymul(A, prod, f)
    cof = [_exact_div(A, prod, f) for f in fs]
    return _exact_div(A, prod, _gcd_with_support(A, cof, _support(A, fs)))


# ---- circuits ------------------------------------------------------------------------


@dataclass(frozen=True)
class MPolyCircuit:
    circuit: ArithCircuit
    nvars: int
    degree_bound: int
    raw: Optional[ArithCircuit] = field(default=None, compare=False)  # division-using form, if any

    @property
    def ctx(self) -> FieldCtx:
        return self.circuit.ctx

    def __call__(self, point: Sequence[int]) -> int:
        from .circuit import eval as ceval

        return ceval(self.circuit, list(point))[0]

    def eval_many(self, points) -> list[int]:
        cols = [[pt[i] for pt in points] for i in range(self.circuit.arity)]
        return [int(v) for v in eval_batch(self.circuit, cols)[0]]


_VAR = re.compile(r"x(\d+)")


class _MExprParser:
    """Expressions in x1..xn with + - * ^ ( ); builds a circuit and tracks a
    syntactic degree bound."""

    def __init__(self, b: Builder, toks):
        self.b = b
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        neg = False
        if self.peek() in (("op", "-"), ("op", "+")):
            neg = self.take()[1] == "-"
        terms = [self.term()]
        signs = [-1 if neg else 1]
        while self.peek() in (("op", "+"), ("op", "-")):
            signs.append(1 if self.take()[1] == "+" else -1)
            terms.append(self.term())
        if len(terms) == 1 and signs[0] == 1:
            return terms[0]
        return self.b.add([t[0] for t in terms], signs), max(t[1] for t in terms)

    def term(self):
        fs = [self.power()]
        while self.peek() == ("op", "*") or self.peek()[0] in ("num", "name") or self.peek() == ("op", "("):
            if self.peek() == ("op", "*"):
                self.take()
            fs.append(self.power())
        if len(fs) == 1:
            return fs[0]
        return self.b.mul([f[0] for f in fs]), sum(f[1] for f in fs)

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            if e == 0:
                return self.b.const(1), 0
            return self.b.mul([base[0]] * e), base[1] * e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.b.const(val), 0
        if kind == "name":
            idx = [int(i) for i in _VAR.findall(val)] if re.fullmatch(r"(x\d+)+", val) else []
            if not idx or not all(1 <= i <= self.b.arity for i in idx):
                raise ParseError(f"unknown variable {val!r}")
            if len(idx) == 1:
                return self.b.x[idx[0] - 1], 1
            return self.b.mul([self.b.x[i - 1] for i in idx]), len(idx)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        if (kind, val) == ("op", "-"):
            g, d = self.power()
            return self.b.add([g], [-1]), d
        raise ParseError(f"unexpected token {val!r}")


def parse_mpoly(ctx: FieldCtx, text: str, nvars: Optional[int] = None) -> MPolyCircuit:
    """Circuit for an expression in x1..xn; the degree bound is syntactic."""
    from .upoly import _tokens

    toks = _tokens(text)
    if not toks:
        raise ParseError("empty polynomial")
    used = [int(i) for k, v in toks if k == "name" for i in _VAR.findall(v)]
    n = nvars if nvars is not None else max(used, default=1)
    b = Builder(ctx, n)
    ps = _MExprParser(b, toks)
    out, d = ps.expr()
    if ps.i != len(toks):
        raise ParseError(f"trailing input near token {ps.i}")
    return MPolyCircuit(b.circuit([out]).with_outputs([out]), n, d)


def degree_on_lines(fC: MPolyCircuit, seed: int = 0, lines: int = 3) -> int:
    """Largest degree of f restricted to random lines, by interpolating
    degree_bound + 1 values per line; spot-checks the declared bound."""
    from .upoly import interpolate_consecutive

    ctx = fC.ctx
    p = ctx.p
    rng = random.Random(seed)
    d = fC.degree_bound
    best = -1
    for _ in range(lines):
        a = [rng.randrange(p) for _ in range(fC.nvars)]
        b = [rng.randrange(p) for _ in range(fC.nvars)]
        pts = [[(ai + t * bi) % p for ai, bi in zip(a, b)] for t in range(d + 2)]
        vals = fC.eval_many(pts)
        poly = interpolate_consecutive(ctx, vals)
        best = max(best, poly.degree if not poly.is_zero else -1)
    return best


def top_homogeneous(fC: MPolyCircuit, seed: int = 0) -> MPolyCircuit:
    """The highest homogeneous component that PIT finds nonzero; its
    degree_bound is the true total degree of f."""
    comps = homogeneous_components(fC.circuit, fC.degree_bound)
    for k in range(fC.degree_bound, -1, -1):
        if not pit(comps[k], k, seed + k).is_zero:
            return MPolyCircuit(comps[k], fC.nvars, k)
    raise ZeroCircuit("polynomial is zero")


def _shift(fC: MPolyCircuit, alpha: Sequence[int], scalar: int) -> ArithCircuit:
    """scalar * f(x + y alpha) over inputs (x_1..x_n, y)."""
    n = fC.nvars
    b = Builder(fC.ctx, n + 1)
    y = b.x[n]
    ins = [b.add([b.x[i], y], [1, alpha[i]]) for i in range(n)]
    o = _inline(b, fC.circuit, ins)[fC.circuit.outputs[0]]
    out = b.add([o], [scalar])
    return b.circuit([out]).with_outputs([out])


def monic_transform(fC: MPolyCircuit, seed: int = 0, alpha: Optional[Sequence[int]] = None) -> tuple[MPolyCircuit, tuple, int]:
    """(f(x + y alpha) / f_top(alpha), alpha, 1 / f_top(alpha)); monic in y.
    alpha defaults to a PIT-found point where f_top does not vanish."""
    top = top_homogeneous(fC, seed)
    d = top.degree_bound
    if alpha is None:
        alpha = find_nonzero_point(top.circuit, d, seed)
    alpha = tuple(a % fC.ctx.p for a in alpha)
    v = top(alpha)
    if v == 0:
        raise NoNonzeroPoint("f_top vanishes at the given alpha")
    s = pow(v, -1, fC.ctx.p)
    return MPolyCircuit(_shift(fC, alpha, s), fC.nvars + 1, d), alpha, s


def _lattice(n: int, D: int) -> list[tuple]:
    """Exponent-like points beta in N^n with |beta| <= D."""
    return [b for b in itertools.product(range(D + 1), repeat=n) if sum(b) <= D]


def _lattice_circuit(ctx: FieldCtx, n: int, D: int, r, h, lat, values) -> ArithCircuit:
    """Interpolant through (r + h * beta, values[beta]) on the principal lattice:
    L_beta = prod_i prod_{j < beta_i} (lam_i - j) / beta_i!, lam_0 = D - sum lam_i."""
    p = ctx.p
    b = Builder(ctx, n)
    one = b.const(1)
    hi = [pow(x, -1, p) for x in h]
    lam = [b.add([one] + b.x, [D + sum(r[i] * hi[i] for i in range(n))] + [-x for x in hi])]
    lam += [b.add([b.x[i], one], [hi[i], -r[i] * hi[i]]) for i in range(n)]
    fac = {}
    fact = [1] * (D + 1)
    for k in range(1, D + 1):
        fact[k] = fact[k - 1] * k % p
    terms = {}
    for beta, val in zip(lat, values):
        if not val:
            continue
        full = (D - sum(beta),) + tuple(beta)
        args = [b.const(pow(int(np.prod([fact[x] for x in full], dtype=object)) % p, -1, p))]
        for i, bi in enumerate(full):
            for j in range(bi):
                if (i, j) not in fac:
                    fac[i, j] = b.add([lam[i], one], [1, -j])
                args.append(fac[i, j])
        terms[b.mul(args)] = int(val)
    out = b.lin(terms) if terms else b.const(0)
    return b.circuit([out]).with_outputs([out])


class _Run:
    """One shift + pipeline execution; outputs are read off the lattice."""

    def __init__(self, fCs: Sequence[MPolyCircuit], D: int, seed: int, npit: int = 16):
        ctx = fCs[0].ctx
        n = fCs[0].nvars
        p = ctx.p
        self.ctx, self.n, self.D = ctx, n, D
        rng = random.Random(seed)
        # one alpha making every input monic in y
        tops, degs = [], []
        for f in fCs:
            t = top_homogeneous(f, seed)
            tops.append(t)
            degs.append(t.degree_bound)
        b0 = Builder(ctx, n)
        outs = [_inline(b0, t.circuit, b0.x)[t.circuit.outputs[0]] for t in tops]
        prod = b0.mul(outs)
        alpha = find_nonzero_point(b0.circuit([prod]).with_outputs([prod]), sum(degs), seed)
        self.alpha = alpha
        self.r = [rng.randrange(p) for _ in range(n)]
        self.h = [rng.randrange(1, p) for _ in range(n)]
        self.lat = _lattice(n, D)
        pts = [[rng.randrange(p) for _ in range(n)] for _ in range(npit)]
        pts += [[(self.r[i] + self.h[i] * bt[i]) % p for i in range(n)] for bt in self.lat]
        self.b = Builder(ctx, n)
        A = self.A = CircuitArith(ctx, self.b, len(pts), npit)
        cols = [[pt[i] for pt in pts] for i in range(n)] + [[0] * len(pts)]
        self.polys = []
        for f, t, d in zip(fCs, tops, degs):
            s = pow(t(alpha), -1, p)
            fhat = _shift(f, alpha, s)
            coefs = coefficient_circuits(fhat, n, d)
            poly = []
            for j, cc in enumerate(coefs[:d]):
                node = _inline(self.b, cc, self.b.x + [self.b.const(0)])[cc.outputs[0]]
                (v,) = eval_batch(cc, cols)
                poly.append(KElem(node, v.astype(A.dt) % p))
            poly.append(A.const(1))
            self.polys.append(poly)

    def output(self, poly: list) -> MPolyCircuit:
        """The y^0 coefficient of a monic-in-y result, i.e. the unshifted
        polynomial divided by its top form at alpha."""
        A = self.A
        c0 = poly[0]
        npit = A.npit
        if A.bad[npit:].any():
            raise DivisionByZeroAtGate(-1)
        raw = self.b.circuit([c0.node]).with_outputs([c0.node])
        circ = _lattice_circuit(self.ctx, self.n, self.D, self.r, self.h, self.lat, c0.v[npit:])
        return MPolyCircuit(circ, self.n, _deg(poly), raw)


def _retry(fn, seed: int, tries: int = 6):
    last = None
    for t in range(tries):
        try:
            return fn(seed + 1000 * t)
        except DivisionByZeroAtGate as e:  # a lattice point hit a denominator zero
            last = e
    raise NoNonzeroPoint("lattice kept hitting vanishing denominators") from last


def _check(fCs: Sequence[MPolyCircuit]):
    if not fCs:
        raise ValueError("need at least one polynomial")
    n = fCs[0].nvars
    ctx = fCs[0].ctx
    for f in fCs:
        if f.nvars != n or f.ctx != ctx:
            raise ValueError("inputs must share variables and field")
        if any(g.op in ("div", "select") for g in f.circuit.gates):
            raise ValueError("inputs must be division-free and select-free")


def msqfree(fC: MPolyCircuit, seed: int = 0) -> list[MPolyCircuit]:
    """Parts f_1, f_2, ... (index i - 1 has multiplicity i), each normalized
    as g / g_top(alpha); a missing multiplicity is the constant 1."""
    _check([fC])
    char_guard(fC.ctx, fC.degree_bound)

    def go(s):
        run = _Run([fC], fC.degree_bound, s)
        return [run.output(q) for q in squarefree_parts(run.A, run.polys[0])]

    return _retry(go, seed)


def mgcd(fCs: Sequence[MPolyCircuit], seed: int = 0) -> MPolyCircuit:
    _check(fCs)
    m, d = len(fCs), max(f.degree_bound for f in fCs)
    char_guard(fCs[0].ctx, max(m, 2) ** 2 * d)

    def go(s):
        run = _Run(fCs, d, s)
        return run.output(gcd_many(run.A, run.polys))

    return _retry(go, seed)


def mlcm(fCs: Sequence[MPolyCircuit], seed: int = 0) -> MPolyCircuit:
    _check(fCs)
    m = len(fCs)
    d = sum(f.degree_bound for f in fCs)
    char_guard(fCs[0].ctx, max(m, 2) ** 2 * max(f.degree_bound for f in fCs))

    def go(s):
        run = _Run(fCs, d, s)
        return run.output(lcm_many(run.A, run.polys))

    return _retry(go, seed)
