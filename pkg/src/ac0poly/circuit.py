"""Arithmetic circuits with select gates.

Gates are stored in topological order. ``Add`` gates may carry constant
weights (``coeffs``), so a fixed linear combination of wires costs one layer.
Builders emit constant-depth circuits; interpolation nodes and other field
constants are baked in at build time.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from .errors import (
    CapExceeded,
    DivisionByZeroAtGate,
    MalformedCircuit,
    NoNonzeroPoint,
    NotAPolynomial,
    ZeroCircuit,
)
from .field import FieldCtx, char_guard

OPS = ("input", "const", "add", "mul", "div", "select")

# builders refuse to emit more wires than this
MAX_WIRES = 20_000_000


class Gate(NamedTuple):
    op: str
    args: tuple = ()
    value: Optional[int] = None  # input index or constant
    coeffs: Optional[tuple] = None  # Add weights


@dataclass(frozen=True)
class ArithCircuit:
    ctx: FieldCtx
    arity: int
    gates: tuple
    outputs: tuple

    def __post_init__(self):
        self.validate()

    def validate(self):
        for i, g in enumerate(self.gates):
            if g.op not in OPS:
                raise MalformedCircuit(f"gate {i}: unknown op {g.op!r}")
            if any(not (0 <= a < i) for a in g.args):
                raise MalformedCircuit(f"gate {i}: arguments must precede the gate")
            if g.op == "input" and not (0 <= (g.value if g.value is not None else -1) < self.arity):
                raise MalformedCircuit(f"gate {i}: bad input index")
            if g.op == "const" and g.value is None:
                raise MalformedCircuit(f"gate {i}: constant without value")
            if g.op == "div" and len(g.args) != 2:
                raise MalformedCircuit(f"gate {i}: div takes two arguments")
            if g.coeffs is not None and (g.op != "add" or len(g.coeffs) != len(g.args)):
                raise MalformedCircuit(f"gate {i}: bad weights")
        if any(not (0 <= o < len(self.gates)) for o in self.outputs):
            raise MalformedCircuit("output index out of range")

    @property
    def size(self) -> int:
        return sum(len(g.args) for g in self.gates)

    def depths(self) -> list[int]:
        dep = [0] * len(self.gates)
        for i, g in enumerate(self.gates):
            if g.op in ("input", "const"):
                continue
            dep[i] = 1 + max((dep[a] for a in g.args), default=0)
        return dep

    @property
    def depth(self) -> int:
        dep = self.depths()
        return max((dep[o] for o in self.outputs), default=0)

    def with_outputs(self, outputs: Sequence[int]) -> "ArithCircuit":
        """Same gates, other outputs, unreachable gates dropped."""
        keep = set()
        stack = list(outputs)
        while stack:
            i = stack.pop()
            if i in keep:
                continue
            keep.add(i)
            stack.extend(self.gates[i].args)
        order = sorted(keep)
        new = {old: k for k, old in enumerate(order)}
        gates = tuple(g._replace(args=tuple(new[a] for a in g.args)) for g in (self.gates[i] for i in order))
        return ArithCircuit(self.ctx, self.arity, gates, tuple(new[o] for o in outputs))

    def to_json(self) -> dict:
        gates = []
        for g in self.gates:
            d = {"op": g.op, "args": list(g.args)}
            if g.op == "const":
                d["value"] = g.value
            elif g.op == "input":
                d["index"] = g.value
            if g.coeffs is not None:
                d["coeffs"] = list(g.coeffs)
            gates.append(d)
        return {"modulus": self.ctx.p, "inputs": self.arity, "gates": gates, "outputs": list(self.outputs)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict, ctx: Optional[FieldCtx] = None) -> "ArithCircuit":
        try:
            ctx = ctx or FieldCtx(int(data["modulus"]))
            gates = []
            for d in data["gates"]:
                op = d["op"]
                value = d.get("value") if op == "const" else d.get("index") if op == "input" else None
                if op == "const" and value is not None:
                    value = int(value) % ctx.p
                co = d.get("coeffs")
                gates.append(Gate(op, tuple(int(a) for a in d.get("args", ())), value,
                                  None if co is None else tuple(int(c) % ctx.p for c in co)))
            return cls(ctx, int(data["inputs"]), tuple(gates), tuple(int(o) for o in data["outputs"]))
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedCircuit(str(e)) from e


@dataclass(frozen=True)
class Metrics:
    size: int
    depth: int
    counts: dict


def metrics(C: ArithCircuit) -> Metrics:
    return Metrics(C.size, C.depth, dict(Counter(g.op for g in C.gates)))


def eval_all(C: ArithCircuit, inputs: Sequence[int]) -> list[int]:
    """Values of every gate."""
    if len(inputs) != C.arity:
        raise ValueError(f"expected {C.arity} inputs, got {len(inputs)}")
    p = C.ctx.p
    x = [int(v) % p for v in inputs]
    vals = [0] * len(C.gates)
    for i, g in enumerate(C.gates):
        op = g.op
        if op == "add":
            if g.coeffs is None:
                v = sum(vals[a] for a in g.args)
            else:
                v = sum(c * vals[a] for c, a in zip(g.coeffs, g.args))
        elif op == "mul":
            v = 1
            for a in g.args:
                v = v * vals[a] % p
                if not v:
                    break
        elif op == "input":
            v = x[g.value]
        elif op == "const":
            v = g.value
        elif op == "div":
            den = vals[g.args[1]]
            if not den:
                raise DivisionByZeroAtGate(i)
            v = vals[g.args[0]] * pow(den, -1, p)
        else:  # select: first nonzero argument
            v = next((vals[a] for a in g.args if vals[a]), 0)
        vals[i] = v % p
    return vals


def eval(C: ArithCircuit, inputs: Sequence[int]) -> list[int]:  # noqa: A001
    vals = eval_all(C, inputs)
    return [vals[o] for o in C.outputs]


# ---- construction helper --------------------------------------------------


class Builder:
    """Append-only gate list with cached constants."""

    def __init__(self, ctx: FieldCtx, arity: int, cap: Optional[int] = None):
        self.ctx = ctx
        self.p = ctx.p
        self.arity = arity
        self.cap = MAX_WIRES if cap is None else cap
        self.wires = 0
        self.gates: list[Gate] = []
        self._consts: dict[int, int] = {}
        self.x = [self._emit(Gate("input", (), i)) for i in range(arity)]

    def _emit(self, g: Gate) -> int:
        self.wires += len(g.args)
        if self.wires > self.cap:
            raise CapExceeded(f"circuit exceeds {self.cap} wires")
        self.gates.append(g)
        return len(self.gates) - 1

    def const(self, c: int) -> int:
        c %= self.p
        if c not in self._consts:
            self._consts[c] = self._emit(Gate("const", (), c))
        return self._consts[c]

    def add(self, args: Sequence[int], coeffs: Optional[Sequence[int]] = None) -> int:
        if coeffs is None:
            return self._emit(Gate("add", tuple(args)))
        pairs = [(a, c % self.p) for a, c in zip(args, coeffs) if c % self.p]
        if not pairs:
            return self.const(0)
        if all(c == 1 for _, c in pairs):
            return self._emit(Gate("add", tuple(a for a, _ in pairs)))
        return self._emit(Gate("add", tuple(a for a, _ in pairs), None, tuple(c for _, c in pairs)))

    def lin(self, terms: dict) -> int:
        """Weighted sum {gate: weight}."""
        return self.add(list(terms), list(terms.values()))

    def mul(self, args: Sequence[int]) -> int:
        return self._emit(Gate("mul", tuple(args)))

    def div(self, a: int, b: int) -> int:
        return self._emit(Gate("div", (a, b)))

    def select(self, args: Sequence[int]) -> int:
        return self._emit(Gate("select", tuple(args)))

    def circuit(self, outputs: Sequence[int]) -> ArithCircuit:
        return ArithCircuit(self.ctx, self.arity, tuple(self.gates), tuple(outputs))


@lru_cache(maxsize=128)
def interp_rows(ctx: FieldCtx, D: int, K: int) -> tuple:
    """W[k][i] for k <= K: the x^k coefficient of the interpolant through
    (i, v_i), i = 0..D, is sum_i W[k][i] v_i.

    Uses the low coefficients of N(x)/(x - i), N = prod_j (x - j), scaled by
    1 / prod_{j != i} (i - j); cost O(D K).
    """
    char_guard(ctx, D)
    p = ctx.p
    K = min(K, D)
    N = [1] + [0] * (K + 1)  # N mod x^(K+2)
    for j in range(D + 1):
        for k in range(K + 1, 0, -1):
            N[k] = (N[k - 1] - j * N[k]) % p
        N[0] = (-j * N[0]) % p
    fact = [1] * (D + 1)
    for i in range(1, D + 1):
        fact[i] = fact[i - 1] * i % p
    W = [[0] * (D + 1) for _ in range(K + 1)]
    for i in range(D + 1):
        w = fact[i] * fact[D - i] % p
        if (D - i) % 2:
            w = -w % p
        s = pow(w, -1, p)
        if i == 0:
            q = N[1:K + 2]
        else:
            ii = pow(i, -1, p)
            q = [0] * (K + 1)
            prev = 0
            for k in range(K + 1):
                prev = (prev - N[k]) * ii % p
                q[k] = prev
        for k in range(K + 1):
            W[k][i] = q[k] * s % p
    return tuple(tuple(r) for r in W)


# ---- gadgets ----------------------------------------------------------------


def _powers(p: int, c: int, k: int) -> list[int]:
    out = [1] * (k + 1)
    for i in range(1, k + 1):
        out[i] = out[i - 1] * c % p
    return out


def _ps_gadget(b: Builder, a: Sequence[int], K: int, inv: Optional[int] = None) -> list[int]:
    """Gates p_0..p_K for the polynomial with coefficient gates a_0..a_n.

    inv is a gate holding 1/a_n (None when a_n is known to be 1). Each node c
    gets rev(f')(c) * prod_j (1 + w(c)^(2^j)) with w = 1 - rev(f)/a_n; the
    low K + 1 coefficients of that product are the power sums.
    """
    n = len(a) - 1
    if n < 1:
        raise ValueError("power sums need degree >= 1")
    p = b.p
    J = max(K, 0).bit_length()  # 2^J > K
    D = (n - 1) + n * ((1 << J) - 1)
    W = interp_rows(b.ctx, D, K)
    one = b.const(1)
    s = []
    for c in range(D + 1):
        cp = _powers(p, c, n)
        w = b.lin({a[n - k]: -cp[k] for k in range(1, n + 1)})
        r = b.lin({a[n - k]: (n - k) * cp[k] for k in range(n)})
        if inv is not None:
            w = b.mul([w, inv])
            r = b.mul([r, inv])
        facs = [b.add([one, b.mul([w] * (1 << j))]) for j in range(J)]
        s.append(b.mul([r] + facs))
    return [b.lin({s[c]: W[k][c] for c in range(D + 1)}) for k in range(K + 1)]


def _exp_gadget(b: Builder, u: Sequence[dict], N: int, ks: Optional[Sequence[int]] = None) -> list[int]:
    """Coefficients t^k (k in ks, default 0..N) of exp(u(t)) mod t^(N+1),
    where u_k = u[k-1] is a linear form {gate: weight}, k = 1..N."""
    p = b.p
    ks = list(range(N + 1)) if ks is None else list(ks)
    D = N * N
    W = interp_rows(b.ctx, D, max(ks))
    invfact = [1] * (N + 1)
    f = 1
    for j in range(1, N + 1):
        f = f * j % p
        invfact[j] = pow(f, -1, p)
    one = b.const(1)
    vals = []
    for c in range(D + 1):
        cp = _powers(p, c, N)
        terms: dict = {}
        for k in range(1, N + 1):
            for g, wt in u[k - 1].items():
                terms[g] = (terms.get(g, 0) + wt * cp[k]) % p
        uc = b.lin(terms)
        pw = [b.mul([uc] * j) for j in range(1, N + 1)]
        vals.append(b.add([one] + pw, invfact))
    return [b.lin({vals[c]: W[k][c] for c in range(D + 1)}) for k in ks]


def _root_weights(b: Builder, ps: Sequence[int], K: int) -> list[int]:
    """pi_c = sum over roots of the Lagrange basis polynomial at node c, so
    that sum_i phi(alpha_i) = sum_c pi_c phi(c) whenever deg phi <= K."""
    W = interp_rows(b.ctx, K, K)
    return [b.lin({ps[j]: W[j][c] for j in range(K + 1)}) for c in range(K + 1)]


def _inv_int(p: int, k: int) -> int:
    return pow(k % p, -1, p)


def _newton_terms(p: int, sums: Sequence[int], sign: int) -> list[dict]:
    """u_k = sign^(k+1) s_k / k as linear forms; sign = -1 turns power sums of
    g(alpha) into prod (1 + g(alpha) t), sign = +1 with negation gives prod (1 - alpha t)."""
    return [{sums[k - 1]: (sign ** (k + 1)) * _inv_int(p, k)} for k in range(1, len(sums) + 1)]


# ---- builders -----------------------------------------------------------------


def build_esym(ctx: FieldCtx, n: int, d: int) -> ArithCircuit:
    """e_d(x_1..x_n): prod_i (1 + c x_i) at c = 0..n, then one interpolation
    row. Depth 3."""
    if n < 1 or not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n and n >= 1")
    b = Builder(ctx, n)
    W = interp_rows(ctx, n, d)
    one = b.const(1)
    prods = [b.mul([b.add([one, x], [1, c]) for x in b.x]) for c in range(n + 1)]
    return b.circuit([b.lin({prods[c]: W[d][c] for c in range(n + 1)})])


def build_power_sums(ctx: FieldCtx, n: int, d: int) -> ArithCircuit:
    """Inputs f_0..f_n (f_n nonzero), outputs p_0..p_d."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1, d >= 0")
    b = Builder(ctx, n + 1)
    inv = b.div(b.const(1), b.x[n])
    return b.circuit(_ps_gadget(b, b.x, d, inv))


def build_coeffs_from_power_sums(ctx: FieldCtx, n: int) -> ArithCircuit:
    """Inputs p_1..p_n, outputs f_0..f_n of the monic polynomial with those
    power sums: rev(f) = exp(-sum p_k t^k / k)."""
    if n < 1:
        raise ValueError("need n >= 1")
    char_guard(ctx, n)
    b = Builder(ctx, n)
    p = ctx.p
    u = [{b.x[k - 1]: -_inv_int(p, k)} for k in range(1, n + 1)]
    rev = _exp_gadget(b, u, n)
    return b.circuit(rev[::-1])


def build_resultant(ctx: FieldCtx, n: int, m: int) -> ArithCircuit:
    """Inputs f_0..f_n, g_0..g_m (f_n nonzero), output res_{n,m}(f, g) =
    f_n^m prod g(alpha_i), with prod g(alpha_i) = e_n(g(alpha)) taken from
    the power sums sum_i g(alpha_i)^k."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    char_guard(ctx, n)
    b = Builder(ctx, n + m + 2)
    f, g = b.x[: n + 1], b.x[n + 1:]
    p = ctx.p
    inv = b.div(b.const(1), f[n])
    K = n * m
    ps = _ps_gadget(b, f, K, inv)
    pi = _root_weights(b, ps, K)
    sums = []
    gc = [b.lin({g[i]: pow(c, i, p) for i in range(m + 1)}) for c in range(K + 1)]
    for k in range(1, n + 1):
        sums.append(b.add([b.mul([pi[c]] + [gc[c]] * k) for c in range(K + 1)]))
    (en,) = _exp_gadget(b, _newton_terms(p, sums, -1), n, [n])
    return b.circuit([b.mul([en] + [f[n]] * m)])


def _deriv_forms(coef: Sequence[int], r: int, p: int) -> list[dict]:
    """Coefficients of the r-th derivative as linear forms in coefficient gates."""
    out = []
    for j in range(len(coef) - r):
        w = 1
        for t in range(j + 1, j + r + 1):
            w = w * t % p
        out.append({coef[j + r]: w})
    return out


def _filter_gadget(b: Builder, pi: Sequence[int], N: int, hs: Sequence[list]) -> tuple[list[int], list[int]]:
    """Part of the universe at roots where some h in hs is nonzero.

    The universe is a monic polynomial with at most N roots, given through its
    root weights pi (nodes 0..K). Returns (F, ind): F_0..F_N are the
    coefficients of y^(N - D) * out(y) with D = deg out, and ind[D'] = [D' = D].

    e_D of (y - x) sum_i z^i h_i(x) over the roots is sampled on a y, z grid;
    the top nonvanishing block in y and a z-node where its leading coefficient
    is nonzero are picked by prefix selects over the flattened (D desc, z asc)
    order, which turns the choice into 0/1 weights.
    """
    p = b.p
    K = len(pi) - 1
    L = len(hs)
    Z = N * max(L - 1, 0)
    Wy = interp_rows(b.ctx, N, N)
    # esym blocks at every grid point
    E = {}
    for z0 in range(Z + 1):
        zp = _powers(p, z0, L)
        for y0 in range(N + 1):
            sums = []
            hc = []
            for c in range(K + 1):
                cp = _powers(p, c, K)
                terms: dict = {}
                for i, h in enumerate(hs):
                    for j, form in enumerate(h):
                        for g, w in form.items():
                            terms[g] = (terms.get(g, 0) + (y0 - c) * zp[i] * cp[j] * w) % p
                hc.append(b.lin(terms))
            for k in range(1, N + 1):
                sums.append(b.add([b.mul([pi[c]] + [hc[c]] * k) for c in range(K + 1)]))
            es = _exp_gadget(b, _newton_terms(p, sums, -1), N)
            for D in range(N + 1):
                E[D, y0, z0] = es[D]
    # y-coefficients of each block at each z-node
    R = {}
    for D in range(N + 1):
        for z0 in range(Z + 1):
            for j in range(D + 1):
                R[D, z0, j] = b.lin({E[D, y0, z0]: Wy[j][y0] for y0 in range(N + 1)})
    order = [(D, z0) for D in range(N, -1, -1) for z0 in range(Z + 1)]
    v = [R[D, z0, D] for D, z0 in order]
    linv = b.div(b.const(1), b.select(v))
    prev = None
    sel = []
    for q in range(len(order)):
        Bq = b.select(v[: q + 1])
        diff = b.add([Bq]) if prev is None else b.add([Bq, prev], [1, -1])
        sel.append(b.mul([diff, linv]))
        prev = Bq
    ind = [b.add([sel[q] for q, (D, _) in enumerate(order) if D == Dv]) for Dv in range(N + 1)]
    F = []
    for j in range(N + 1):
        terms = [b.mul([sel[q], R[D, z0, j - N + D], linv]) for q, (D, z0) in enumerate(order) if j - N + D >= 0]
        F.append(b.add(terms))
    return F, ind


def _lagrange_indicator(b: Builder, delta: int, d: int, M: int) -> int:
    """[delta = d] for a gate known to take a value in 0..M."""
    p = b.p
    one = b.const(1)
    den = 1
    for j in range(M + 1):
        if j != d:
            den = den * (d - j) % p
    facs = [b.add([delta, one], [1, -j]) for j in range(M + 1) if j != d]
    return b.mul([b.const(pow(den, -1, p))] + facs)


def gcd_layout(n: int, m: int) -> dict:
    """Output positions of build_gcd: blocks[d] lists the gates of the degree-d
    candidate (coefficients low to high), chain[i] the select-chain output for
    x^i."""
    M = min(n, m)
    blocks, pos = [], 0
    for d in range(M + 1):
        blocks.append(list(range(pos, pos + d + 1)))
        pos += d + 1
    return {"blocks": blocks, "chain": list(range(pos, pos + M + 1))}


def decode_gcd(values: Sequence[int], n: int, m: int) -> list[int]:
    """Coefficients (low to high) of the highest nonvanishing candidate block."""
    lay = gcd_layout(n, m)
    for blk in reversed(lay["blocks"]):
        vals = [values[i] for i in blk]
        if any(vals):
            return vals
    raise ValueError("no candidate block is nonzero")


def build_gcd(ctx: FieldCtx, n: int, m: int) -> ArithCircuit:
    """Inputs f_0..f_n, g_0..g_m (leading coefficients nonzero); outputs the
    monic gcd in the layout of gcd_layout.

    Roots are tracked inside the squarefree part s of g, obtained from the
    parts g_{<=r} (roots of multiplicity <= r, split off by filtering g against
    g, g', ..., g^(r)); p_k(s) = sum_r (p_k(g_{<=r}) - p_k(g_{<=r-1})) / r.
    Then s_{>=r} is s filtered against f, ..., f^(r-1), g, ..., g^(r-1), and
    gcd = prod_{r <= min(n, m)} s_{>=r}, assembled from power sums.
    """
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    M = min(n, m)
    p = ctx.p
    K1 = m * (m + 1)
    K2 = m * (max(n, m) + 1)
    char_guard(ctx, 2 * K2 + 2 * m * m)
    b = Builder(ctx, n + m + 2)
    one = b.const(1)
    fi, gi = b.x[: n + 1], b.x[n + 1:]
    finv, ginv = b.div(one, fi[n]), b.div(one, gi[m])
    F = [b.mul([fi[i], finv]) for i in range(n)] + [one]
    G = [b.mul([gi[i], ginv]) for i in range(m)] + [one]
    Kp = max(K1, K2)
    psG = _ps_gadget(b, G, Kp)

    # power sums of g_{<=r}, r = 0..m
    le = [None] + [None] * m
    le[m] = psG
    piG = _root_weights(b, psG[: K1 + 1], K1)
    for r in range(1, m):
        hs = [_deriv_forms(G, k, p) for k in range(r + 1)]
        Fo, ind = _filter_gadget(b, piG, m, hs)
        ps = _ps_gadget(b, Fo, K2)
        ps[0] = b.lin({ind[D]: D for D in range(m + 1)})
        le[r] = ps
    psS = []
    for k in range(K2 + 1):
        terms: dict = {}
        for r in range(1, m + 1):
            w = _inv_int(p, r)
            terms[le[r][k]] = (terms.get(le[r][k], 0) + w) % p
            if r > 1:
                terms[le[r - 1][k]] = (terms.get(le[r - 1][k], 0) - w) % p
        psS.append(b.lin(terms))
    piS = _root_weights(b, psS, K2)

    # gcd power sums p_0..p_M
    gterms = [dict() for _ in range(M + 1)]
    for r in range(1, M + 1):
        hs = [_deriv_forms(F, k, p) for k in range(r)] + [_deriv_forms(G, k, p) for k in range(r)]
        Fo, ind = _filter_gadget(b, piS, m, hs)
        ps = _ps_gadget(b, Fo, M)
        ps[0] = b.lin({ind[D]: D for D in range(m + 1)})
        for k in range(M + 1):
            t = gterms[k]
            t[psS[k]] = (t.get(psS[k], 0) + 1) % p
            t[ps[k]] = (t.get(ps[k], 0) - 1) % p
    gps = [b.lin(t) for t in gterms]
    delta = gps[0]
    rev = _exp_gadget(b, [{gps[k]: -_inv_int(p, k)} for k in range(1, M + 1)], M)
    outs, blocks = [], []
    for d in range(M + 1):
        iota = _lagrange_indicator(b, delta, d, M)
        blk = [b.mul([iota, rev[d - i]]) for i in range(d + 1)]
        blocks.append(blk)
        outs.extend(blk)
    for i in range(M + 1):
        outs.append(b.select([blocks[d][i] for d in range(M, i - 1, -1)]))
    return b.circuit(outs)


BUILDERS = {
    "esym": build_esym,
    "power_sums": build_power_sums,
    "coeffs_from_power_sums": build_coeffs_from_power_sums,
    "resultant": build_resultant,
    "gcd": build_gcd,
}


def build(kind: str, ctx: FieldCtx, *params: int, cap: Optional[int] = None) -> ArithCircuit:
    """Dispatch to build_<kind>; CapExceeded once the circuit passes `cap` wires."""
    if kind not in BUILDERS:
        raise ValueError(f"unknown builder {kind!r}; choose from {sorted(BUILDERS)}")
    global MAX_WIRES
    old = MAX_WIRES
    if cap is not None:
        MAX_WIRES = cap
    try:
        return BUILDERS[kind](ctx, *params)
    finally:
        MAX_WIRES = old


# ---- transformations ------------------------------------------------------------


def _inline(b: Builder, C: ArithCircuit, inputs: Sequence[int]) -> list[int]:
    """Copy C into b with its inputs bound to the given gates."""
    m = [0] * len(C.gates)
    for i, g in enumerate(C.gates):
        if g.op == "input":
            m[i] = inputs[g.value]
        elif g.op == "const":
            m[i] = b.const(g.value)
        else:
            m[i] = b._emit(g._replace(args=tuple(m[a] for a in g.args)))
    return m


def _single(C: ArithCircuit, output: int) -> int:
    if not C.outputs:
        raise ValueError("circuit has no outputs")
    return C.outputs[output]


def coefficient_circuits(C: ArithCircuit, y: int, d: int, output: int = 0) -> list[ArithCircuit]:
    """Circuits for the coefficients of y^0..y^d (y stays an unused input)."""
    if not 0 <= y < C.arity:
        raise ValueError("y must be an input index")
    W = interp_rows(C.ctx, d, d)
    b = Builder(C.ctx, C.arity)
    o = _single(C, output)
    vals = []
    for c in range(d + 1):
        ins = list(b.x)
        ins[y] = b.const(c)
        vals.append(_inline(b, C, ins)[o])
    outs = [b.lin({vals[c]: W[k][c] for c in range(d + 1)}) for k in range(d + 1)]
    full = b.circuit(outs)
    return [full.with_outputs([g]) for g in outs]


def homogeneous_components(C: ArithCircuit, d: int, output: int = 0) -> list[ArithCircuit]:
    """Degree-k parts, k = 0..d: coefficients of t in C(t x_1, ..., t x_n)."""
    W = interp_rows(C.ctx, d, d)
    b = Builder(C.ctx, C.arity)
    o = _single(C, output)
    vals = [_inline(b, C, [b.add([x], [c]) for x in b.x])[o] for c in range(d + 1)]
    outs = [b.lin({vals[c]: W[k][c] for c in range(d + 1)}) for k in range(d + 1)]
    full = b.circuit(outs)
    return [full.with_outputs([g]) for g in outs]


@dataclass(frozen=True)
class PITResult:
    is_zero: bool
    witness: Optional[tuple] = None


def _sample_set(ctx: FieldCtx, d: int) -> int:
    size = max(2 * d, 1)
    if ctx.p < size:
        from .errors import CharacteristicTooSmall

        raise CharacteristicTooSmall(ctx.p, size)
    return size


def pit(C: ArithCircuit, d: int, seed: int = 0, rounds: int = 40, output: int = 0,
        fixed: Sequence[int] = ()) -> PITResult:
    """Schwartz-Zippel test over S = {0, ..., 2d - 1}. Points where a division
    hits zero are outside the domain and are skipped. `fixed` pins the first
    coordinates."""
    size = _sample_set(C.ctx, d)
    rng = random.Random(seed)
    o = _single(C, output)
    free = C.arity - len(fixed)
    for _ in range(rounds):
        pt = list(fixed) + [rng.randrange(size) for _ in range(free)]
        try:
            v = eval_all(C, pt)[o]
        except DivisionByZeroAtGate:
            continue
        if v:
            return PITResult(False, tuple(pt))
    return PITResult(True, None)


def find_nonzero_point(C: ArithCircuit, d: int, seed: int = 0, rounds: int = 40, output: int = 0) -> tuple:
    """Fix coordinates one at a time to a value in 0..d that keeps the
    restriction nonzero (a PIT call each), then verify by evaluation."""
    if pit(C, d, seed, rounds, output).is_zero:
        raise ZeroCircuit("circuit appears to be identically zero")
    fixed: list[int] = []
    o = _single(C, output)
    for i in range(C.arity):
        for a in range(d + 1):
            if not pit(C, d, seed + 7919 * (i + 1) + a, rounds, output, fixed + [a]).is_zero:
                fixed.append(a)
                break
        else:
            raise NoNonzeroPoint(f"no value for coordinate {i}")
    try:
        ok = eval_all(C, fixed)[o] != 0
    except DivisionByZeroAtGate:
        ok = False
    if not ok:
        raise NoNonzeroPoint("witness failed verification")
    return tuple(fixed)


def degree_bounds(C: ArithCircuit) -> list[int]:
    """Syntactic degree per gate (numerator plus denominator for Div)."""
    deg = [0] * len(C.gates)
    for i, g in enumerate(C.gates):
        if g.op == "input":
            deg[i] = 1
        elif g.op in ("add", "select"):
            deg[i] = max((deg[a] for a in g.args), default=0)
        elif g.op in ("mul", "div"):
            deg[i] = sum(deg[a] for a in g.args)
    return deg


def remove_selects(C: ArithCircuit, seed: int = 0, rounds: int = 40) -> ArithCircuit:
    """Replace each select, in topological order, by its first child that PIT
    reports nonzero (or by 0)."""
    deg = degree_bounds(C)
    b = Builder(C.ctx, C.arity)
    m = [0] * len(C.gates)
    for i, g in enumerate(C.gates):
        if g.op == "input":
            m[i] = b.x[g.value]
        elif g.op == "const":
            m[i] = b.const(g.value)
        elif g.op == "select":
            m[i] = b.const(0)
            for a in g.args:
                sub = b.circuit([m[a]]).with_outputs([m[a]])
                if not pit(sub, deg[a], seed + i, rounds).is_zero:
                    m[i] = m[a]
                    break
        else:
            m[i] = b._emit(g._replace(args=tuple(m[a] for a in g.args)))
    return b.circuit([m[o] for o in C.outputs]).with_outputs([m[o] for o in C.outputs])


def _split_fractions(b: Builder, C: ArithCircuit):
    """Numerator / denominator gates and degree bounds for every gate of C.
    A denominator of None stands for 1."""
    p = b.p
    num, den = [0] * len(C.gates), [None] * len(C.gates)
    dn, dd = [0] * len(C.gates), [0] * len(C.gates)
    one = b.const(1)
    for i, g in enumerate(C.gates):
        a = g.args
        if g.op == "input":
            num[i], dn[i] = b.x[g.value], 1
        elif g.op == "const":
            num[i] = b.const(g.value)
        elif g.op == "mul":
            num[i] = b.mul([num[j] for j in a])
            ds = [den[j] for j in a if den[j] is not None]
            den[i] = b.mul(ds) if ds else None
            dn[i], dd[i] = sum(dn[j] for j in a), sum(dd[j] for j in a)
        elif g.op == "div":
            x, y = a
            num[i] = b.mul([num[x]] + ([den[y]] if den[y] is not None else []))
            den[i] = b.mul(([den[x]] if den[x] is not None else []) + [num[y]])
            dn[i], dd[i] = dn[x] + dd[y], dd[x] + dn[y]
        elif g.op == "add":
            w = g.coeffs or (1,) * len(a)
            ds = [den[j] for j in a if den[j] is not None]
            if not ds:
                num[i] = b.add([num[j] for j in a], list(w))
                dn[i] = max((dn[j] for j in a), default=0)
            else:
                # numerator = coefficient of t in prod_j (den_j + t w_j num_j)
                k = len(a)
                W = interp_rows(b.ctx, k, 1)
                prods = []
                for c in range(k + 1):
                    prods.append(b.mul([b.add([den[j] if den[j] is not None else one, num[j]], [1, c * wj % p])
                                        for j, wj in zip(a, w)]))
                num[i] = b.lin({prods[c]: W[1][c] for c in range(k + 1)})
                den[i] = b.mul(ds)
                tot = sum(dd[j] for j in a)
                dn[i] = max(dn[j] + tot - dd[j] for j in a)
                dd[i] = tot
        else:
            raise ValueError("select gates must be removed first")
    return num, den, dn, dd


def eliminate_divisions(C: ArithCircuit, d: int, seed: int = 0, rounds: int = 40,
                        checks: int = 20, output: int = 0) -> ArithCircuit:
    """Division-free circuit for a C that computes a polynomial of degree <= d.

    C = N / D is split gate by gate; with a point a where D(a) != 0, the
    shifted C(a + u) is N(a + u) times the truncated geometric series for
    1 / D(a + u), and only homogeneous parts of degree <= d are kept (the
    scaling variable t is interpolated away).
    """
    ctx = C.ctx
    p = ctx.p
    C = C.with_outputs([_single(C, output)])
    o, output = C.outputs[0], 0
    if any(g.op == "select" for g in C.gates):
        raise ValueError("select gates must be removed first")
    if not any(g.op == "div" for g in C.gates):
        return C.with_outputs([o])
    b1 = Builder(ctx, C.arity)
    num, den, dn, dd = _split_fractions(b1, C)
    N, D, degN, degD = num[o], den[o], dn[o], dd[o]
    if D is None:
        return b1.circuit([N]).with_outputs([N])
    Dc = b1.circuit([D]).with_outputs([D])
    res = pit(Dc, degD, seed, rounds)
    if res.is_zero:
        raise NoNonzeroPoint(f"no point with nonzero denominator after {rounds} attempts")
    a = res.witness
    D0 = eval(Dc, a)[0]
    iD0 = pow(D0, -1, p)
    ND = b1.circuit([N, D]).with_outputs([N, D])

    b = Builder(ctx, C.arity)
    one = b.const(1)
    u = [b.add([x, one], [1, -ai]) for x, ai in zip(b.x, a)]
    T = max(degN, degD)
    W = interp_rows(ctx, T, min(d, T))
    Nv, Dv = [], []
    for c in range(T + 1):
        m = _inline(b, ND, [b.add([ui, one], [c, ai]) for ui, ai in zip(u, a)])
        Nv.append(m[ND.outputs[0]])
        Dv.append(m[ND.outputs[1]])
    kN, kD = min(d, degN), min(d, degD)
    Nk = [b.lin({Nv[c]: W[k][c] for c in range(T + 1)}) for k in range(kN + 1)]
    Dk = [b.lin({Dv[c]: W[k][c] for c in range(T + 1)}) for k in range(kD + 1)]
    # G(t) = (1 / D0) sum_{j <= d} E^j, E = -(D(t) - D0) / D0
    S = d * kD
    W2 = interp_rows(ctx, S, d)
    vals = []
    for c in range(S + 1):
        cp = _powers(p, c, kD)
        e = b.lin({Dk[k]: -cp[k] * iD0 for k in range(1, kD + 1)})
        vals.append(b.add([one] + [b.mul([e] * j) for j in range(1, d + 1)]))
    Gk = [b.lin({vals[c]: W2[k][c] * iD0 for c in range(S + 1)}) for k in range(d + 1)]
    terms = [b.mul([Nk[i], Gk[k - i]]) for k in range(d + 1) for i in range(min(k, kN) + 1)]
    out = b.add(terms)
    R = b.circuit([out]).with_outputs([out])

    rng = random.Random(seed ^ 0x5EED)
    done = tries = 0
    while done < checks and tries < 20 * checks:
        tries += 1
        pt = [rng.randrange(p) for _ in range(C.arity)]
        try:
            want = eval_all(C, pt)[o]
        except DivisionByZeroAtGate:
            continue
        if eval(R, pt)[0] != want:
            raise NotAPolynomial("division-free circuit disagrees with the input circuit")
        done += 1
    return R


def eval_batch(C: ArithCircuit, columns) -> list:
    """Evaluate at many points at once; columns[i] is an array holding input i
    at every point. Returns one array per output. A division by zero at any
    point raises DivisionByZeroAtGate."""
    import numpy as np

    p = C.ctx.p
    dt = np.int64 if p < (1 << 31) else object
    cols = [np.asarray([int(v) % p for v in c], dtype=dt) for c in columns]
    P = len(cols[0]) if cols else 1
    vals: list = [None] * len(C.gates)
    for i, g in enumerate(C.gates):
        op = g.op
        if op == "input":
            v = cols[g.value]
        elif op == "const":
            v = np.full(P, g.value, dtype=dt)
        elif op == "add":
            v = np.zeros(P, dtype=dt)
            if g.coeffs is None:
                for a in g.args:
                    v = (v + vals[a]) % p
            else:
                for c, a in zip(g.coeffs, g.args):
                    v = (v + c * vals[a]) % p
        elif op == "mul":
            v = np.ones(P, dtype=dt)
            for a in g.args:
                v = v * vals[a] % p
        elif op == "div":
            den = vals[g.args[1]]
            if np.any(den == 0):
                raise DivisionByZeroAtGate(i)
            v = vals[g.args[0]] * np.array([pow(int(x), -1, p) for x in den], dtype=dt) % p
        else:
            v = np.zeros(P, dtype=dt)
            done = np.zeros(P, dtype=bool)
            for a in g.args:
                take = (~done) & (vals[a] != 0)
                v = np.where(take, vals[a], v)
                done |= take
        vals[i] = v
    return [vals[o] for o in C.outputs]
