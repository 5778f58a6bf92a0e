"""GCD, LCM and Bezout coefficients, and polynomials whose root
multiplicities are an arbitrary function of the multiplicities of the inputs.

Everything is expressed through squarefree parts and multiplicity
thresholds: gcd(f_1..f_m) = prod_r s_{>=r}, where s_{>=r} collects the roots
of multiplicity at least r in every input.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import MalformedCircuit, OutputDegreeOverflow, ZeroPolynomial
from .field import char_guard
from .newton import _require_monic, exact_div
from .rootops import _split, filter_common_roots, squarefree_decomposition, threshold_multiplicity
from .structmat import bezout_coeffs_coprime
from .upoly import DensePoly, poly_derivative


def _check_inputs(fs: Sequence[DensePoly]):
    if not fs:
        raise ValueError("need at least one polynomial")
    for f in fs:
        if f.is_zero:
            raise ZeroPolynomial("gcd/lcm inputs must be nonzero")
        _require_monic(f)
    ctx = fs[0].ctx
    for f in fs[1:]:
        if f.ctx != ctx:
            from .errors import ModulusMismatch

            raise ModulusMismatch(f"{ctx.p} vs {f.ctx.p}")


def _sqfree(f: DensePoly) -> DensePoly:
    out = DensePoly(f.ctx, [1])
    for q in squarefree_decomposition(f).parts:
        out = out * q
    return out


def support(fs: Sequence[DensePoly]) -> DensePoly:
    """Squarefree part of prod fs, assembled as a union: each input's squarefree
    part contributes the roots not already present."""
    s = DensePoly(fs[0].ctx, [1])
    for f in fs:
        sf = _sqfree(f)
        if s.degree == 0:
            s = sf
        elif sf.degree > 0:
            s = s * _split(sf, s)[1]
    return s


def _gcd_with_support(fs: Sequence[DensePoly], s: DensePoly) -> DensePoly:
    """prod_{r>=1} s_{>=r}; s_{>=r} keeps the roots of s_{>=r-1} where every
    f_i^(r-1) also vanishes. s must be squarefree and contain every common root."""
    ctx = s.ctx
    delta = min(f.degree for f in fs)
    out = DensePoly(ctx, [1])
    cur = s
    r = 1
    while r <= delta and cur.degree > 0:
        cur = filter_common_roots(cur, [poly_derivative(f, r - 1) for f in fs])[0]
        out = out * cur
        r += 1
    return out


def gcd(fs: Sequence[DensePoly]) -> DensePoly:
    _check_inputs(fs)
    ctx = fs[0].ctx
    d = max(f.degree for f in fs)
    char_guard(ctx, max(len(fs), 2) * d if len(fs) > 1 else d)
    if len(fs) == 1:
        return fs[0]
    if min(f.degree for f in fs) == 0:
        return DensePoly(ctx, [1])
    return _gcd_with_support(fs, support(fs))


def lcm(fs: Sequence[DensePoly]) -> DensePoly:
    """p / gcd(p / f_1, ..., p / f_m) with p = prod f_i."""
    _check_inputs(fs)
    ctx = fs[0].ctx
    m = len(fs)
    d = max(f.degree for f in fs)
    char_guard(ctx, max(m, 2) ** 2 * d if m > 1 else d)
    if m == 1:
        return fs[0]
    fs = [f for f in fs if f.degree > 0] or [fs[0]]
    if len(fs) == 1:
        return fs[0]
    p = DensePoly(ctx, [1])
    for f in fs:
        p = p * f
    cof = [exact_div(p, f) for f in fs]
    # every root of p is a root of some cofactor once m >= 2, so p's support serves
    g = _gcd_with_support(cof, support(fs))
    return exact_div(p, g)


def bezout_general(f: DensePoly, g: DensePoly) -> tuple[DensePoly, DensePoly]:
    """(a, b) with a f + b g = gcd(f, g), by dividing out the gcd first."""
    _check_inputs([f, g])
    char_guard(f.ctx, 2 * max(f.degree, g.degree))
    h = gcd([f, g])
    return bezout_coeffs_coprime(exact_div(f, h), exact_div(g, h))


# ---- arbitrary functions of multiplicities ---------------------------------


@dataclass
class DenseMultiplicityFunction:
    """P : {0..d}^m -> N stored by its nonzero outputs."""

    arity: int
    degree_cap: int
    table: dict[tuple[int, ...], int] = field(default_factory=dict)
    max_output: int | None = None

    def __post_init__(self):
        clean = {}
        for k, v in self.table.items():
            k = tuple(int(a) for a in k)
            if len(k) != self.arity:
                raise ValueError(f"tuple {k} does not have arity {self.arity}")
            if v < 0:
                raise ValueError("outputs must be natural numbers")
            if v:
                clean[k] = int(v)
        self.table = clean

    @classmethod
    def from_function(cls, m: int, d: int, P: Callable[..., int], max_output: int | None = None):
        table = {t: P(*t) for t in itertools.product(range(d + 1), repeat=m)}
        return cls(m, d, table, max_output)

    def __call__(self, *t: int) -> int:
        return self.table.get(tuple(t), 0)

    def to_json(self) -> str:
        return json.dumps(
            {"arity": self.arity, "d": self.degree_cap, "table": [[list(k), v] for k, v in sorted(self.table.items())]}
        )

    @classmethod
    def from_json(cls, text: str) -> "DenseMultiplicityFunction":
        data = json.loads(text)
        return cls(int(data["arity"]), int(data["d"]), {tuple(k): int(v) for k, v in data["table"]})


def _default_cap(fs) -> int:
    return 10 * sum(f.degree for f in fs)


def _delta_parts(fs: Sequence[DensePoly], s: DensePoly) -> list[dict[int, DensePoly]]:
    """For each f_i, {j: f_{i,j}} over the nonconstant pieces; the j = 0 piece
    is s divided by the squarefree part of f_i (the roots absent from f_i)."""
    out = []
    for f in fs:
        parts = squarefree_decomposition(f).parts
        pieces = {j: q for j, q in enumerate(parts, start=1) if q.degree > 0}
        sf = DensePoly(f.ctx, [1])
        for q in parts:
            sf = sf * q
        zero = exact_div(s, sf)
        if zero.degree > 0:
            pieces[0] = zero
        out.append(pieces)
    return out


def diamond_dense(fs: Sequence[DensePoly], P: DenseMultiplicityFunction, cap: int | None = None) -> DensePoly:
    """prod over roots a of the inputs of (x - a)^P(mult_1(a), ..., mult_m(a)).

    Each delta piece gcd(f_{1,j_1}, ..., f_{m,j_m}) is squarefree; tuples with
    some empty piece contribute 1 and are skipped.
    """
    _check_inputs(fs)
    ctx = fs[0].ctx
    m = len(fs)
    if P.arity != m:
        raise ValueError(f"P has arity {P.arity}, got {m} polynomials")
    d = max(f.degree for f in fs)
    char_guard(ctx, 2 * m * d)
    cap = _default_cap(fs) if cap is None else cap
    s = support(fs)
    pieces = _delta_parts(fs, s)
    factors = []
    total = 0
    for combo in itertools.product(*[sorted(pc) for pc in pieces]):
        e = P(*combo)
        if not e:
            continue
        polys = [pieces[i][j] for i, j in enumerate(combo)]
        # squarefree inputs: the common roots of the first piece are the gcd
        delta = filter_common_roots(polys[0], polys[1:])[0] if m > 1 else polys[0]
        if delta.degree == 0:
            continue
        total += e * delta.degree
        if total > cap:
            raise OutputDegreeOverflow(f"output degree exceeds cap {cap}")
        factors.append((delta, e))
    out = DensePoly(ctx, [1])
    for delta, e in factors:
        out = out * delta**e
    return out


# ---- tropical threshold circuits -------------------------------------------

TROPICAL_OPS = ("add", "cmul", "min", "max", "thr", "nthr")


@dataclass
class TropGate:
    op: str
    args: tuple[int, ...]
    c: int = 0
    r: tuple[int, ...] = ()


@dataclass
class TropicalCircuit:
    """Node indices 0..inputs-1 are the input variables; gate k has index inputs + k.
    Gates may reference only smaller indices."""

    inputs: int
    gates: list[TropGate]
    output: int

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.inputs < 1:
            raise MalformedCircuit("need at least one input")
        for k, g in enumerate(self.gates):
            idx = self.inputs + k
            if g.op not in TROPICAL_OPS:
                raise MalformedCircuit(f"unknown op {g.op!r}")
            if not g.args:
                raise MalformedCircuit(f"gate {idx} has no arguments")
            if any(a < 0 or a >= idx for a in g.args):
                raise MalformedCircuit(f"gate {idx} references a later or missing node")
            if g.op == "cmul" and (len(g.args) != 1 or g.c < 0):
                raise MalformedCircuit("cmul takes one argument and c >= 0")
            if g.op in ("thr", "nthr") and (len(g.r) != len(g.args) or any(v < 0 for v in g.r)):
                raise MalformedCircuit("threshold vector must match the arguments")
        if not 0 <= self.output < self.inputs + len(self.gates):
            raise MalformedCircuit("output index out of range")

    @property
    def size(self) -> int:
        return len(self.gates) + sum(g.c for g in self.gates if g.op == "cmul")

    @property
    def depth(self) -> int:
        dep = [0] * self.inputs
        for g in self.gates:
            dep.append(1 + max(dep[a] for a in g.args))
        return dep[self.output]

    def to_json(self) -> str:
        gates = []
        for g in self.gates:
            e = {"op": g.op, "args": list(g.args)}
            if g.op == "cmul":
                e["c"] = g.c
            if g.op in ("thr", "nthr"):
                e["r"] = list(g.r)
            gates.append(e)
        return json.dumps({"inputs": self.inputs, "gates": gates, "output": self.output})

    @classmethod
    def from_json(cls, text: str) -> "TropicalCircuit":
        try:
            data = json.loads(text)
            gates = [
                TropGate(e["op"], tuple(int(a) for a in e["args"]), int(e.get("c", 0)), tuple(int(v) for v in e.get("r", ())))
                for e in data["gates"]
            ]
            return cls(int(data["inputs"]), gates, int(data["output"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedCircuit):
                raise
            raise MalformedCircuit(f"bad tropical circuit JSON: {exc}") from exc


def _trop_gate(g: TropGate, vals: list[int]) -> int:
    if g.op == "add":
        return sum(vals)
    if g.op == "cmul":
        return g.c * vals[0]
    if g.op == "min":
        return min(vals)
    if g.op == "max":
        return max(vals)
    ok = all(v >= r for v, r in zip(vals, g.r))
    return int(ok) if g.op == "thr" else int(not ok)


def tropical_eval(C: TropicalCircuit, inputs: Sequence[int]) -> int:
    if len(inputs) != C.inputs:
        raise MalformedCircuit(f"expected {C.inputs} inputs, got {len(inputs)}")
    vals = [int(v) for v in inputs]
    for g in C.gates:
        vals.append(_trop_gate(g, [vals[a] for a in g.args]))
    return vals[C.output]


def tropical_table(C: TropicalCircuit, d: int) -> DenseMultiplicityFunction:
    return DenseMultiplicityFunction.from_function(C.inputs, d, lambda *t: tropical_eval(C, t))


def diamond_tropical(fs: Sequence[DensePoly], C: TropicalCircuit, cap: int | None = None) -> DensePoly:
    """Simulate C gate by gate on polynomials: add -> product, c x -> c-th power,
    min -> gcd, max -> lcm, thr / not-thr -> the two sides of a multiplicity
    threshold applied to the squarefree part of prod fs."""
    _check_inputs(fs)
    if len(fs) != C.inputs:
        raise MalformedCircuit(f"circuit has {C.inputs} inputs, got {len(fs)} polynomials")
    ctx = fs[0].ctx
    cap = _default_cap(fs) if cap is None else cap
    one = DensePoly(ctx, [1])
    h = None
    vals: list[DensePoly] = list(fs)
    for g in C.gates:
        args = [vals[a] for a in g.args]
        if g.op == "add":
            out = one
            for a in args:
                out = out * a
        elif g.op == "cmul":
            out = args[0] ** g.c
        elif g.op == "min":
            out = gcd(args)
        elif g.op == "max":
            out = lcm(args)
        else:
            if h is None:
                h = support(fs)
            ge, lt = threshold_multiplicity(h, args, list(g.r))
            out = ge if g.op == "thr" else lt
        if out.degree > cap:
            raise OutputDegreeOverflow(f"intermediate degree {out.degree} exceeds cap {cap}")
        vals.append(out)
    return vals[C.output]
