import itertools
import json
import random

import pytest

from ac0poly import circuit as C
from ac0poly.circuit import ArithCircuit, Builder, Gate
from ac0poly.errors import DivisionByZeroAtGate, MalformedCircuit, ZeroCircuit
from ac0poly.field import FieldCtx
from ac0poly.gcdlib import gcd
from ac0poly.newton import NewtonSeries, from_power_sums, to_power_sums
from ac0poly.oracle import bareiss_det, euclid_gcd, sylvester_oracle
from ac0poly.structmat import resultant
from ac0poly.upoly import DensePoly, esym_values

CTX = FieldCtx(1000003)
p = CTX.p


def _circ(arity, gates, outputs):
    return ArithCircuit(CTX, arity, tuple(gates), tuple(outputs))


def test_eval_examples():
    b = Builder(CTX, 2)
    diff = b.add(b.x, [1, -1])
    s = b.select([diff, b.x[0]])
    Cs = b.circuit([s])
    assert C.eval(Cs, (3, 3)) == [3]
    assert C.eval(Cs, (3, 5)) == [p - 2]
    assert C.eval(_circ(0, [Gate("const", (), 7)], [0]), ()) == [7]
    inv = _circ(1, [Gate("input", (), 0), Gate("const", (), 1), Gate("div", (1, 0))], [2])
    with pytest.raises(DivisionByZeroAtGate):
        C.eval(inv, (0,))
    assert C.eval(inv, (2,)) == [pow(2, -1, p)]


def test_metrics_examples():
    gates = [Gate("input", (), i) for i in range(5)] + [Gate("add", (0, 1, 2, 3, 4))]
    m = C.metrics(_circ(5, gates, [5]))
    assert (m.size, m.depth) == (5, 1)
    assert C.metrics(_circ(1, [Gate("input", (), 0)], [0])).depth == 0
    assert C.metrics(C.build("esym", CTX, 8, 3)).depth == 3


def test_select_semantics_exhaustive():
    for k in range(1, 5):
        for pattern in itertools.product([0, 1], repeat=k):
            vals = [(i + 2) * z for i, z in enumerate(pattern)]
            gates = [Gate("input", (), i) for i in range(k)] + [Gate("select", tuple(range(k)))]
            want = next((v for v in vals if v), 0)
            assert C.eval(_circ(k, gates, [k]), vals) == [want]


def test_validation():
    with pytest.raises(MalformedCircuit):
        _circ(1, [Gate("add", (0,))], [0])
    with pytest.raises(MalformedCircuit):
        _circ(1, [Gate("input", (), 3)], [0])
    with pytest.raises(MalformedCircuit):
        _circ(1, [Gate("input", (), 0)], [4])
    with pytest.raises(MalformedCircuit):
        ArithCircuit.from_json({"gates": []})


def test_json_round_trip():
    for Cx in (C.build("esym", CTX, 4, 2), C.build("gcd", CTX, 2, 2), C.build("resultant", CTX, 3, 2)):
        text = Cx.dumps()
        back = ArithCircuit.from_json(json.loads(text))
        assert back == Cx and back.dumps() == text


def test_builder_examples():
    assert C.eval(C.build("esym", CTX, 3, 2), (1, 2, 3)) == [11]
    assert C.eval(C.build("resultant", CTX, 2, 1), (p - 1, 0, 1, p - 2, 1)) == [3]
    f, g = [2, p - 3, 1], [3, p - 4, 1]
    out = C.eval(C.build("gcd", CTX, 2, 2), f + g)
    assert C.decode_gcd(out, 2, 2) == [p - 1, 1]


def test_builders_match_direct_evaluation():
    rng = random.Random(5)
    for n in (2, 4):
        E = C.build("esym", CTX, n, n // 2)
        PS = C.build("power_sums", CTX, n, n)
        CF = C.build("coeffs_from_power_sums", CTX, n)
        R = C.build("resultant", CTX, n, 2)
        G = C.build("gcd", CTX, n, 2)
        for _ in range(200):
            xs = [rng.randrange(p) for _ in range(n)]
            assert C.eval(E, xs) == [esym_values(CTX, xs, n // 2)]
            f = DensePoly(CTX, [rng.randrange(p) for _ in range(n)] + [1])
            assert C.eval(PS, f.padded(n + 1)) == list(to_power_sums(f, n).sums)
            sums = [rng.randrange(p) for _ in range(n)]
            want = from_power_sums(NewtonSeries(CTX, n, (n,) + tuple(sums)))
            assert C.eval(CF, sums) == list(want.padded(n + 1))
            g = DensePoly(CTX, [rng.randrange(p) for _ in range(2)] + [rng.randrange(1, p)])
            assert C.eval(R, list(f.padded(n + 1)) + list(g.padded(3))) == [resultant(f, g)]
        for _ in range(40):
            w = DensePoly(CTX, [rng.randrange(p), 1]) if rng.random() < 0.5 else DensePoly(CTX, [1])
            u = DensePoly(CTX, [rng.randrange(p) for _ in range(n - w.degree)] + [1])
            v = DensePoly(CTX, [rng.randrange(p) for _ in range(2 - w.degree)] + [1])
            ff, gg = w * u, w * v
            got = C.decode_gcd(C.eval(G, list(ff.padded(n + 1)) + list(gg.padded(3))), n, 2)
            assert DensePoly(CTX, got) == gcd([ff, gg]) == euclid_gcd(ff, gg)


def test_resultant_circuit_vs_bareiss():
    rng = random.Random(9)
    R = C.build("resultant", CTX, 3, 2)
    for _ in range(30):
        f = DensePoly(CTX, [rng.randrange(p) for _ in range(3)] + [rng.randrange(1, p)])
        g = DensePoly(CTX, [rng.randrange(p) for _ in range(2)] + [rng.randrange(1, p)])
        assert C.eval(R, list(f.padded(4)) + list(g.padded(3))) == [bareiss_det(sylvester_oracle(f, g), p)]


def _e_gen():
    # (1 + y x1)(1 + y x2) with y as input 2
    b = Builder(CTX, 3)
    one = b.const(1)
    y = b.x[2]
    return b.circuit([b.mul([b.add([one, b.mul([y, b.x[0]])]), b.add([one, b.mul([y, b.x[1]])])])])


def test_coefficient_circuits():
    cs = C.coefficient_circuits(_e_gen(), 2, 2)
    rng = random.Random(1)
    for _ in range(20):
        a, b_, y = (rng.randrange(p) for _ in range(3))
        got = [C.eval(c, (a, b_, y))[0] for c in cs]
        assert got == [1, (a + b_) % p, a * b_ % p]
    const = _circ(2, [Gate("input", (), 0), Gate("input", (), 1), Gate("mul", (0, 0))], [2])
    cs = C.coefficient_circuits(const, 1, 3)
    for _ in range(5):
        a = rng.randrange(p)
        assert [C.eval(c, (a, 9))[0] for c in cs] == [a * a % p, 0, 0, 0]


def _random_circuit(rng, arity, ngates):
    b = Builder(CTX, arity)
    pool = list(b.x) + [b.const(rng.randrange(p))]
    for _ in range(ngates):
        args = rng.sample(pool, 2)
        pool.append(b.mul(args) if rng.random() < 0.4 else b.add(args, [rng.randrange(1, p), rng.randrange(1, p)]))
    return b.circuit([pool[-1]])


def test_coefficient_and_homogeneous_identities():
    rng = random.Random(2)
    for _ in range(5):
        Cx = _random_circuit(rng, 3, 8)
        d = C.degree_bounds(Cx)[Cx.outputs[0]]
        cs = C.coefficient_circuits(Cx, 2, d)
        hs = C.homogeneous_components(Cx, d)
        for _ in range(20):
            pt = [rng.randrange(p) for _ in range(3)]
            want = C.eval(Cx, pt)[0]
            assert sum(C.eval(c, pt)[0] * pow(pt[2], i, p) for i, c in enumerate(cs)) % p == want
            assert sum(C.eval(h, pt)[0] for h in hs) % p == want


def test_homogeneous_examples():
    b = Builder(CTX, 1)
    one = b.const(1)
    x = b.x[0]
    Cx = b.circuit([b.add([b.mul([x, x]), x, one])])
    hs = C.homogeneous_components(Cx, 2)
    for a in (0, 3, 17):
        assert [C.eval(h, (a,))[0] for h in hs] == [1, a, a * a % p]
    b = Builder(CTX, 2)
    Cx = b.circuit([b.mul(b.x)])
    hs = C.homogeneous_components(Cx, 3)
    assert [C.pit(h, 3).is_zero for h in hs] == [True, True, False, True]


def test_eliminate_divisions_examples():
    rng = random.Random(4)
    b = Builder(CTX, 1)
    x = b.x[0]
    Cx = b.circuit([b.div(b.mul([x, x]), x)])
    R = C.eliminate_divisions(Cx, 1)
    assert not any(g.op == "div" for g in R.gates)
    assert C.eval(R, (0,)) == [0]
    for _ in range(20):
        a = rng.randrange(1, p)
        assert C.eval(R, (a,)) == [a]
    b = Builder(CTX, 1)
    x, one = b.x[0], b.const(1)
    Cx = b.circuit([b.div(b.add([b.mul([x, x]), one], [1, -1]), b.add([x, one], [1, -1]))])
    R = C.eliminate_divisions(Cx, 1)
    assert not any(g.op == "div" for g in R.gates)
    for a in [1] + [rng.randrange(p) for _ in range(20)]:
        assert C.eval(R, (a,)) == [(a + 1) % p]
    plain = _random_circuit(rng, 2, 5)
    assert C.eliminate_divisions(plain, 10) == plain.with_outputs(plain.outputs)


def test_eliminate_divisions_random():
    rng = random.Random(6)
    for _ in range(5):
        f = _random_circuit(rng, 2, 4)
        g = _random_circuit(rng, 2, 3)
        b = Builder(CTX, 2)
        fo = C._inline(b, f, b.x)[f.outputs[0]]
        go = C._inline(b, g, b.x)[g.outputs[0]]
        Cx = b.circuit([b.div(b.mul([fo, go]), go)])
        d = C.degree_bounds(f)[f.outputs[0]]
        R = C.eliminate_divisions(Cx, d)
        assert not any(gt.op == "div" for gt in R.gates)
        for _ in range(50):
            pt = [rng.randrange(p) for _ in range(2)]
            assert C.eval(R, pt) == C.eval(f, pt)


def test_pit_examples():
    b = Builder(CTX, 1)
    z = b.circuit([b.add([b.x[0], b.x[0]], [1, -1])])
    assert C.pit(z, 1).is_zero
    b = Builder(CTX, 1)
    nz = b.circuit([b.add([b.x[0], b.const(1)])])
    res = C.pit(nz, 1)
    assert not res.is_zero and C.eval(nz, res.witness)[0] != 0
    assert C.pit(nz, 1, seed=3) == C.pit(nz, 1, seed=3)


def test_find_nonzero_point():
    b = Builder(CTX, 2)
    pt = C.find_nonzero_point(b.circuit([b.mul(b.x)]), 2)
    assert all(pt)
    b = Builder(CTX, 1)
    pt = C.find_nonzero_point(b.circuit([b.add([b.x[0], b.const(5)], [1, -1])]), 1)
    assert pt[0] != 5
    rng = random.Random(8)
    b = Builder(CTX, 3)
    forms = [b.add(list(b.x) + [b.const(1)], [rng.randrange(p) for _ in range(3)] + [rng.randrange(p)]) for _ in range(4)]
    Cx = b.circuit([b.mul(forms)])
    assert C.eval(Cx, C.find_nonzero_point(Cx, 4))[0] != 0
    b = Builder(CTX, 1)
    with pytest.raises(ZeroCircuit):
        C.find_nonzero_point(b.circuit([b.const(0)]), 1)


def test_remove_selects():
    b = Builder(CTX, 2)
    diff = b.add(b.x, [1, -1])
    Cx = b.circuit([b.select([diff, b.x[0]])])
    R = C.remove_selects(Cx)
    assert not any(g.op == "select" for g in R.gates)
    assert C.eval(R, (3, 3)) == [0] and C.eval(R, (7, 2)) == [5]
    b = Builder(CTX, 1)
    R = C.remove_selects(b.circuit([b.select([b.const(0), b.x[0]])]))
    assert C.eval(R, (9,)) == [9]
    b = Builder(CTX, 1)
    zero = b.add([b.x[0], b.x[0]], [1, -1])
    R = C.remove_selects(b.circuit([b.select([zero, b.const(0)])]))
    assert C.eval(R, (4,)) == [0] and C.metrics(R).depth == 0


def test_depth_constant_across_sizes():
    fam = {
        "esym": lambda n: (n, n // 2), "power_sums": lambda n: (n, n),
        "coeffs_from_power_sums": lambda n: (n,), "resultant": lambda n: (n, 2), "gcd": lambda n: (n, 2),
    }
    for kind, args in fam.items():
        ms = [C.metrics(C.build(kind, CTX, *args(n))) for n in (4, 8)]
        assert ms[0].depth == ms[1].depth
        assert ms[1].size <= 32 * ms[0].size
