import random

import pytest

from ac0poly.circuit import coefficient_circuits, eval as ceval
from ac0poly.errors import ParseError, ZeroCircuit
from ac0poly.field import FieldCtx
from ac0poly.gcdlib import gcd, lcm
from ac0poly.mpoly import (
    FieldArith, degree_on_lines, gcd_many, lcm_many, mgcd, mlcm, monic_transform, msqfree, parse_mpoly,
    squarefree_parts, top_homogeneous,
)
from ac0poly.oracle import instance_from_profile, random_profile, yun_squarefree
from ac0poly.rootops import squarefree_decomposition
from ac0poly.upoly import DensePoly

CTX = FieldCtx(1000003)
p = CTX.p


def M(text, n=2):
    return parse_mpoly(CTX, text, n)


def _points(rng, n, k=50):
    return [tuple(rng.randrange(p) for _ in range(n)) for _ in range(k)]


def assert_proportional(a, b, n, seed=0):
    """a = c * b for one nonzero scalar c, at random points."""
    rng = random.Random(seed)
    ratio = None
    for pt in _points(rng, n):
        va, vb = a(pt), b(pt)
        if vb == 0:
            assert va == 0
            continue
        r = va * pow(vb, -1, p) % p
        assert r != 0
        ratio = ratio if ratio is not None else r
        assert r == ratio
    assert ratio is not None


def _free(fC):
    return not any(g.op in ("div", "select") for g in fC.circuit.gates)


def test_parse_and_degree():
    f = M("(x1+x2)^2*(x1-x2)")
    assert f.degree_bound == 3 and f((2, 1)) == 9
    assert M("x1x2 + 3")((4, 5)) == 23
    assert degree_on_lines(M("x1*x2 + x1 + x1 - x1 - x1")) == 2
    with pytest.raises(ParseError):
        M("x1 +* x2")


def test_top_homogeneous():
    t = top_homogeneous(M("x1*x2 + x1"))
    assert_proportional(t, M("x1*x2"), 2)
    assert t.degree_bound == 2
    h = M("x1^2 + 3*x1*x2")
    assert_proportional(top_homogeneous(h), h, 2)
    prod = M("(x1+2*x2+1)^2*(x2-x1+4)*(x1*x2+1)")
    assert top_homogeneous(prod).degree_bound == 5
    with pytest.raises(ZeroCircuit):
        top_homogeneous(M("x1 - x1"))


def test_monic_transform_example():
    g, alpha, scalar = monic_transform(M("x1*x2"), alpha=(1, 1))
    assert alpha == (1, 1)
    cs = coefficient_circuits(g.circuit, 2, 2)
    rng = random.Random(0)
    for a, b, y in _points(rng, 3, 20):
        vals = [ceval(c, (a, b, y))[0] for c in cs]
        assert vals == [a * b % p, (a + b) % p, 1]
    g, alpha, _ = monic_transform(M("x1^2*x2 + x2 + 5", 2), seed=3)
    assert g.nvars == 3
    top = coefficient_circuits(g.circuit, 2, 3)[3]
    assert all(ceval(top, pt)[0] == 1 for pt in _points(rng, 3, 20))


def test_msqfree_example():
    f = M("(x1+x2)^2*(x1-x2)")
    parts = msqfree(f, seed=1)
    assert len(parts) == 2
    assert_proportional(parts[0], M("x1-x2"), 2)
    assert_proportional(parts[1], M("x1+x2"), 2)
    rec = lambda pt: parts[0](pt) * pow(parts[1](pt), 2, p) % p  # noqa: E731
    assert_proportional(rec, f, 2, seed=5)
    assert all(_free(q) for q in parts)


def test_msqfree_trivial_cases():
    f = M("x1^2 + x2 + 1")
    (q,) = msqfree(f)
    assert_proportional(q, f, 2)
    parts = msqfree(M("(x1 + 2*x2 + 3)^2"))
    assert len(parts) == 2
    assert all(v == parts[0]((0, 0)) for v in (parts[0](pt) for pt in _points(random.Random(1), 2, 10)))
    assert_proportional(parts[1], M("x1 + 2*x2 + 3"), 2)


def test_mgcd_examples():
    g = mgcd([M("(x1+x2)*x1"), M("(x1+x2)*x2")])
    assert_proportional(g, M("x1+x2"), 2)
    f = M("x1^2*x2 - 3*x2 + x1")
    assert_proportional(mgcd([f, f]), f, 2)
    one = mgcd([M("x1"), M("x2+1")])
    vals = {one(pt) for pt in _points(random.Random(2), 2, 10)}
    assert len(vals) == 1 and vals != {0}
    assert _free(g) and _free(one)


def test_mlcm_example():
    l = mlcm([M("(x1+x2)*x1"), M("(x1+x2)*x2")])
    assert_proportional(l, M("(x1+x2)*x1*x2"), 2)
    assert _free(l)


def test_mgcd_three_variables():
    u, v, w = M("x1*x3 + x2 + 1", 3), M("x2^2 - x3 + 2", 3), M("x1 + x2*x3 - 5", 3)
    f = M("(x1*x3 + x2 + 1)*(x1 + x2*x3 - 5)", 3)
    g = M("(x2^2 - x3 + 2)*(x1 + x2*x3 - 5)", 3)
    assert_proportional(mgcd([f, g], seed=2), w, 3)


def test_field_arith_matches_univariate():
    A = FieldArith(CTX)
    for s in range(40):
        fs = instance_from_profile(CTX, random_profile(s, 3, 6, 3, CTX, max_degree=14))
        lists = [list(f.coeffs) for f in fs]
        assert DensePoly(CTX, gcd_many(A, lists)) == gcd(fs)
        assert DensePoly(CTX, lcm_many(A, lists)) == lcm(fs)
        got = [DensePoly(CTX, q) for q in squarefree_parts(A, lists[0])]
        assert got == list(squarefree_decomposition(fs[0]).parts) == yun_squarefree(fs[0])
