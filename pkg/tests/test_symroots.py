import math
import random

from ac0poly.field import FieldCtx
from ac0poly.oracle import instance_from_profile, random_profile
from ac0poly.structmat import resultant
from ac0poly.symroots import (
    ParamPoly, esym_over_roots, nonzero_product_over_roots, rational_esym_over_roots,
    rational_sum_over_roots, sum_over_roots,
)
from ac0poly.upoly import DensePoly, esym_values, poly_eval

from conftest import poly, rand_poly

CTX = FieldCtx(1000003)
p = CTX.p


def test_sum_examples():
    assert sum_over_roots(poly("x^2-3x+2"), poly("x^2")) == 5
    assert sum_over_roots(poly("x^3+x+1"), poly("7")) == 21
    assert sum_over_roots(poly("x^2"), poly("x")) == 0


def test_esym_examples():
    f = poly("x^2-3x+2")
    assert esym_over_roots(f, poly("x^2"), 2) == 4
    assert esym_over_roots(f, poly("x^2"), 1) == 5
    assert esym_over_roots(f, poly("x^2"), 0) == 1


def test_rational_examples():
    f = poly("x^2-3x+2")
    assert rational_sum_over_roots(f, poly("1"), poly("x+1")) == 5 * pow(6, -1, p) % p
    h = poly("x+5")
    assert rational_sum_over_roots(f, h, h) == 2
    assert rational_sum_over_roots(f, DensePoly(CTX), h) == 0
    assert rational_esym_over_roots(f, poly("1"), poly("x+1"), 2) == pow(6, -1, p)
    assert rational_esym_over_roots(f, poly("1"), poly("x+1"), 0) == 1
    g = poly("x^2+4")
    assert rational_esym_over_roots(f, g, h, 1) == rational_sum_over_roots(f, g, h)


def test_nonzero_product_examples():
    assert nonzero_product_over_roots(poly("x^3-3x^2+2x"), poly("x")) == 2
    f, g = poly("x^2+1"), poly("x+3")
    assert nonzero_product_over_roots(f, g) == esym_over_roots(f, g, 2)
    assert nonzero_product_over_roots(poly("x^2"), poly("x")) == 1


def test_against_known_roots():
    rng = random.Random(4)
    for s in range(40):
        prof = random_profile(s, 1, 6, 3, CTX, max_degree=16)
        (f,) = instance_from_profile(CTX, prof)
        roots = [r for r, m in prof.entries for _ in range(m[0])]
        g, h = rand_poly(rng, CTX, rng.randint(0, 4)), rand_poly(rng, CTX, rng.randint(0, 3))
        gv = [poly_eval(g, a) for a in roots]
        hv = [poly_eval(h, a) for a in roots]
        assert sum_over_roots(f, g) == sum(gv) % p
        for d in range(len(roots) + 1):
            assert esym_over_roots(f, g, d) == esym_values(CTX, gv, d)
        if all(hv):
            q = [a * pow(b, -1, p) % p for a, b in zip(gv, hv)]
            assert rational_sum_over_roots(f, g, h) == sum(q) % p
            assert rational_esym_over_roots(f, g, h, len(q)) == math.prod(q) % p
        assert rational_esym_over_roots(f, g, poly("1"), 2) == esym_over_roots(f, g, 2)
        nz = [v for v in gv if v]
        assert nonzero_product_over_roots(f, g) == (math.prod(nz) % p if nz else 1)
        assert esym_over_roots(f, g, len(roots)) == resultant(f, g)


def test_param_poly_table():
    f = poly("x^2-3x+2")  # roots 1, 2
    g = ParamPoly(CTX, {(0, 1, 0): 1, (1, 0, 0): -1})  # y - x
    table = esym_over_roots(f, g, 2)
    # (y - 1)(y - 2) = y^2 - 3y + 2
    assert [row[0] for row in table] == [2, p - 3, 1]
