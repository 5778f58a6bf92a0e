import random

from hypothesis import given, settings, strategies as st

from ac0poly.field import FieldCtx
from ac0poly.oracle import euclid_gcd, filter_oracle, instance_from_profile, random_profile, yun_squarefree
from ac0poly.rootops import (
    filter_common_roots, filter_common_roots_param, squarefree_decomposition, squarefree_part,
    threshold_multiplicity,
)
from ac0poly.upoly import DensePoly, poly_derivative, poly_eval

from conftest import poly

CTX = FieldCtx(1000003)
ONE = poly("1")


def test_filter_examples():
    assert filter_common_roots(poly("(x-1)(x-2)"), [poly("x-1")]) == (poly("x-1"), poly("x-2"))
    assert filter_common_roots(poly("x(x-1)(x-2)"), [poly("x(x-1)"), poly("x(x-2)")]) == (poly("x"), poly("x^2-3x+2"))
    f = poly("x^2+5")
    assert filter_common_roots(f, [ONE]) == (ONE, f)


def test_threshold_examples():
    f = poly("(x-1)^2(x-2)")
    assert threshold_multiplicity(f, [f], [2]) == (poly("(x-1)^2"), poly("x-2"))
    assert threshold_multiplicity(f, [poly("x-1")], [2]) == (ONE, f)
    gs = [poly("(x-1)(x-3)"), poly("x-1")]
    assert threshold_multiplicity(f, gs, [1, 1]) == filter_common_roots(f, gs)


def test_squarefree_examples():
    assert squarefree_decomposition(poly("(x-1)(x-2)^2")).parts == (poly("x-1"), poly("x-2"))
    assert squarefree_decomposition(poly("(x-1)^3")).parts == (ONE, ONE, poly("x-1"))
    f = poly("x^3+x+1")
    assert squarefree_decomposition(f).parts == (f,)
    assert squarefree_part(poly("(x-1)^2(x-2)")) == poly("x^2-3x+2")
    assert squarefree_part(f) == f
    assert squarefree_part(poly("x^7")) == poly("x")


def _mults(prof, j):
    return {r % CTX.p: m[j] for r, m in prof.entries}


def test_filter_and_threshold_on_profiles():
    for s in range(120):
        prof = random_profile(s, 3, 8, 4, CTX, max_degree=20)
        f, g1, g2 = instance_from_profile(CTX, prof)
        fin, fout = filter_common_roots(f, [g1, g2])
        assert fin * fout == f
        m0, m1, m2 = _mults(prof, 0), _mults(prof, 1), _mults(prof, 2)
        want_in = DensePoly.from_roots(CTX, [r for r in m0 for _ in range(m0[r]) if m1[r] and m2[r]])
        assert fin == want_in
        assert (fin, fout) == filter_oracle(f, [g1, g2])
        r1, r2 = 1 + s % 3, 1 + (s // 3) % 3
        ge, lt = threshold_multiplicity(f, [g1, g2], [r1, r2])
        assert ge * lt == f
        assert ge == DensePoly.from_roots(CTX, [r for r in m0 for _ in range(m0[r]) if m1[r] >= r1 and m2[r] >= r2])


def test_param_filter_agrees():
    for s in range(15):
        prof = random_profile(s, 3, 4, 2, CTX, max_degree=6)
        f, g1, g2 = instance_from_profile(CTX, prof)
        assert filter_common_roots_param(f, [g1, g2]) == filter_common_roots(f, [g1, g2])


def test_derivative_characterization():
    for s in range(40):
        prof = random_profile(s, 1, 5, 5, CTX, max_degree=20)
        (g,) = instance_from_profile(CTX, prof)
        for r, (m,) in prof.entries:
            for k in range(1, 6):
                vanish = all(poly_eval(poly_derivative(g, j), r) == 0 for j in range(k))
                assert vanish == (m >= k)


def _check_decomposition(f):
    parts = squarefree_decomposition(f).parts
    acc = ONE
    for i, q in enumerate(parts, 1):
        acc = acc * q**i
        assert euclid_gcd(q, poly_derivative(q)).is_one() or q.degree == 0
        for q2 in parts[i:]:
            assert euclid_gcd(q, q2).is_one()
    assert acc == f
    assert not parts or parts[-1].degree > 0
    assert list(parts) == yun_squarefree(f)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_squarefree_invariants(seed):
    prof = random_profile(seed, 1, 10, 6, CTX, max_degree=48)
    (f,) = instance_from_profile(CTX, prof)
    _check_decomposition(f)


def test_degree_zero_inputs():
    assert squarefree_decomposition(ONE).parts == ()
    assert filter_common_roots(ONE, [poly("x")]) == (ONE, ONE)
