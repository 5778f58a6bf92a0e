import random

from ac0poly.field import FieldCtx
from ac0poly.oracle import (
    MultiplicityProfile, bareiss_det, cofactor_det, euclid_gcd, extended_euclid, gcd_free_basis,
    instance_from_profile, random_profile, sylvester_oracle,
)
from ac0poly.upoly import DensePoly

from conftest import poly

CTX = FieldCtx(1000003)
p = CTX.p


def test_euclid_examples():
    assert euclid_gcd(poly("(x-1)^2(x-2)"), poly("(x-1)(x-3)")) == poly("x-1")
    assert euclid_gcd(poly("3x^2+3"), DensePoly(CTX)) == poly("x^2+1")
    sch = extended_euclid(poly("x^3"), poly("x^2-1"))
    rs = [r for r, _, _ in sch.rows]
    assert rs[:3] == [poly("x^3"), poly("x^2-1"), poly("x")]
    assert rs[3].degree == 0 and rs[4].is_zero
    assert sch.gcd == poly("1")


def test_extended_euclid_rows():
    rng = random.Random(1)
    for _ in range(30):
        f = DensePoly(CTX, [rng.randrange(p) for _ in range(rng.randint(1, 9))])
        g = DensePoly(CTX, [rng.randrange(p) for _ in range(rng.randint(1, 9))])
        for r, s, t in extended_euclid(f, g).rows:
            assert s * f + t * g == r


def test_bareiss_examples():
    assert bareiss_det([[1, 1], [-1, -2]], p) == p - 1
    assert bareiss_det([[int(i == j) for j in range(4)] for i in range(4)], p) == 1
    assert bareiss_det(sylvester_oracle(poly("x^2-1"), poly("x-2")), p) == 3


def test_bareiss_vs_cofactor():
    rng = random.Random(2)
    for n in range(1, 6):
        for _ in range(10):
            M = [[rng.randrange(p) if rng.random() < 0.8 else 0 for _ in range(n)] for _ in range(n)]
            assert bareiss_det(M, p) == cofactor_det(M, p)


def test_profiles():
    prof = MultiplicityProfile([(1, [2]), (2, [1])])
    assert instance_from_profile(CTX, prof) == [poly("x^3-4x^2+5x-2")]
    assert instance_from_profile(CTX, MultiplicityProfile([(5, [1])])) == [poly("x-5")]
    assert random_profile(42, 3, 6, 4, CTX).entries == random_profile(42, 3, 6, 4, CTX).entries
    assert MultiplicityProfile.from_json(prof.to_json()).entries == prof.entries


def test_profile_round_trip_through_linear_factors():
    for s in range(20):
        prof = random_profile(s, 2, 6, 3, CTX)
        fs = instance_from_profile(CTX, prof)
        for j, f in enumerate(fs):
            got = {}
            rest = f
            for r, _ in prof.entries:
                lin = poly(f"x-{r}") if r else poly("x")
                k = 0
                while rest.degree > 0 and euclid_gcd(rest, lin).degree == 1:
                    from ac0poly.oracle import long_division
                    rest, k = long_division(rest, lin)[0], k + 1
                got[r] = k
            assert got == {r: m[j] for r, m in prof.entries}


def test_gcd_free_basis():
    fs = [poly("(x-1)^2(x-2)"), poly("(x-2)^3(x-3)")]
    basis = sorted(gcd_free_basis(fs), key=lambda b: b.coeffs)
    assert sorted(b.degree for b in basis) == [1, 1, 1]
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            assert euclid_gcd(a, b).is_one()
