import random

import pytest

from ac0poly.errors import SingularMatrix
from ac0poly.field import FieldCtx
from ac0poly.oracle import (
    bareiss_det, composed_oracle, extended_euclid, euclid_gcd, instance_from_profile, long_division,
    matmul, random_profile, sylvester_oracle,
)
from ac0poly.structmat import (
    Matrix, bezout_coeffs_coprime, bezout_inverse, bezout_matrix, composed, discriminant, div_rem,
    implicitize, remainder, resultant, sylvester_adjugate, sylvester_inverse, sylvester_matrix,
    toeplitz_inverse,
)
from ac0poly.upoly import DensePoly, poly_eval

from conftest import poly, rand_monic, rand_poly

CTX = FieldCtx(1000003)
p = CTX.p


def eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def test_sylvester_examples():
    assert sylvester_matrix(poly("x-1"), poly("x-2")).signed_rows() == [[1, 1], [-1, -2]]
    S = sylvester_matrix(poly("x^2+1"), poly("x+4"))
    assert (S.rows, S.cols) == (3, 3)
    f = poly("x^2+3x+1")
    assert bareiss_det(sylvester_matrix(f, f).to_rows(), p) == 0


def test_resultant_and_disc_examples():
    assert resultant(poly("x^2-1"), poly("x-2")) == 3
    assert resultant(poly("x-1"), poly("x^2-1")) == 0
    assert resultant(poly("x^3+x+1"), poly("1")) == 1
    assert discriminant(poly("x^2+3x+2")) == 1
    assert discriminant(poly("(x-1)^2")) == 0
    assert discriminant(poly("x^2-3x+2")) == 1


def test_remainder_examples():
    assert remainder(poly("x^3"), poly("x^2-1")) == poly("x")
    f = poly("x^3+2x+5")
    assert remainder(f, f).is_zero
    assert remainder(poly("x^2+3x+2"), poly("x+1")).is_zero
    assert div_rem(poly("x^3"), poly("x^2-1")) == (poly("x"), poly("x"))
    assert div_rem(poly("x^2+1"), poly("x")) == (poly("x"), poly("1"))
    g = poly("x^2+7")
    assert div_rem(g, g) == (poly("1"), DensePoly(CTX))


def test_adjugate_examples():
    f, g = poly("x-1"), poly("x-2")
    A = sylvester_adjugate(f, g)
    assert A.signed_rows() == [[-2, -1], [1, 1]]
    assert matmul(A.to_rows(), sylvester_matrix(f, g).to_rows(), p) == [[p - 1, 0], [0, p - 1]]
    inv = sylvester_inverse(poly("x"), poly("x-1"))
    assert [r[-1] for r in inv.signed_rows()] == [1, -1]
    with pytest.raises(SingularMatrix):
        sylvester_inverse(f, f)


def test_bezout_coeff_examples():
    assert bezout_coeffs_coprime(poly("x"), poly("x-1")) == (poly("1"), poly("-1"))
    assert bezout_coeffs_coprime(poly("x-1"), poly("1")) == (DensePoly(CTX), poly("1"))
    F = FieldCtx(101)
    from ac0poly.upoly import parse_poly
    a, b = bezout_coeffs_coprime(parse_poly(F, "x^2+1"), parse_poly(F, "x"))
    assert a == parse_poly(F, "1") and b == parse_poly(F, "-x")


def test_bezout_matrix_examples():
    assert bezout_matrix(poly("x-1"), poly("x-2"), 1).signed_rows() == [[-1]]
    assert bareiss_det(bezout_matrix(poly("x-1"), poly("x-2"), 1).to_rows(), p) == p - 1 == resultant(poly("x-1"), poly("x-2"))
    f = poly("x^3+2x+9")
    assert all(v == 0 for v in bezout_matrix(f, f, 3).entries)
    assert bezout_inverse(poly("x-1"), poly("x-2")).signed_rows() == [[-1]]
    with pytest.raises(SingularMatrix):
        bezout_inverse(f, f)


def test_bezout_determinant_sign():
    rng = random.Random(5)
    for _ in range(40):
        d = rng.randint(1, 7)
        f, g = rand_monic(rng, CTX, d), rand_poly(rng, CTX, rng.randint(0, d))
        det = bareiss_det(bezout_matrix(f, g, d).to_rows(), p)
        sign = -1 if (d * (d - 1) // 2) % 2 else 1
        assert det == sign * resultant(f, g) % p


def test_toeplitz_examples():
    M = Matrix.from_rows(CTX, [[1, 2], [0, 1]])
    assert toeplitz_inverse(M).signed_rows() == [[1, -2], [0, 1]]
    assert toeplitz_inverse(Matrix.identity(CTX, 4)).to_rows() == eye(4)
    with pytest.raises(SingularMatrix):
        toeplitz_inverse(Matrix.from_rows(CTX, [[0, 1], [0, 0]]))


def test_composed_examples():
    assert composed(poly("x-1"), poly("x-2"), "sum") == poly("x-3")
    assert composed(poly("x-2"), poly("x-3"), "product") == poly("x-6")
    assert composed(poly("x^2-1"), poly("x-2"), "product") == poly("x^2-4")


def test_composed_against_roots():
    for s in range(20):
        pa = random_profile(s, 1, 4, 2, CTX, max_degree=8)
        pb = random_profile(s + 100, 1, 4, 2, CTX, max_degree=8)
        (f,), (g,) = instance_from_profile(CTX, pa), instance_from_profile(CTX, pb)
        ra = [r for r, m in pa.entries for _ in range(m[0])]
        rb = [r for r, m in pb.entries for _ in range(m[0])]
        assert composed(f, g, "sum") == DensePoly.from_roots(CTX, [a + b for a in ra for b in rb])
        assert composed(f, g, "product") == DensePoly.from_roots(CTX, [a * b for a in ra for b in rb])
        assert composed(f, g, "sum") == composed_oracle(f, g, "sum")


def _on_curve(T, x, y):
    return sum(T[i][j] * pow(x, i, p) * pow(y, j, p) for i in range(len(T)) for j in range(len(T[0]))) % p


def test_implicitize_examples():
    T = implicitize(poly("1-x^2"), poly("2x"), poly("1+x^2"))
    # x^2 + y^2 - 1 up to the fixed normalization
    c = T[2][0]
    assert c and T[0][2] == c and T[0][0] == (-c) % p
    assert sum(1 for row in T for v in row if v) == 3
    L = implicitize(poly("x"), poly("x"), poly("1"))
    assert L[1][0] == (-L[0][1]) % p and sum(1 for row in L for v in row if v) == 2
    rng = random.Random(9)
    f, g, h = (rand_poly(rng, CTX, 3) for _ in range(3))
    T = implicitize(f, g, h)
    for _ in range(20):
        t = rng.randrange(p)
        ht = poly_eval(h, t)
        if ht:
            assert _on_curve(T, poly_eval(f, t) * pow(ht, -1, p) % p, poly_eval(g, t) * pow(ht, -1, p) % p) == 0


def test_resultant_properties():
    rng = random.Random(6)
    for _ in range(60):
        n, m = rng.randint(1, 10), rng.randint(1, 10)
        f, g = rand_monic(rng, CTX, n), rand_monic(rng, CTX, m)
        if rng.random() < 0.3:
            w = rand_monic(rng, CTX, 1)
            f, g = f * w, g * w
        r = resultant(f, g)
        assert r == bareiss_det(sylvester_oracle(f, g), p)
        assert (r != 0) == euclid_gcd(f, g).is_one()
        assert r == (-1) ** (f.degree * g.degree) * resultant(g, f) % p


def test_structured_inverses():
    rng = random.Random(8)
    for _ in range(25):
        n, m = rng.randint(1, 8), rng.randint(1, 8)
        f, g = rand_monic(rng, CTX, n), rand_monic(rng, CTX, m)
        S = sylvester_matrix(f, g).to_rows()
        r = resultant(f, g)
        assert matmul(sylvester_adjugate(f, g).to_rows(), S, p) == [[r * (i == j) for j in range(n + m)] for i in range(n + m)]
        g2 = rand_poly(rng, CTX, rng.randint(0, n))
        B = bezout_matrix(f, g2, n)
        if resultant(f, g2):
            assert matmul(B.to_rows(), bezout_inverse(f, g2).to_rows(), p) == eye(n)
        a = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 1)]
        A = Matrix.from_rows(CTX, [[a[j - i] if j >= i else 0 for j in range(n)] for i in range(n)])
        assert matmul(A.to_rows(), toeplitz_inverse(A).to_rows(), p) == eye(n)


def test_division_against_long_division():
    rng = random.Random(10)
    for s in range(80):
        prof = random_profile(s, 1, 4, 3, CTX, max_degree=10)
        (g,) = instance_from_profile(CTX, prof)  # often disc(g) = 0
        f = rand_poly(rng, CTX, rng.randint(0, 20))
        assert div_rem(f, g) == long_division(f, g)
        assert remainder(f, g) == long_division(f, g)[1]


def test_bezout_coefficients_against_euclid():
    rng = random.Random(11)
    for _ in range(30):
        f, g = rand_monic(rng, CTX, rng.randint(1, 8)), rand_poly(rng, CTX, rng.randint(1, 8))
        a, b = bezout_coeffs_coprime(f, g)
        assert (a * f + b * g) == poly("1")
        assert (a, b) == extended_euclid(f, g).bezout
