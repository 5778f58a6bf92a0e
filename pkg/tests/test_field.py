import random

import pytest

from ac0poly.errors import CharacteristicTooSmall, ModulusMismatch, NotPrime
from ac0poly.field import FieldCtx, arith, char_guard, inv, is_prime


F101 = FieldCtx(101)


@pytest.mark.parametrize("a,b,kind,want", [(7, 8, "mul", 56), (1, 2, "div", 51), (0, 5, "add", 5)])
def test_arith_examples(a, b, kind, want):
    assert arith(F101(a), F101(b), kind).value == want


@pytest.mark.parametrize("a,want", [(2, 51), (1, 1), (100, 100)])
def test_inv_examples(a, want):
    assert inv(F101(a)).value == want


def test_char_guard_examples():
    char_guard(F101, 64)
    with pytest.raises(CharacteristicTooSmall):
        char_guard(F101, 101)
    char_guard(FieldCtx(1000003), 2 * 500)


def test_char_guard_exhaustive_small():
    for p in (3, 5, 7, 11, 13):
        ctx = FieldCtx(p)
        for b in range(20):
            if p > b:
                char_guard(ctx, b)
            else:
                with pytest.raises(CharacteristicTooSmall):
                    char_guard(ctx, b)


def test_rejects_composites_and_tiny():
    for n in (1, 2, 4, 9, 1000001, 2**61):
        with pytest.raises(NotPrime):
            FieldCtx(n)
    assert is_prime(2**61 - 1) and not is_prime(561)


def test_mixed_moduli():
    with pytest.raises(ModulusMismatch):
        F101(1) + FieldCtx(103)(1)


def test_inverse_and_ring_laws():
    ctx = FieldCtx(1000003)
    rng = random.Random(0)
    for _ in range(300):
        a, b, c = (ctx(rng.randrange(ctx.p)) for _ in range(3))
        assert (a + b) + c == a + (b + c) and a * b == b * a
        assert (a * b) * c == a * (b * c) and a + b == b + a
        if a.value:
            assert a * inv(a) == ctx(1) and inv(inv(a)) == a
