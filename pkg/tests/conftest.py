import random

import pytest

from ac0poly.field import FieldCtx
from ac0poly.upoly import DensePoly, parse_poly

P = 1000003


@pytest.fixture
def ctx():
    return FieldCtx(P)


@pytest.fixture
def P_():
    return lambda text: parse_poly(FieldCtx(P), text)


def poly(text, p=P):
    return parse_poly(FieldCtx(p), text)


def rand_monic(rng: random.Random, ctx, n):
    return DensePoly(ctx, [rng.randrange(ctx.p) for _ in range(n)] + [1])


def rand_poly(rng: random.Random, ctx, n):
    return DensePoly(ctx, [rng.randrange(ctx.p) for _ in range(n)] + [rng.randrange(1, ctx.p)])
