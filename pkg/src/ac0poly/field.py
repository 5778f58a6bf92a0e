"""Prime field arithmetic and the characteristic guards used by every algorithm."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import CharacteristicTooSmall, DivisionByZero, ModulusMismatch, NotPrime

DEFAULT_PRIME = 1_000_003

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """The field F_p. Immutable; equality is equality of moduli."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or self.p >= 1 << 63:
            raise NotPrime(f"modulus must be an odd prime below 2^63, got {self.p!r}")
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __call__(self, v: int) -> "FieldElem":
        return FieldElem(v % self.p, self)

    # raw integer helpers; the polynomial code works on reduced ints
    def red(self, v: int) -> int:
        return v % self.p

    def inv(self, v: int) -> int:
        v %= self.p
        if v == 0:
            raise DivisionByZero("inverse of zero")
        return pow(v, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def signed(self, v: int) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        v %= self.p
        return v - self.p if v > self.p // 2 else v

    def guard(self, bound: int) -> None:
        char_guard(self, bound)


@dataclass(frozen=True)
class FieldElem:
    value: int
    ctx: FieldCtx

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.p:
            raise ValueError("FieldElem value out of range")

    def _other(self, b) -> int:
        if isinstance(b, FieldElem):
            if b.ctx != self.ctx:
                raise ModulusMismatch(f"{self.ctx.p} vs {b.ctx.p}")
            return b.value
        if isinstance(b, int):
            return b % self.ctx.p
        return NotImplemented

    def __add__(self, b):
        v = self._other(b)
        return FieldElem((self.value + v) % self.ctx.p, self.ctx)

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        return FieldElem((self.value - v) % self.ctx.p, self.ctx)

    def __rsub__(self, b):
        v = self._other(b)
        return FieldElem((v - self.value) % self.ctx.p, self.ctx)

    def __mul__(self, b):
        v = self._other(b)
        return FieldElem(self.value * v % self.ctx.p, self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, b):
        v = self._other(b)
        return FieldElem(self.ctx.div(self.value, v), self.ctx)

    def __rtruediv__(self, b):
        v = self._other(b)
        return FieldElem(self.ctx.div(v, self.value), self.ctx)

    def __neg__(self):
        return FieldElem(-self.value % self.ctx.p, self.ctx)

    def __pow__(self, e: int):
        if e < 0:
            return inv(self) ** (-e)
        return FieldElem(pow(self.value, e, self.ctx.p), self.ctx)

    def __eq__(self, b):
        if isinstance(b, FieldElem):
            return self.ctx == b.ctx and self.value == b.value
        if isinstance(b, int):
            return self.value == b % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ctx.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.p})"


def arith(a: FieldElem, b: FieldElem, kind: Literal["add", "sub", "mul", "div"]) -> FieldElem:
    if a.ctx != b.ctx:
        raise ModulusMismatch(f"{a.ctx.p} vs {b.ctx.p}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown kind {kind!r}")


def inv(a: FieldElem) -> FieldElem:
    return FieldElem(a.ctx.inv(a.value), a.ctx)


def char_guard(ctx: FieldCtx, required_bound: int) -> None:
    """Succeeds iff p > required_bound."""
    if not ctx.p > required_bound:
        raise CharacteristicTooSmall(ctx.p, required_bound)


def required_bound(op: str, d: int, m: int = 1) -> int:
    """Characteristic bound for an operation on inputs of degree at most d.

    One table for every characteristic requirement so the guards stay auditable.
    """
    table = {
        "newton": d,
        "unary": d,
        "gcd2": 2 * d,
        "gcd": m * d,
        "lcm": m * m * d,
        "diamond2": 2 * d,
        "diamond": 2 * m * d,
    }
    try:
        return table[op]
    except KeyError:
        raise ValueError(f"no bound registered for {op!r}") from None
