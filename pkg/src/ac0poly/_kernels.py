"""Dispatch between the compiled and the pure-Python kernel builds."""

from __future__ import annotations

import importlib.util
import os
from functools import lru_cache
from types import ModuleType

import numpy as np

from .field import FieldCtx

_SRC = os.path.join(os.path.dirname(__file__), "_kernsrc.py")
JIT_LIMIT = 1 << 31


def _load(name: str, obj: bool) -> ModuleType:
    spec = importlib.util.spec_from_file_location(name, _SRC)
    mod = importlib.util.module_from_spec(spec)
    mod.OBJECT = obj
    spec.loader.exec_module(mod)
    return mod


@lru_cache(maxsize=None)
def _jit() -> ModuleType:
    from . import _kernsrc

    return _kernsrc


@lru_cache(maxsize=None)
def _py() -> ModuleType:
    return _load("ac0poly._kernsrc_obj", True)


def use_jit(ctx: FieldCtx) -> bool:
    if os.environ.get("AC0POLY_NO_JIT"):
        return False
    return ctx.p < JIT_LIMIT


def kern(ctx: FieldCtx) -> ModuleType:
    return _jit() if use_jit(ctx) else _py()


def arr(ctx: FieldCtx, seq) -> np.ndarray:
    if use_jit(ctx):
        return np.array([int(v) for v in seq], dtype=np.int64)
    a = np.zeros(len(seq), dtype=object)
    for i, v in enumerate(seq):
        a[i] = int(v)
    return a


def arr2(ctx: FieldCtx, rows, width: int) -> np.ndarray:
    """Rows padded with zeros to ``width``."""
    a = np.zeros((len(rows), width), dtype=np.int64 if use_jit(ctx) else object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            a[i, j] = int(v)
    return a


def tolist(a) -> list[int]:
    return [int(v) for v in a]


class _Tables:
    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.size = 0
        self.inv = None
        self.invfact = None

    def ensure(self, n: int):
        if n < self.size:
            return
        p = self.ctx.p
        size = max(2 * n + 2, 64)
        if size >= p:
            size = p - 1
        inv = [0, 1] + [0] * (size - 1)
        for k in range(2, size + 1):
            inv[k] = (p - (p // k) * inv[p % k] % p) % p
        invfact = [1] * (size + 1)
        for k in range(1, size + 1):
            invfact[k] = invfact[k - 1] * inv[k] % p
        self.inv = arr(self.ctx, inv)
        self.invfact = arr(self.ctx, invfact)
        self.size = size + 1


@lru_cache(maxsize=64)
def _tables(ctx: FieldCtx) -> _Tables:
    return _Tables(ctx)


def tables(ctx: FieldCtx, n: int):
    """(inv, invfact) arrays valid for indices 0..n; requires p > n."""
    t = _tables(ctx)
    t.ensure(n)
    return t.inv, t.invfact
