"""Seeded random surfaces and group expressions for property checks."""

from __future__ import annotations

import random

from .groups import ONE, Prod, Wr
from .patterns import Fin, IntCyc, IntSup, Nat, Neg
from .surface import LEAF, SurfaceTree

KINDS = ('fin', 'nat', 'neg', 'cyc', 'sup')


def _pattern(rng: random.Random, slot, nonempty, max_len: int = 3):
    kind = rng.choice(KINDS)
    if kind == 'fin':
        return Fin(tuple(slot() for _ in range(rng.randint(0, max_len))))
    if kind in ('nat', 'neg'):
        pre = tuple(slot() for _ in range(rng.randint(0, 2)))
        cyc = tuple(slot() for _ in range(rng.randint(1, max_len)))
        return (Nat if kind == 'nat' else Neg)(pre, cyc)
    if kind == 'cyc':
        base = tuple(slot() for _ in range(rng.randint(1, max_len)))
        # repeat sometimes so that non-primitive cycles show up
        return IntCyc(base * rng.choice((1, 1, 2)))
    keys = rng.sample(range(-4, 5), rng.randint(0, 3))
    return IntSup(tuple((k, nonempty()) for k in keys))


def random_tree(rng: random.Random, max_depth: int = 3, p_empty: float = 0.4) -> SurfaceTree:
    """A valid surface of syntactic depth at most ``max_depth``.

    Subtrees are drawn from a small per-call pool so equal siblings (and
    hence nontrivial periods and prefix absorption) occur often.
    """
    pool: dict[int, list] = {}

    def tree(d: int) -> SurfaceTree:
        if d <= 0:
            return LEAF
        bucket = pool.setdefault(d, [])
        if bucket and rng.random() < 0.5:
            return rng.choice(bucket)
        t = SurfaceTree(_pattern(rng, lambda: slot(d - 1), lambda: tree(d - 1)))
        bucket.append(t)
        return t

    def slot(d: int):
        if rng.random() < p_empty:
            return None
        return tree(rng.randint(0, d))

    return tree(max_depth)


def random_fin_tree(rng: random.Random, max_depth: int = 3) -> SurfaceTree:
    """A fully finite surface (every pattern ``Fin``)."""
    def tree(d):
        n = rng.randint(0, 3) if d > 0 else 0
        return SurfaceTree(Fin(tuple(None if rng.random() < 0.3 else tree(d - 1) for _ in range(n))))
    return tree(max_depth)


def random_group(rng: random.Random, max_height: int = 5):
    """A group expression of height at most ``max_height``."""
    def group(h: int):
        if h <= 0:
            return ONE
        r = rng.random()
        if r < 0.15:
            return ONE
        if r < 0.5:
            return Wr(group(h - 1))

        def slot():
            return None if rng.random() < 0.2 else group(rng.randint(0, h - 1))

        return Prod(_pattern(rng, slot, lambda: group(rng.randint(0, h - 1))))
    return group(max_height)
