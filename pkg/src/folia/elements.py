"""Element arithmetic in groups given by group expressions.

Elements are stored in a normalized, identity-free form so that equality
is structural:

* shape ``One``: the unit ``E``;
* shape ``Prod``: a sorted tuple of ``(index, element)`` pairs;
* shape ``Wr(P)``: a finitely supported map Z -> P (sorted pairs) and a shift.

Only finitely supported maps are represented; they form a subgroup of the
full wreath product closed under every operation here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Union

from .groups import ONE, GroupExpr, Prod, Wr
from .patterns import Fin, index_window, is_valid_index, slot_at


class ShapeMismatch(ValueError):
    pass


class _Unit:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'E'

    def __reduce__(self):
        return (_Unit, ())


E = _Unit()


@dataclass(frozen=True)
class ProdElem:
    entries: tuple = ()


@dataclass(frozen=True)
class WrElem:
    support: tuple = ()
    shift: int = 0


WreathElement = Union[_Unit, ProdElem, WrElem]


def identity(shape: GroupExpr) -> WreathElement:
    if shape is ONE:
        return E
    if isinstance(shape, Prod):
        return ProdElem()
    if isinstance(shape, Wr):
        return WrElem()
    raise ShapeMismatch(f'not a group shape: {shape!r}')


def is_identity(x: WreathElement) -> bool:
    if x is E:
        return True
    if isinstance(x, ProdElem):
        return not x.entries
    return not x.support and x.shift == 0


def slot_shape(shape: Prod, i: int) -> GroupExpr:
    if not is_valid_index(shape.pattern, i):
        raise ShapeMismatch(f'index {i} is outside the product index set')
    s = slot_at(shape.pattern, i)
    return ONE if s is None else s


def _pairs(m: Mapping) -> tuple:
    return tuple(sorted((k, v) for k, v in m.items() if not is_identity(v)))


def prod_element(entries: Mapping[int, WreathElement]) -> ProdElem:
    return ProdElem(_pairs(entries))


def wr_element(support: Mapping[int, WreathElement], shift: int = 0) -> WrElem:
    return WrElem(_pairs(support), shift)


def _expect(shape: GroupExpr, *xs) -> None:
    if shape is ONE:
        kind = _Unit
    elif isinstance(shape, Prod):
        kind = ProdElem
    elif isinstance(shape, Wr):
        kind = WrElem
    else:
        raise ShapeMismatch(f'not a group shape: {shape!r}')
    for x in xs:
        if not isinstance(x, kind):
            raise ShapeMismatch(f'{x!r} is not an element of shape {type(shape).__name__}')


def check_element(shape: GroupExpr, x: WreathElement) -> WreathElement:
    """Raise ShapeMismatch unless ``x`` is a normalized element of ``shape``."""
    _expect(shape, x)
    if isinstance(x, ProdElem):
        keys = [i for i, _ in x.entries]
        if keys != sorted(set(keys)):
            raise ShapeMismatch('product entries must have distinct sorted indices')
        for i, v in x.entries:
            if is_identity(v):
                raise ShapeMismatch(f'stored identity at index {i}')
            check_element(slot_shape(shape, i), v)
    elif isinstance(x, WrElem):
        keys = [j for j, _ in x.support]
        if keys != sorted(set(keys)):
            raise ShapeMismatch('support entries must have distinct sorted indices')
        for j, v in x.support:
            if is_identity(v):
                raise ShapeMismatch(f'stored identity at {j}')
            check_element(shape.inner, v)
    return x


def multiply(shape: GroupExpr, a: WreathElement, b: WreathElement) -> WreathElement:
    """Product ``a * b``.

    For ``Wr(P)`` with ``a = (f1, n)`` and ``b = (f2, m)`` the result is
    ``(j -> f1(j + m) * f2(j), n + m)``.
    """
    _expect(shape, a, b)
    if shape is ONE:
        return E
    if isinstance(shape, Prod):
        da, db = dict(a.entries), dict(b.entries)
        out = {}
        for i in da.keys() | db.keys():
            sub = slot_shape(shape, i)
            out[i] = multiply(sub, da.get(i, identity(sub)), db.get(i, identity(sub)))
        return prod_element(out)
    inner = shape.inner
    m = b.shift
    f1, f2 = dict(a.support), dict(b.support)
    unit = identity(inner)
    out = {}
    for j in {k - m for k in f1} | f2.keys():
        out[j] = multiply(inner, f1.get(j + m, unit), f2.get(j, unit))
    return wr_element(out, a.shift + b.shift)


def inverse(shape: GroupExpr, a: WreathElement) -> WreathElement:
    _expect(shape, a)
    if shape is ONE:
        return E
    if isinstance(shape, Prod):
        return ProdElem(tuple((i, inverse(slot_shape(shape, i), v)) for i, v in a.entries))
    m = a.shift
    return WrElem(tuple((j + m, inverse(shape.inner, v)) for j, v in a.support), -m)


def power(shape: GroupExpr, a: WreathElement, n: int) -> WreathElement:
    if n < 0:
        a, n = inverse(shape, a), -n
    out = identity(shape)
    for _ in range(n):
        out = multiply(shape, out, a)
    return out


# -- the exact sequence 1 -> Map(Z, P) -> P wr Z -> Z -> 1 ---------------------

def _wr_shape(shape) -> Wr:
    if not isinstance(shape, Wr):
        raise ShapeMismatch(f'expected a wreath shape, got {shape!r}')
    return shape


def project_pi(shape: Wr, a: WrElem) -> int:
    _expect(_wr_shape(shape), a)
    return a.shift


def section_s(shape: Wr, n: int) -> WrElem:
    _wr_shape(shape)
    return WrElem((), n)


def include_i(shape: Wr, phi: Mapping[int, WreathElement]) -> WrElem:
    shape = _wr_shape(shape)
    for v in phi.values():
        _expect(shape.inner, v)
    return wr_element(phi, 0)


def kernel_part(shape: Wr, a: WrElem) -> dict:
    """The map part of ``a``, which ``include_i`` sends back to ``a`` when ``pi(a) == 0``."""
    _expect(_wr_shape(shape), a)
    return dict(a.support)


# -- block transport --------------------------------------------------------

def transport_compose(k: int, block_shape: GroupExpr, a: WrElem, b: WrElem) -> WrElem:
    """Compose ``a`` after ``b`` by following where each block of the Z-family goes.

    Block ``j`` (``k`` consecutive subsurfaces) is first decorated by ``b``
    and carried to ``j + b.shift``; there ``a`` decorates it and carries it
    on by ``a.shift``.  Decorations are composed block by block, recursing
    the same way through nested wreath layers.  This never calls
    ``multiply`` and serves as an oracle for it.
    """
    if k < 1:
        raise ShapeMismatch('block count must be positive')
    if k > 1 and not (isinstance(block_shape, Prod) and isinstance(block_shape.pattern, Fin)
                      and len(block_shape.pattern.slots) == k):
        raise ShapeMismatch(f'block shape must be a {k}-fold finite product')
    return _follow(Wr(block_shape), a, b)


def _unit_of(shape):
    return E if shape is ONE else ProdElem() if isinstance(shape, Prod) else WrElem()


def _follow(shape, a, b):
    _expect(shape, a, b)
    if shape is ONE:
        return E
    if isinstance(shape, Prod):
        composed = []
        lookup_a, lookup_b = dict(a.entries), dict(b.entries)
        for i in sorted(set(lookup_a) | set(lookup_b)):
            sub = slot_shape(shape, i)
            r = _follow(sub, lookup_a.get(i, _unit_of(sub)), lookup_b.get(i, _unit_of(sub)))
            if not is_identity(r):
                composed.append((i, r))
        return ProdElem(tuple(composed))
    deco_a, deco_b = dict(a.support), dict(b.support)
    touched = list(deco_b) + [j - b.shift for j in deco_a]
    result = []
    if touched:
        for j in range(min(touched), max(touched) + 1):
            pos = j
            first = deco_b.get(pos, _unit_of(shape.inner))
            pos += b.shift
            second = deco_a.get(pos, _unit_of(shape.inner))
            r = _follow(shape.inner, second, first)
            if not is_identity(r):
                result.append((j, r))
    return WrElem(tuple(result), a.shift + b.shift)


# -- sampling ---------------------------------------------------------------

def random_element(shape: GroupExpr, budget: int, seed) -> WreathElement:
    """Deterministic pseudo-random element; supports and shifts stay within ``budget``."""
    return _random(shape, budget, random.Random(seed))


def _random(shape, budget: int, rng: random.Random):
    if budget <= 0 or shape is ONE:
        return identity(shape)
    if isinstance(shape, Wr):
        size = rng.randint(0, budget)
        keys = rng.sample(range(-budget, budget + 1), size)
        return wr_element({j: _random(shape.inner, budget, rng) for j in keys},
                          rng.randint(-budget, budget))
    cands = [i for i in index_window(shape.pattern, 1) if slot_at(shape.pattern, i) is not None]
    size = rng.randint(0, min(budget, len(cands)))
    keys = rng.sample(cands, size)
    return prod_element({i: _random(slot_shape(shape, i), budget, rng) for i in keys})
