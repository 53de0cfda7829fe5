"""Group expressions built from the trivial group by countable products and
wreath products with Z, plus a sound commutative normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .patterns import (
    OMEGA, Fin, IntCyc, IntSup, Multiplicity, Nat, Pattern,
    instances, map_slots, mult_add, mult_mul, written_slots,
)
from .surface import LEAF, SurfaceTree


class _One:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'One'

    def __reduce__(self):
        return (_One, ())


ONE = _One()


@dataclass(frozen=True)
class Prod:
    """Product over an index pattern; empty slots stand for the trivial group."""
    pattern: Pattern


@dataclass(frozen=True)
class Wr:
    """``inner`` wreath Z."""
    inner: object


@dataclass(frozen=True)
class ProdNF:
    # sorted (factor, multiplicity) pairs
    factors: tuple


GroupExpr = Union[_One, Prod, Wr]
GroupNormalForm = Union[_One, Wr, ProdNF]

Z = Wr(ONE)


def fin(*slots) -> Prod:
    return Prod(Fin(tuple(slots)))


# -- structural order -------------------------------------------------------

def _mult_key(m: Multiplicity) -> tuple:
    return (1, 0) if m is OMEGA else (0, m)


@lru_cache(maxsize=None)
def nf_key(nf) -> tuple:
    if nf is ONE:
        return (0,)
    if isinstance(nf, Wr):
        return (1, nf_key(nf.inner))
    return (2, tuple((nf_key(f), _mult_key(m)) for f, m in nf.factors))


# -- normalization ----------------------------------------------------------

def _factor_counts(nf, mult: Multiplicity, into: dict) -> None:
    if nf is ONE:
        return
    if isinstance(nf, ProdNF):
        for f, m in nf.factors:
            into[f] = mult_add(into.get(f, 0), mult_mul(m, mult))
    else:
        into[nf] = mult_add(into.get(nf, 0), mult)


def _assemble(counts: dict):
    if not counts:
        return ONE
    if len(counts) == 1:
        (f, m), = counts.items()
        if m == 1:
            return f
    return ProdNF(tuple(sorted(counts.items(), key=lambda fm: nf_key(fm[0]))))


@lru_cache(maxsize=None)
def normalize(e: GroupExpr) -> GroupNormalForm:
    """Rewrite ``e`` to its normal form using isomorphism-sound rules only.

    Trivial factors vanish, nested products flatten, each distinct factor
    carries its multiplicity (``OMEGA`` for cycle slots, which absorbs any
    finite count) and a product of a single factor becomes that factor.
    Equal normal forms mean isomorphic groups; the converse is not claimed.
    """
    if e is ONE:
        return ONE
    if isinstance(e, Wr):
        return Wr(normalize(e.inner))
    if isinstance(e, ProdNF):
        return e
    if not isinstance(e, Prod):
        raise TypeError(f'not a group expression: {e!r}')
    counts: dict = {}
    for s, mult in instances(e.pattern):
        if s is not None:
            _factor_counts(normalize(s), mult, counts)
    return _assemble(counts)


def height(e: GroupExpr) -> int:
    if e is ONE:
        return 0
    if isinstance(e, Wr):
        return 1 + height(e.inner)
    return 1 + max((height(s) for s in written_slots(e.pattern) if s is not None), default=0)


def nf_to_expr(nf: GroupNormalForm) -> GroupExpr:
    """A representation whose normal form is ``nf``.

    Finite multiplicities are spelled out as repeated ``Fin`` slots and an
    ``OMEGA`` factor becomes a constant ``Nat`` family.
    """
    if nf is ONE:
        return ONE
    if isinstance(nf, Wr):
        return Wr(nf_to_expr(nf.inner))
    parts = []
    for f, m in nf.factors:
        fe = nf_to_expr(f)
        if m is OMEGA:
            parts.append(Prod(Nat((), (fe,))))
        else:
            parts.extend([fe] * m)
    return parts[0] if len(parts) == 1 else Prod(Fin(tuple(parts)))


# -- realization ------------------------------------------------------------

def _realize_slot(s):
    return None if s is None else realize(s)


def realize(e: GroupExpr) -> SurfaceTree:
    """A class-F surface whose homeotopy group is isomorphic to ``e``.

    Products hang the factor surfaces on a strip indexed like the product,
    except that Z-indexed products are re-indexed over N (or finitely) so
    the root strip admits no shift.  ``A wr Z`` hangs one copy of the
    surface for ``A`` on every interval of a Z-indexed strip.
    """
    if e is ONE:
        return LEAF
    if isinstance(e, Wr):
        return SurfaceTree(IntCyc((realize(e.inner),)))
    p = e.pattern
    if isinstance(p, IntCyc):
        p = Nat((), p.cycle)
    elif isinstance(p, IntSup):
        p = Fin(tuple(s for _, s in p.support))
    return SurfaceTree(map_slots(p, _realize_slot))
