"""Finitely described index patterns over the standard collections.

A pattern assigns a slot to every index of one of the index sets
``[n] = {1..n}``, ``N = {1, 2, ...}``, ``-N = {-1, -2, ...}`` or ``Z``.
Slots are ``None`` (empty) or an arbitrary payload; surfaces store
subtrees there, group expressions store factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Union


class _Omega:
    """Countably infinite multiplicity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'OMEGA'

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()
Multiplicity = Union[int, _Omega]


def mult_add(a: Multiplicity, b: Multiplicity) -> Multiplicity:
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a + b


def mult_mul(a: Multiplicity, b: Multiplicity) -> Multiplicity:
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a * b


@dataclass(frozen=True)
class Fin:
    slots: tuple = ()


@dataclass(frozen=True)
class Nat:
    prefix: tuple = ()
    cycle: tuple = ()


@dataclass(frozen=True)
class Neg:
    prefix: tuple = ()
    cycle: tuple = ()


@dataclass(frozen=True)
class IntCyc:
    cycle: tuple = ()


@dataclass(frozen=True)
class IntSup:
    # (index, slot) pairs; order is as written, canonical forms sort by index
    support: tuple = ()


Pattern = Union[Fin, Nat, Neg, IntCyc, IntSup]

# structural order used wherever patterns are compared
TAG_ORDER = {Fin: 0, Nat: 1, Neg: 2, IntCyc: 3, IntSup: 4}


def map_slots(p: Pattern, f: Callable[[Any], Any]) -> Pattern:
    """Apply ``f`` to every written slot, keeping the index structure."""
    if isinstance(p, Fin):
        return Fin(tuple(f(s) for s in p.slots))
    if isinstance(p, (Nat, Neg)):
        return type(p)(tuple(f(s) for s in p.prefix), tuple(f(s) for s in p.cycle))
    if isinstance(p, IntCyc):
        return IntCyc(tuple(f(s) for s in p.cycle))
    if isinstance(p, IntSup):
        return IntSup(tuple((i, f(s)) for i, s in p.support))
    raise TypeError(f'not a pattern: {p!r}')


def written_slots(p: Pattern) -> list:
    """Slots in written order (support entries yield just the slot)."""
    if isinstance(p, Fin):
        return list(p.slots)
    if isinstance(p, (Nat, Neg)):
        return list(p.prefix) + list(p.cycle)
    if isinstance(p, IntCyc):
        return list(p.cycle)
    if isinstance(p, IntSup):
        return [s for _, s in p.support]
    raise TypeError(f'not a pattern: {p!r}')


def instances(p: Pattern) -> Iterator[tuple[Any, Multiplicity]]:
    """Yield ``(slot, multiplicity)`` for every written slot.

    Cycle slots stand for countably many indices and get ``OMEGA``.
    """
    if isinstance(p, Fin):
        for s in p.slots:
            yield s, 1
    elif isinstance(p, (Nat, Neg)):
        for s in p.prefix:
            yield s, 1
        for s in p.cycle:
            yield s, OMEGA
    elif isinstance(p, IntCyc):
        for s in p.cycle:
            yield s, OMEGA
    elif isinstance(p, IntSup):
        for _, s in p.support:
            yield s, 1
    else:
        raise TypeError(f'not a pattern: {p!r}')


def is_valid_index(p: Pattern, i: int) -> bool:
    if isinstance(p, Fin):
        return 1 <= i <= len(p.slots)
    if isinstance(p, Nat):
        return i >= 1
    if isinstance(p, Neg):
        return i <= -1
    return True


def slot_at(p: Pattern, i: int) -> Any:
    """Slot sitting at index ``i``; raises IndexError outside the index set."""
    if not is_valid_index(p, i):
        raise IndexError(f'index {i} not in the index set of {type(p).__name__}')
    if isinstance(p, Fin):
        return p.slots[i - 1]
    if isinstance(p, (Nat, Neg)):
        n = i if isinstance(p, Nat) else -i
        if n <= len(p.prefix):
            return p.prefix[n - 1]
        return p.cycle[(n - len(p.prefix) - 1) % len(p.cycle)]
    if isinstance(p, IntCyc):
        return p.cycle[i % len(p.cycle)]
    for j, s in p.support:
        if j == i:
            return s
    return None


def index_window(p: Pattern, reach: int) -> list[int]:
    """A finite set of indices covering every written slot at least once.

    ``reach`` extra cycle periods are added on infinite sides.
    """
    if isinstance(p, Fin):
        return list(range(1, len(p.slots) + 1))
    if isinstance(p, (Nat, Neg)):
        n = len(p.prefix) + (1 + reach) * len(p.cycle)
        sign = 1 if isinstance(p, Nat) else -1
        return [sign * k for k in range(1, n + 1)]
    if isinstance(p, IntCyc):
        n = len(p.cycle)
        return list(range(-reach * n, (1 + reach) * n))
    lo = min((j for j, _ in p.support), default=0)
    hi = max((j for j, _ in p.support), default=0)
    return list(range(lo - reach, hi + reach + 1))


def minimal_cycle_period(cycle: tuple) -> int:
    """Smallest ``k`` dividing ``len(cycle)`` with ``cycle`` invariant under rotation by ``k``."""
    n = len(cycle)
    for k in range(1, n + 1):
        if n % k == 0 and all(cycle[j] == cycle[(j + k) % n] for j in range(n)):
            return k
    return n


def primitive_cycle(cycle: tuple) -> tuple:
    return cycle[:minimal_cycle_period(cycle)]


def least_rotation(cycle: tuple, key: Callable[[Any], Any]) -> tuple:
    if not cycle:
        return cycle
    rots = [cycle[r:] + cycle[:r] for r in range(len(cycle))]
    return min(rots, key=lambda c: tuple(key(s) for s in c))


def absorb_prefix(prefix: tuple, cycle: tuple) -> tuple[tuple, tuple]:
    """Shorten the prefix while its last slot equals the cycle's last slot.

    ``p1..pk, (c0..cL-1)*`` with ``pk == cL-1`` is the same sequence as
    ``p1..pk-1, (cL-1 c0..cL-2)*``.
    """
    prefix, cycle = list(prefix), list(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        prefix.pop()
        cycle = [cycle[-1]] + cycle[:-1]
    return tuple(prefix), tuple(cycle)
