"""Striped surfaces of class F as finitely described rooted trees of strips.

Every strip has a single lower boundary interval (glued to its parent, or
free for the root) and an upper boundary collection given by an index
pattern.  A slot of the pattern is either empty (a free boundary interval)
or the subtree glued along that interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .patterns import (
    OMEGA, Fin, IntCyc, IntSup, Nat, Neg, Pattern, TAG_ORDER,
    absorb_prefix, instances, least_rotation, map_slots,
    minimal_cycle_period, primitive_cycle, written_slots,
)


@dataclass(frozen=True)
class SurfaceTree:
    children: Pattern

    def __repr__(self) -> str:
        from .textio import print_surface
        return f'SurfaceTree({print_surface(self)!r})'


Slot = Optional[SurfaceTree]

LEAF = SurfaceTree(Fin(()))


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class Issue:
    code: str       # EmptyCycle | EmptySupportSlot | DuplicateSupportKey | BadNode
    path: tuple     # slot positions from the root
    message: str

    def __str__(self) -> str:
        where = '/'.join(map(str, self.path)) or 'root'
        return f'{self.code} at {where}: {self.message}'


def pattern_issues(p) -> list[tuple[str, str]]:
    """Invariant violations of a single pattern, as ``(code, message)`` pairs."""
    out = []
    if isinstance(p, (Nat, Neg, IntCyc)):
        if not p.cycle:
            out.append(('EmptyCycle', 'cycle must list at least one slot'))
    elif isinstance(p, IntSup):
        seen = set()
        for k, s in p.support:
            if s is None:
                out.append(('EmptySupportSlot', f'support index {k} has an empty slot'))
            if k in seen:
                out.append(('DuplicateSupportKey', f'support index {k} listed twice'))
            seen.add(k)
    elif not isinstance(p, Fin):
        out.append(('BadNode', f'unknown pattern {type(p).__name__}'))
    return out


def validate(tree) -> list[Issue]:
    """Return every invariant violation found in ``tree`` (empty when valid)."""
    issues: list[Issue] = []

    def walk(node, path):
        if not isinstance(node, SurfaceTree):
            issues.append(Issue('BadNode', path, f'expected a strip, got {type(node).__name__}'))
            return
        found = pattern_issues(node.children)
        issues.extend(Issue(code, path, msg) for code, msg in found)
        if any(code == 'BadNode' for code, _ in found):
            return
        for i, s in enumerate(written_slots(node.children)):
            if s is not None:
                walk(s, path + (i,))

    walk(tree, ())
    return issues


def check(tree) -> SurfaceTree:
    issues = validate(tree)
    if issues:
        raise SurfaceError('; '.join(map(str, issues)))
    return tree


# -- ordering and canonical forms -------------------------------------------

def slot_key(s: Slot) -> tuple:
    return (0,) if s is None else (1, tree_key(s))


@lru_cache(maxsize=None)
def tree_key(t: SurfaceTree) -> tuple:
    """Total order on trees: Fin < Nat < Neg < IntCyc < IntSup, then componentwise."""
    p = t.children
    tag = TAG_ORDER[type(p)]
    if isinstance(p, Fin):
        return (tag, tuple(map(slot_key, p.slots)))
    if isinstance(p, (Nat, Neg)):
        return (tag, tuple(map(slot_key, p.prefix)), tuple(map(slot_key, p.cycle)))
    if isinstance(p, IntCyc):
        return (tag, tuple(map(slot_key, p.cycle)))
    return (tag, tuple((k, slot_key(s)) for k, s in p.support))


def _canon_slot(s: Slot) -> Slot:
    return None if s is None else canonicalize(s)


@lru_cache(maxsize=None)
def canonicalize(tree: SurfaceTree) -> SurfaceTree:
    p = map_slots(tree.children, _canon_slot)
    if isinstance(p, (Nat, Neg)):
        pre, cyc = absorb_prefix(p.prefix, primitive_cycle(p.cycle))
        p = type(p)(pre, cyc)
    elif isinstance(p, IntCyc):
        p = IntCyc(least_rotation(primitive_cycle(p.cycle), slot_key))
    elif isinstance(p, IntSup):
        if not p.support:
            p = IntCyc((None,))
        else:
            lo = min(k for k, _ in p.support)
            p = IntSup(tuple(sorted(((k - lo, s) for k, s in p.support), key=lambda e: e[0])))
    return SurfaceTree(p)


def is_canonical(tree: SurfaceTree) -> bool:
    return canonicalize(tree) == tree


def trees_equivalent(a: SurfaceTree, b: SurfaceTree) -> bool:
    return canonicalize(a) == canonicalize(b)


def minimal_period(p: IntCyc) -> int:
    """Least shift ``k`` with slot ``j`` equal to slot ``j + k`` for every ``j``."""
    return minimal_cycle_period(p.cycle)


# -- graph statistics -------------------------------------------------------

@lru_cache(maxsize=None)
def _height_and_diameter(tree: SurfaceTree) -> tuple[int, int]:
    # longest downward path and diameter, in edges
    best = second = 0
    diam = 0
    for s, mult in instances(tree.children):
        if s is None:
            continue
        h, d = _height_and_diameter(s)
        diam = max(diam, d)
        reach = h + 1
        # a cycle slot is instantiated countably often, so it fills both places
        copies = 2 if mult is OMEGA else 1
        for _ in range(copies):
            if reach > best:
                best, second = reach, best
            elif reach > second:
                second = reach
    return best, max(diam, best + second)


def graph_diameter(tree: SurfaceTree) -> int:
    return _height_and_diameter(tree)[1]


def depth(tree: SurfaceTree) -> int:
    """Syntactic nesting depth; a single strip has depth 0."""
    return max((1 + depth(s) for s in written_slots(tree.children) if s is not None), default=0)


def _is_unary(p: Pattern) -> bool:
    return isinstance(p, Fin) and len(p.slots) == 1 and p.slots[0] is not None


def is_reduced(tree: SurfaceTree) -> bool:
    p = tree.children
    if _is_unary(p):
        return False
    return all(s is None or is_reduced(s) for s in written_slots(p))


def reduce_with_count(tree: SurfaceTree) -> tuple[SurfaceTree, int]:
    """Splice out every strip whose upper boundary is exactly one glued interval.

    Returns the reduced tree and the number of splices performed.
    """
    count = 0

    def go(node: SurfaceTree) -> SurfaceTree:
        nonlocal count
        node = SurfaceTree(map_slots(node.children, lambda s: None if s is None else go(s)))
        if _is_unary(node.children):
            count += 1
            return node.children.slots[0]
        return node

    return go(tree), count


def reduce(tree: SurfaceTree) -> SurfaceTree:
    return reduce_with_count(tree)[0]


def vertex_count(tree: SurfaceTree) -> Optional[int]:
    """Number of strips, or None when some cycle instantiates a subtree infinitely often."""
    total = 1
    for s, mult in instances(tree.children):
        if s is None:
            continue
        if mult is OMEGA:
            return None
        sub = vertex_count(s)
        if sub is None:
            return None
        total += sub
    return total
