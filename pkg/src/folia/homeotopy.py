"""Homeotopy groups of class-F surfaces.

The shift homomorphism records how a leaf-preserving homeomorphism moves
the Z-indexed upper intervals of the root strip.  Its image is trivial
unless the root pattern is Z-periodic, in which case it is ``kZ`` for the
minimal period ``k`` of the (canonicalized) subtree family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .groups import ONE, GroupExpr, Prod, Wr
from .patterns import Fin, IntCyc, IntSup, map_slots, minimal_cycle_period
from .surface import SurfaceTree, canonicalize


@dataclass(frozen=True)
class Trivial:
    def __str__(self) -> str:
        return 'trivial'


@dataclass(frozen=True)
class Period:
    k: int

    def __str__(self) -> str:
        return f'period {self.k}'


EtaImage = Union[Trivial, Period]


def _canon_cycle(p: IntCyc) -> tuple:
    return tuple(None if s is None else canonicalize(s) for s in p.cycle)


def eta_image(tree: SurfaceTree) -> EtaImage:
    p = tree.children
    if isinstance(p, IntCyc):
        return Period(minimal_cycle_period(_canon_cycle(p)))
    if isinstance(p, IntSup) and not p.support:
        return Period(1)
    # no nonzero shift fixes a finite nonempty support; other index sets have no shifts
    return Trivial()


def _slot_group(s):
    return None if s is None else compute_group(s)


def compute_group(tree: SurfaceTree) -> GroupExpr:
    """Representation of the homeotopy group of ``tree``, unnormalized.

    Shift image ``kZ``: the product of the groups of the first ``k`` slots
    of the cycle, wreath Z (with no product wrapper when ``k == 1``).
    Trivial shift image: the product over the root pattern, each slot
    replaced by its group; a strip with no upper intervals gives One.
    """
    eta = eta_image(tree)
    p = tree.children
    if isinstance(eta, Period):
        cycle = p.cycle if isinstance(p, IntCyc) else (None,)
        blocks = [ONE if s is None else compute_group(s) for s in cycle[:eta.k]]
        if len(blocks) == 1:
            return Wr(blocks[0])
        return Wr(Prod(Fin(tuple(blocks))))
    if isinstance(p, Fin) and not p.slots:
        return ONE
    return Prod(map_slots(p, _slot_group))
