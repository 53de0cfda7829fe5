"""SVG strip diagrams.

Each drawn strip is a rectangle; the strips glued along its upper
boundary intervals sit directly above it, left to right in index order.
Infinite families are cut after ``repeat`` periods and marked with an
ellipsis on the open side(s); subtrees below ``depth`` levels are replaced
by a marker.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .patterns import Fin, IntCyc, Nat, Neg
from .surface import SurfaceTree

ELLIPSIS = '⋯'


@dataclass(frozen=True)
class RenderConfig:
    repeat: int = 3
    depth: int = 4
    unit: float = 48.0      # width of one leaf strip
    height: float = 28.0    # height of every strip
    gap: float = 6.0

    def __post_init__(self):
        if self.repeat < 1 or self.depth < 1:
            raise ValueError('repeat and depth must be at least 1')


@dataclass
class _Box:
    # a drawn strip: sequence of items above it, each a _Box, 'empty' or 'more'
    items: list = field(default_factory=list)
    cut: bool = False       # deeper strips exist but are not drawn
    width: float = 0.0


def _row(tree: SurfaceTree, cfg: RenderConfig) -> list:
    p = tree.children
    if isinstance(p, Fin):
        return list(p.slots)
    if isinstance(p, Nat):
        return list(p.prefix) + list(p.cycle) * cfg.repeat + ['more']
    if isinstance(p, Neg):
        return ['more'] + list(reversed(list(p.prefix) + list(p.cycle) * cfg.repeat))
    if isinstance(p, IntCyc):
        return ['more'] + list(p.cycle) * cfg.repeat + ['more']
    return ['more'] + [s for _, s in sorted(p.support, key=lambda e: e[0])] + ['more']


def _layout(tree: SurfaceTree, cfg: RenderConfig, level: int) -> _Box:
    box = _Box()
    row = _row(tree, cfg)
    if level + 1 >= cfg.depth:
        box.cut = any(isinstance(s, SurfaceTree) for s in row)
        box.width = cfg.unit
        return box
    w = 0.0
    for s in row:
        if isinstance(s, SurfaceTree):
            child = _layout(s, cfg, level + 1)
            box.items.append(child)
            w += child.width
        else:
            box.items.append('empty' if s is None else 'more')
            w += cfg.unit / 2
    w += cfg.gap * max(len(row) - 1, 0)
    box.width = max(cfg.unit, w)
    return box


def _levels(box: _Box) -> int:
    return 1 + max((_levels(c) for c in box.items if isinstance(c, _Box)), default=0)


def render_svg(tree: SurfaceTree, cfg: RenderConfig = RenderConfig()) -> str:
    root = _layout(tree, cfg, 0)
    nlev = _levels(root)
    margin = cfg.gap * 2
    width = root.width + 2 * margin
    height = nlev * cfg.height + 2 * margin
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.2f}" height="{height:.2f}" viewBox="0 0 {width:.2f} {height:.2f}">',
        '<style>.strip{fill:#dde8f3;stroke:#24476b;stroke-width:1}'
        '.interval{stroke:#b03030;stroke-width:2}'
        '.elision{font:14px sans-serif;fill:#555;text-anchor:middle}</style>',
    ]

    def draw(box: _Box, x: float, level: int):
        y = margin + (nlev - 1 - level) * cfg.height
        out.append(f'<rect class="strip" x="{x:.2f}" y="{y:.2f}" '
                   f'width="{box.width:.2f}" height="{cfg.height:.2f}"/>')
        if box.cut:
            out.append(f'<text class="elision" x="{x + box.width / 2:.2f}" '
                       f'y="{y - 3:.2f}">{ELLIPSIS}</text>')
        cx = x
        for item in box.items:
            if isinstance(item, _Box):
                draw(item, cx, level + 1)
                cx += item.width
            elif item == 'empty':
                # free boundary interval on the upper edge
                out.append(f'<line class="interval" x1="{cx + cfg.unit / 8:.2f}" y1="{y:.2f}" '
                           f'x2="{cx + 3 * cfg.unit / 8:.2f}" y2="{y:.2f}"/>')
                cx += cfg.unit / 2
            else:
                out.append(f'<text class="elision" x="{cx + cfg.unit / 4:.2f}" '
                           f'y="{y - 3:.2f}">{ELLIPSIS}</text>')
                cx += cfg.unit / 2
            cx += cfg.gap

    draw(root, margin, 0)
    out.append('</svg>')
    return '\n'.join(out) + '\n'


def drawn_strip_count(tree: SurfaceTree, cfg: RenderConfig = RenderConfig()) -> int:
    """Number of strips in the tree truncated the way ``render_svg`` truncates it."""
    def count(t: SurfaceTree, level: int) -> int:
        if level + 1 >= cfg.depth:
            return 1
        p = t.children
        if isinstance(p, Fin):
            slots, times = list(p.slots), 1
        elif isinstance(p, (Nat, Neg)):
            return 1 + sum(count(s, level + 1) for s in p.prefix if s is not None) \
                + cfg.repeat * sum(count(s, level + 1) for s in p.cycle if s is not None)
        elif isinstance(p, IntCyc):
            slots, times = list(p.cycle), cfg.repeat
        else:
            slots, times = [s for _, s in p.support], 1
        return 1 + times * sum(count(s, level + 1) for s in slots if s is not None)
    return count(tree, 0)
