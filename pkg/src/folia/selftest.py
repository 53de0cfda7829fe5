"""Randomized consistency checks behind ``folia selftest``."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from . import elements as el
from .groups import ONE, Prod, Wr, normalize, realize
from .homeotopy import compute_group
from .patterns import Fin, IntCyc
from .randgen import random_fin_tree, random_group, random_tree
from .surface import SurfaceTree, canonicalize, graph_diameter, reduce
from .textio import (
    from_json, parse_element, parse_group, parse_surface, print_element,
    print_group, print_surface, to_json,
)

SHAPES = {
    'Z': Wr(ONE),
    '(wr Z)': Wr(Wr(ONE)),
    '(x Z (wr Z))': Prod(Fin((Wr(ONE), Wr(Wr(ONE))))),
    '(wr (x Z 1))': Wr(Prod(Fin((Wr(ONE), ONE)))),
}


@dataclass
class CheckResult:
    name: str
    cases: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _fin_bfs_diameter(tree) -> int:
    adj: list[list[int]] = []

    def add(t) -> int:
        v = len(adj)
        adj.append([])
        for s in t.children.slots:
            if s is not None:
                c = add(s)
                adj[v].append(c)
                adj[c].append(v)
        return v

    add(tree)
    best = 0
    for src in range(len(adj)):
        dist = {src: 0}
        q = deque([src])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        best = max(best, max(dist.values()))
    return best


def run_checks(seed: int = 0, iters: int = 200) -> list[CheckResult]:
    rng = random.Random(seed)
    results = []

    def check(name, n, fn):
        bad = sum(0 if fn() else 1 for _ in range(n))
        results.append(CheckResult(name, n, bad))

    def canon_idempotent():
        t = random_tree(rng)
        c = canonicalize(t)
        return canonicalize(c) == c and normalize(compute_group(c)) == normalize(compute_group(t))

    def reduce_invariant():
        t = random_tree(rng)
        return normalize(compute_group(reduce(t))) == normalize(compute_group(t))

    def round_trip():
        e = random_group(rng, 5)
        return normalize(compute_group(realize(e))) == normalize(e)

    def diameter():
        t = random_fin_tree(rng, 4)
        return graph_diameter(t) == _fin_bfs_diameter(t)

    def text_io():
        t = random_tree(rng)
        e = random_group(rng, 4)
        return (parse_surface(print_surface(t)) == t and parse_group(print_group(e)) == e
                and from_json(to_json(t)) == t and from_json(to_json(e)) == e)

    shapes = list(SHAPES.values())

    def axioms():
        shape = rng.choice(shapes)
        a, b, c = (el.random_element(shape, 3, rng.random()) for _ in range(3))
        m = el.multiply
        unit = el.identity(shape)
        return (m(shape, m(shape, a, b), c) == m(shape, a, m(shape, b, c))
                and m(shape, a, unit) == a == m(shape, unit, a)
                and m(shape, a, el.inverse(shape, a)) == unit
                and parse_element(print_element(a), shape) == a)

    def transport():
        k = rng.randint(1, 3)
        inner = random_group(rng, 2)
        block = inner if k == 1 else Prod(Fin(tuple(random_group(rng, 2) for _ in range(k))))
        shape = Wr(block)
        a, b = (el.random_element(shape, 3, rng.random()) for _ in range(2))
        return el.transport_compose(k, block, a, b) == el.multiply(shape, a, b)

    def periodic_repeat():
        t = random_tree(rng)
        if not isinstance(t.children, IntCyc):
            return True
        rep = SurfaceTree(IntCyc(t.children.cycle * rng.randint(2, 3)))
        return normalize(compute_group(rep)) == normalize(compute_group(t))

    check('canonicalize', iters, canon_idempotent)
    check('reduce', iters, reduce_invariant)
    check('cycle-repeat', iters, periodic_repeat)
    check('realize-roundtrip', iters, round_trip)
    check('diameter-bfs', iters, diameter)
    check('text-io', iters, text_io)
    check('group-axioms', iters, axioms)
    check('transport-oracle', iters, transport)
    return results
