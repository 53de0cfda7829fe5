"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line through the ``criterion`` fixture; the
lines are printed in a summary section at the end of the run.
"""

import itertools
import random

from folia.elements import (
    check_element, identity, include_i, inverse, kernel_part, multiply,
    project_pi, random_element, section_s, transport_compose,
)
from folia.groups import ONE, Z, Prod, Wr, fin, height, normalize, realize
from folia.homeotopy import compute_group
from folia.patterns import Fin, IntCyc, IntSup, Nat, Neg, map_slots
from folia.randgen import random_group, random_tree
from folia.surface import SurfaceTree, canonicalize, graph_diameter, reduce
from folia.textio import (
    from_json, parse_element, parse_group, parse_surface, print_element,
    print_group, print_surface, to_json,
)

from conftest import bfs_diameter, expand_graph


def test_z_spellings(criterion):
    criterion('1. four spellings of Z share one normal form')
    spellings = [parse_group('Z'), Wr(ONE), fin(ONE, Wr(ONE)), Wr(fin(ONE, ONE, ONE))]
    forms = {normalize(e) for e in spellings}
    assert forms == {Wr(ONE)}
    assert [print_group(normalize(e)) for e in spellings] == ['Z'] * 4
    # padding with trivial factors, or widening the trivial block, changes nothing
    for n, m in itertools.product(range(4), range(1, 4)):
        assert normalize(fin(*[ONE] * n, Wr(fin(*[ONE] * m)) if m > 1 else Z)) == Z


def test_height_table(criterion):
    criterion('2. height table 0 1 1 2 2 3')
    exprs = [ONE, fin(ONE, ONE), Wr(ONE), Wr(fin(ONE, ONE)), fin(Wr(ONE), Wr(ONE)),
             fin(Wr(fin(ONE, ONE)), Wr(ONE))]
    assert [height(e) for e in exprs] == [0, 1, 1, 2, 2, 3]


def test_base_cases(criterion):
    criterion('3. base cases: rigid patterns give 1, empty Z-cycle gives Z')
    rigid = ['(strip (fin))'] + [f'(strip (fin {" ".join("_" * n)}))' for n in range(1, 6)] + [
        '(strip (nat (pre) (cyc _)))', '(strip (nat (pre _ _) (cyc _ _)))',
        '(strip (neg (pre) (cyc _)))', '(strip (neg (pre _) (cyc _ _ _)))',
    ]
    for text in rigid:
        assert normalize(compute_group(parse_surface(text))) == ONE, text
    for n in range(1, 5):
        g = normalize(compute_group(parse_surface(f'(strip (int (cyc {" ".join("_" * n)})))')))
        assert print_group(g) == 'Z'


def test_realization_round_trip(criterion):
    criterion('4. 500 random groups of height <= 5 survive realize then compute_group')
    rng = random.Random(2024)
    heights = set()
    for _ in range(500):
        e = random_group(rng, 5)
        heights.add(height(e))
        assert height(e) <= 5
        assert normalize(compute_group(realize(e))) == normalize(e)
    assert max(heights) == 5


def _repeat_cycles(t, m):
    """Repeat every Z-periodic cycle in the tree m times."""
    p = map_slots(t.children, lambda s: None if s is None else _repeat_cycles(s, m))
    if isinstance(p, IntCyc):
        p = IntCyc(p.cycle * m)
    return SurfaceTree(p)


def test_structure_invariance(criterion):
    criterion('5. 200 random trees: group invariant under canonicalize, reduce, cycle repetition')
    rng = random.Random(7)
    for _ in range(200):
        t = random_tree(rng, 3)
        g = normalize(compute_group(t))
        assert normalize(compute_group(canonicalize(t))) == g
        assert normalize(compute_group(reduce(t))) == g
        for m in (2, 3):
            assert normalize(compute_group(_repeat_cycles(t, m))) == g
            wrapped = SurfaceTree(IntCyc((t, None)))
            assert normalize(compute_group(SurfaceTree(IntCyc((t, None) * m)))) == \
                normalize(compute_group(wrapped))


AXIOM_SHAPES = [
    Z,
    Wr(Z),
    fin(Z, Wr(Z)),
    Wr(fin(Z, ONE)),
    Prod(Nat((None,), (Z, Wr(Z)))),
    Prod(IntCyc((Z, None))),
    Prod(Neg((Z,), (Wr(ONE),))),
    Wr(Wr(Z)),
]


def test_wreath_algebra(criterion):
    criterion('6. group axioms on 1000 triples per shape, exact sequence witnessed')
    rng = random.Random(6)
    for shape in AXIOM_SHAPES:
        assert height(shape) <= 3
        unit = identity(shape)
        for _ in range(1000):
            a, b, c = (random_element(shape, 3, rng.getrandbits(64)) for _ in range(3))
            assert multiply(shape, multiply(shape, a, b), c) == multiply(shape, a, multiply(shape, b, c))
            assert multiply(shape, a, unit) == a == multiply(shape, unit, a)
            ai = inverse(shape, a)
            assert multiply(shape, a, ai) == unit == multiply(shape, ai, a)
            check_element(shape, multiply(shape, a, b))
    for shape in (Z, Wr(Z), Wr(fin(Z, ONE)), Wr(Wr(Z))):
        for _ in range(1000):
            a, b = (random_element(shape, 3, rng.getrandbits(64)) for _ in range(2))
            n = rng.randint(-20, 20)
            assert project_pi(shape, section_s(shape, n)) == n
            assert project_pi(shape, multiply(shape, a, b)) == project_pi(shape, a) + project_pi(shape, b)
            # ker pi = im i: every a factors as i(phi) * s(pi(a)), and i(phi) has pi = 0
            k = multiply(shape, a, section_s(shape, -project_pi(shape, a)))
            phi = kernel_part(shape, k)
            assert project_pi(shape, include_i(shape, phi)) == 0
            assert multiply(shape, include_i(shape, phi), section_s(shape, project_pi(shape, a))) == a


TRANSPORT_BLOCKS = {
    1: [Z, Wr(Z), ONE],
    2: [fin(Z, ONE), fin(Wr(Z), Z)],
    3: [fin(Z, ONE, Wr(fin(Z, Z))), fin(Z, Z, Z)],
}


def test_transport_oracle(criterion):
    criterion('7. transport_compose equals multiply on 1000 pairs for each k in 1..3')
    rng = random.Random(77)
    for k, blocks in TRANSPORT_BLOCKS.items():
        for i in range(1000):
            block = blocks[i % len(blocks)]
            shape = Wr(block)
            a, b = (random_element(shape, 3, rng.getrandbits(64)) for _ in range(2))
            assert transport_compose(k, block, a, b) == multiply(shape, a, b)


def _plane_trees(n):
    """All ordered rooted trees with exactly n vertices."""
    if n == 1:
        yield SurfaceTree(Fin(()))
        return
    for forest in _forests(n - 1):
        yield SurfaceTree(Fin(forest))


def _forests(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for head in _plane_trees(first):
            for rest in _forests(n - first):
                yield (head,) + rest


def test_diameter_exhaustive(criterion):
    criterion('8. diameter matches BFS on every plane tree with <= 8 vertices')
    counts, seen = [], set()
    for n in range(1, 9):
        level = list(_plane_trees(n))
        counts.append(len(level))
        for t in level:
            d = graph_diameter(t)
            assert d == bfs_diameter(expand_graph(t))
            seen.add(d)
    # Catalan numbers C(n-1): a full enumeration
    assert counts == [1, 1, 2, 5, 14, 42, 132, 429]
    assert seen == set(range(8))
    assert graph_diameter(parse_surface('(strip (fin (strip (fin (strip (fin)))) (strip (fin))))')) == 3


ELEMENT_SHAPES = [Z, Wr(Z), fin(Z, Wr(Z)), Wr(fin(Z, ONE, Wr(Z))), Prod(Nat((), (Z,))), Prod(IntSup(((2, Z),)))]


def test_io_round_trips(criterion):
    criterion('9. parse/print and JSON round trips on 500 trees, expressions and elements')
    rng = random.Random(99)
    for _ in range(500):
        t = random_tree(rng, 3)
        assert parse_surface(print_surface(t)) == t
        assert from_json(to_json(t)) == t

        e = random_group(rng, 5)
        assert parse_group(print_group(e)) == e
        assert from_json(to_json(e)) == e
        nf = normalize(e)
        assert normalize(parse_group(print_group(nf))) == nf
        assert from_json(to_json(nf)) == nf

        shape = rng.choice(ELEMENT_SHAPES)
        x = random_element(shape, 3, rng.getrandbits(64))
        assert parse_element(print_element(x), shape) == x
        assert from_json(to_json(x)) == x

