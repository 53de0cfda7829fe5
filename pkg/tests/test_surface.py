import random
from math import lcm

import pytest
from hypothesis import given, strategies as st

from folia.patterns import Fin, IntCyc, IntSup, Nat, Neg, slot_at
from folia.randgen import random_tree
from folia.surface import (
    LEAF, SurfaceTree, canonicalize, graph_diameter, is_canonical, is_reduced,
    minimal_period, reduce, reduce_with_count, trees_equivalent, validate,
)
from folia.textio import parse_surface, parse_surface_unchecked

from conftest import bfs_diameter, expand_graph, trees

A = LEAF


def S(text):
    return parse_surface(text)


def codes(tree):
    return [i.code for i in validate(tree)]


class TestValidate:
    def test_trivial_strip(self):
        assert codes(S('(strip (fin))')) == []

    def test_empty_cycle(self):
        tree, issues = parse_surface_unchecked('(strip (int (cyc)))')
        assert codes(tree) == ['EmptyCycle']
        assert [i.code for i in issues] == ['EmptyCycle']

    def test_nat_with_leaf_cycle(self):
        assert codes(S('(strip (nat (pre) (cyc _ (strip (fin)))))')) == []

    def test_support_problems(self):
        bad = SurfaceTree(IntSup(((1, None), (2, A), (2, A))))
        assert codes(bad) == ['EmptySupportSlot', 'DuplicateSupportKey']

    def test_nested_issue_has_path(self):
        bad = SurfaceTree(Fin((None, SurfaceTree(Nat((), ())))))
        issue, = validate(bad)
        assert issue.code == 'EmptyCycle' and issue.path == (1,)


class TestCanonicalize:
    def test_int_cycle_primitive_and_least_rotation(self):
        t = SurfaceTree(IntCyc((A, None, A, None)))
        assert canonicalize(t) == SurfaceTree(IntCyc((None, A)))

    def test_nat_prefix_absorbed(self):
        t = SurfaceTree(Nat((A,), (A,)))
        assert canonicalize(t) == SurfaceTree(Nat((), (A,)))

    def test_support_shifted_to_zero(self):
        assert canonicalize(SurfaceTree(IntSup(((5, A),)))) == SurfaceTree(IntSup(((0, A),)))

    def test_empty_support_becomes_empty_cycle(self):
        assert canonicalize(SurfaceTree(IntSup(()))) == SurfaceTree(IntCyc((None,)))

    def test_prefix_absorption_rotates_cycle(self):
        B = SurfaceTree(Fin((None,)))
        # A, B, (A B)* == (A B)* starting one step earlier; the whole prefix goes
        t = SurfaceTree(Nat((A, B), (A, B)))
        assert canonicalize(t) == SurfaceTree(Nat((), (A, B)))
        t = SurfaceTree(Nat((B,), (A, B)))
        assert canonicalize(t) == SurfaceTree(Nat((), (B, A)))

    def test_fin_order_kept(self):
        t = SurfaceTree(Fin((A, None)))
        assert canonicalize(t) == t

    @given(trees)
    def test_idempotent(self, t):
        c = canonicalize(t)
        assert canonicalize(c) == c
        assert is_canonical(c)

    @given(trees, st.integers(0, 10))
    def test_rotation_invariance(self, t, r):
        cyc = (t, None, LEAF)
        k = r % len(cyc)
        a = SurfaceTree(IntCyc(cyc))
        b = SurfaceTree(IntCyc(cyc[k:] + cyc[:k]))
        assert canonicalize(a) == canonicalize(b)


def _same(a, b):
    """Equality of the described surfaces, by evaluating slots index by index."""
    if a is None or b is None:
        return a is None and b is None
    p, q = a.children, b.children
    # an empty support and an all-empty cycle describe the same strip
    if isinstance(p, IntSup) and not p.support:
        p = IntCyc((None,))
    if isinstance(q, IntSup) and not q.support:
        q = IntCyc((None,))
    if type(p) is not type(q):
        return False
    if isinstance(p, Fin):
        return len(p.slots) == len(q.slots) and all(map(_same, p.slots, q.slots))
    if isinstance(p, (Nat, Neg)):
        sign = 1 if isinstance(p, Nat) else -1
        n = max(len(p.prefix), len(q.prefix)) + lcm(len(p.cycle), len(q.cycle))
        return all(_same(slot_at(p, sign * i), slot_at(q, sign * i)) for i in range(1, n + 1))
    if isinstance(p, IntCyc):
        n = lcm(len(p.cycle), len(q.cycle))
        return any(all(_same(slot_at(p, i + s), slot_at(q, i)) for i in range(n))
                   for s in range(len(p.cycle)))
    if len(p.support) != len(q.support):
        return False
    shift = min(k for k, _ in p.support) - min(k for k, _ in q.support)
    dq = dict(q.support)
    return all(k - shift in dq and _same(s, dq[k - shift]) for k, s in p.support)


class TestEquivalence:
    def test_shift(self):
        assert trees_equivalent(SurfaceTree(IntCyc((A, None))), SurfaceTree(IntCyc((None, A))))

    def test_nat_is_rigid(self):
        assert not trees_equivalent(SurfaceTree(Nat((A,), (None,))), SurfaceTree(Nat((), (None,))))

    def test_reflexive(self):
        assert trees_equivalent(LEAF, LEAF)

    @given(trees, trees)
    def test_agrees_with_slotwise_oracle(self, a, b):
        assert trees_equivalent(a, b) == _same(a, b)

    def test_agrees_with_oracle_on_near_misses(self):
        # random pairs are rarely equivalent; perturb one tree instead
        rng = random.Random(5)
        hits = 0
        for _ in range(400):
            a = random_tree(rng, 2)
            p = a.children
            if isinstance(p, IntCyc):
                k = rng.randrange(len(p.cycle))
                b = SurfaceTree(IntCyc(p.cycle[k:] + p.cycle[:k] + (p.cycle[k:] + p.cycle[:k]) * rng.randint(0, 1)))
            elif isinstance(p, (Nat, Neg)):
                b = SurfaceTree(type(p)(p.prefix + p.cycle, p.cycle))
            else:
                b = random_tree(rng, 2)
            hits += trees_equivalent(a, b)
            assert trees_equivalent(a, b) == _same(a, b)
        assert hits > 50

    def test_equivalence_relation(self):
        rng = random.Random(11)
        for _ in range(1000):
            pool = [random_tree(rng, 2) for _ in range(2)]
            a, b, c = (rng.choice(pool) if rng.random() < 0.5 else random_tree(rng, 2) for _ in range(3))
            assert trees_equivalent(a, a)
            assert trees_equivalent(a, b) == trees_equivalent(b, a)
            if trees_equivalent(a, b) and trees_equivalent(b, c):
                assert trees_equivalent(a, c)


def _period_oracle(cycle):
    # least rotation amount reproducing the sequence, with no divisibility assumption
    return next(k for k in range(1, len(cycle) + 1) if cycle[k:] + cycle[:k] == cycle)


class TestMinimalPeriod:
    B = SurfaceTree(Fin((None,)))

    @pytest.mark.parametrize('cycle, expected', [
        ((A, B, A, B), 2),
        ((None,), 1),
        ((A, A, A), 1),
        ((A, B, None), 3),
    ])
    def test_examples(self, cycle, expected):
        assert minimal_period(IntCyc(cycle)) == expected == _period_oracle(cycle)

    @given(st.lists(st.sampled_from([None, A, B]), min_size=1, max_size=8), st.integers(1, 3))
    def test_repetition_and_oracle(self, cycle, m):
        cycle = tuple(cycle)
        assert minimal_period(IntCyc(cycle)) == _period_oracle(cycle)
        assert minimal_period(IntCyc(cycle * m)) == minimal_period(IntCyc(cycle))


class TestDiameter:
    def test_single_strip(self):
        assert graph_diameter(LEAF) == 0

    def test_two_leaves(self):
        assert graph_diameter(S('(strip (fin (strip (fin)) (strip (fin))))')) == 2

    def test_figure_three_like(self):
        t = S('(strip (fin (strip (fin (strip (fin)))) (strip (fin))))')
        assert graph_diameter(t) == 3 == bfs_diameter(expand_graph(t))

    def test_cycle_counts_twice(self):
        t = S('(strip (int (cyc (strip (fin (strip (fin)))))))')
        assert graph_diameter(t) == 4

    @given(trees)
    def test_matches_doubled_expansion(self, t):
        # two instances of every cycle suffice: a path visits at most two branches per strip
        assert graph_diameter(t) == bfs_diameter(expand_graph(t, copies=2))
        assert graph_diameter(t) == bfs_diameter(expand_graph(t, copies=3))


def _multiplicities(t):
    from folia.patterns import instances
    for s, m in instances(t.children):
        yield m
        if s is not None:
            yield from _multiplicities(s)


class TestReduce:
    def test_is_reduced_examples(self):
        assert not is_reduced(S('(strip (fin (strip (fin))))'))
        assert is_reduced(S('(strip (fin (strip (fin)) (strip (fin))))'))
        assert is_reduced(LEAF)

    def test_one_splice(self):
        assert reduce(S('(strip (fin (strip (fin))))')) == LEAF

    def test_two_splices(self):
        t = S('(strip (fin (strip (fin (strip (int (cyc _)))))))')
        assert reduce_with_count(t) == (S('(strip (int (cyc _)))'), 2)

    def test_already_reduced(self):
        t = S('(strip (fin (strip (fin)) (strip (fin))))')
        assert reduce(t) == t

    def test_unary_with_empty_slot_is_reduced(self):
        assert is_reduced(S('(strip (fin _))'))

    @given(trees)
    def test_properties(self, t):
        r, n = reduce_with_count(t)
        assert is_reduced(r)
        assert reduce(r) == r
        # a spliced strip may sit in a cycle slot; a path meets at most two of its copies
        assert graph_diameter(t) - 2 * n <= graph_diameter(r) <= graph_diameter(t)
        if all(m == 1 for m in _multiplicities(t)):
            assert graph_diameter(t) - n <= graph_diameter(r)
