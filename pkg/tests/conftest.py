from collections import deque

import pytest
from hypothesis import settings, strategies as st

from folia.groups import ONE, Prod, Wr
from folia.patterns import Fin, IntCyc, IntSup, Nat, Neg
from folia.surface import LEAF, SurfaceTree

settings.register_profile('default', max_examples=150, deadline=None)
settings.load_profile('default')


def _patterns(slot, filled):
    def sup(d):
        return IntSup(tuple(sorted(d.items())))
    return st.one_of(
        st.lists(slot, max_size=3).map(lambda xs: Fin(tuple(xs))),
        st.builds(lambda p, c: Nat(tuple(p), tuple(c)),
                  st.lists(slot, max_size=2), st.lists(slot, min_size=1, max_size=3)),
        st.builds(lambda p, c: Neg(tuple(p), tuple(c)),
                  st.lists(slot, max_size=2), st.lists(slot, min_size=1, max_size=3)),
        st.lists(slot, min_size=1, max_size=4).map(lambda c: IntCyc(tuple(c))),
        st.dictionaries(st.integers(-5, 5), filled, max_size=3).map(sup),
    )


def _tree_extend(children):
    return _patterns(st.none() | children, children).map(SurfaceTree)


trees = st.recursive(st.just(LEAF), _tree_extend, max_leaves=10)


def _group_extend(children):
    return st.one_of(children.map(Wr), _patterns(st.none() | children, children).map(Prod))


groups = st.recursive(st.just(ONE), _group_extend, max_leaves=8)


def bfs_diameter(adj):
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


def expand_graph(tree, copies=2):
    """Explicit strip graph, instantiating each cycle ``copies`` times."""
    adj = []

    def kids(p):
        if isinstance(p, Fin):
            return list(p.slots)
        if isinstance(p, (Nat, Neg)):
            return list(p.prefix) + list(p.cycle) * copies
        if isinstance(p, IntCyc):
            return list(p.cycle) * copies
        return [s for _, s in p.support]

    def add(t):
        v = len(adj)
        adj.append([])
        for s in kids(t.children):
            if s is not None:
                c = add(s)
                adj[v].append(c)
                adj[c].append(v)
        return v

    add(tree)
    return adj


# -- acceptance reporting -------------------------------------------------

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with the criterion label, then assert."""
    state = {}

    def record(label):
        state['label'] = label
    yield record
    if 'label' in state:
        failed = request.node.rep_call.failed if hasattr(request.node, 'rep_call') else True
        ACCEPTANCE[state['label']] = 'FAIL' if failed else 'PASS'


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == 'call':
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section('acceptance criteria')
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split('.')[0])):
        terminalreporter.write_line(f'{ACCEPTANCE[label]}  {label}')
