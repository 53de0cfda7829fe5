"""Text formats: the surface and group S-expression languages, element
literals, and a versioned JSON mirror of every core value.

Surface syntax::

    surface := "(" "strip" pattern ")"
    pattern := "(" "fin" slot* ")"
             | "(" "nat" "(" "pre" slot* ")" "(" "cyc" slot+ ")" ")"
             | "(" "neg" "(" "pre" slot* ")" "(" "cyc" slot+ ")" ")"
             | "(" "int" "(" "cyc" slot+ ")" ")"
             | "(" "int" "(" "sup" ("(" integer surface ")")* ")" ")"
    slot    := "_" | surface

Group syntax::

    group   := atom ["^" ("w" | integer)]
    atom    := "1" | "Z" | "(" "x" gslot gslot+ ")" | "(" "xpat" gpattern ")"
             | "(" "wr" group ")"

``gpattern`` is ``pattern`` with group slots.  ``A^w`` is a constant
N-indexed product of ``A`` and ``A^n`` the n-fold finite product; the
normal-form printer uses both.

Element literals: ``e``, ``(p (i elem) ...)``, ``(w ((j elem) ...) n)``;
a bare integer ``n`` is accepted for ``(w () n)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Callable

from .elements import (
    E, ProdElem, ShapeMismatch, WrElem, check_element, identity, is_identity,
)
from .groups import ONE, Prod, ProdNF, Wr, nf_key
from .homeotopy import Period, Trivial
from .patterns import OMEGA, Fin, IntCyc, IntSup, Nat, Neg, Pattern
from .surface import Issue, SurfaceError, SurfaceTree, pattern_issues

SCHEMA = 'folia/1'


class ParseError(ValueError):
    """Malformed input, positioned at a 1-based line and column."""

    def __init__(self, message: str, offset: int, line: int, col: int, expected: str = ''):
        self.offset, self.line, self.col, self.expected = offset, line, col, expected
        text = f'{line}:{col}: {message}'
        if expected:
            text += f' (expected {expected})'
        super().__init__(text)


class SchemaError(ValueError):
    pass


# -- S-expression reader ----------------------------------------------------

@dataclass
class Atom:
    text: str
    pos: int


@dataclass
class SList:
    items: list
    pos: int


class _Reader:
    def __init__(self, text: str):
        self.text = text

    def where(self, offset: int) -> tuple[int, int]:
        line = self.text.count('\n', 0, offset) + 1
        col = offset - (self.text.rfind('\n', 0, offset) + 1) + 1
        return line, col

    def error(self, message: str, offset: int, expected: str = '') -> ParseError:
        return ParseError(message, offset, *self.where(offset), expected)

    def tokens(self):
        text, i, n = self.text, 0, len(self.text)
        while i < n:
            c = text[i]
            if c.isspace():
                i += 1
            elif c == ';':
                while i < n and text[i] != '\n':
                    i += 1
            elif c in '()^':
                yield c, i
                i += 1
            else:
                j = i
                while j < n and not text[j].isspace() and text[j] not in '()^;':
                    j += 1
                yield text[i:j], i
                i = j

    def read(self):
        """Parse the whole text into a single datum."""
        stack: list[SList] = []
        top = []
        for tok, pos in self.tokens():
            if tok == '(':
                stack.append(SList([], pos))
            elif tok == ')':
                if not stack:
                    raise self.error('unbalanced ")"', pos)
                done = stack.pop()
                (stack[-1].items if stack else top).append(done)
            else:
                (stack[-1].items if stack else top).append(Atom(tok, pos))
        if stack:
            raise self.error('unclosed "("', stack[-1].pos, '")"')
        if not top:
            raise self.error('empty input', len(self.text), 'an expression')
        return top


def _head(node, reader: _Reader, *names: str) -> str:
    if not isinstance(node, SList) or not node.items or not isinstance(node.items[0], Atom):
        raise reader.error('malformed form', node.pos, ' or '.join(f'"({n} ...)"' for n in names))
    head = node.items[0].text
    if head not in names:
        raise reader.error(f'unexpected "{head}"', node.items[0].pos, ' or '.join(f'"{n}"' for n in names))
    return head


def _int(node, reader: _Reader) -> int:
    if isinstance(node, Atom):
        try:
            return int(node.text)
        except ValueError:
            pass
    raise reader.error('not an integer', node.pos, 'an integer')


def _single(reader: _Reader, data: list):
    if len(data) != 1:
        raise reader.error('trailing input', data[1].pos, 'end of input')
    return data[0]


def _pattern(node, reader: _Reader, slot: Callable, sup_entry: Callable) -> Pattern:
    kind = _head(node, reader, 'fin', 'nat', 'neg', 'int')
    args = node.items[1:]
    if kind == 'fin':
        return Fin(tuple(slot(a) for a in args))
    if kind in ('nat', 'neg'):
        if len(args) != 2:
            raise reader.error(f'"{kind}" takes a prefix and a cycle', node.pos, '"(pre ...)" "(cyc ...)"')
        _head(args[0], reader, 'pre')
        _head(args[1], reader, 'cyc')
        pre = tuple(slot(a) for a in args[0].items[1:])
        cyc = tuple(slot(a) for a in args[1].items[1:])
        return (Nat if kind == 'nat' else Neg)(pre, cyc)
    if len(args) != 1:
        raise reader.error('"int" takes one cycle or support list', node.pos, '"(cyc ...)" or "(sup ...)"')
    sub = _head(args[0], reader, 'cyc', 'sup')
    if sub == 'cyc':
        return IntCyc(tuple(slot(a) for a in args[0].items[1:]))
    return IntSup(tuple(sup_entry(a) for a in args[0].items[1:]))


def _pair(node, reader: _Reader) -> tuple:
    if not isinstance(node, SList) or len(node.items) != 2:
        raise reader.error('malformed entry', node.pos, '"(index value)"')
    return node.items[0], node.items[1]


# -- surfaces ---------------------------------------------------------------

def _surface(node, reader: _Reader, issues: list) -> SurfaceTree:
    _head(node, reader, 'strip')
    if len(node.items) != 2:
        raise reader.error('"strip" takes exactly one pattern', node.pos, '"(strip PATTERN)"')

    def slot(a):
        if isinstance(a, Atom) and a.text == '_':
            return None
        return _surface(a, reader, issues)

    def sup_entry(a):
        k, v = _pair(a, reader)
        return _int(k, reader), slot(v)

    pnode = node.items[1]
    p = _pattern(pnode, reader, slot, sup_entry)
    line, col = reader.where(pnode.pos)
    for code, msg in pattern_issues(p):
        issues.append(Issue(code, (), f'{msg} (line {line}, column {col})'))
    return SurfaceTree(p)


def parse_surface_unchecked(text: str) -> tuple[SurfaceTree, list[Issue]]:
    """Parse without enforcing invariants; returns the tree and positioned issues."""
    reader = _Reader(text)
    issues: list[Issue] = []
    tree = _surface(_single(reader, reader.read()), reader, issues)
    return tree, issues


def parse_surface(text: str) -> SurfaceTree:
    tree, issues = parse_surface_unchecked(text)
    if issues:
        raise SurfaceError('; '.join(str(i) for i in issues))
    return tree


def _print_slots(slots, show) -> str:
    return ''.join(' ' + ('_' if s is None else show(s)) for s in slots)


def _print_pattern(p: Pattern, show: Callable) -> str:
    if isinstance(p, Fin):
        return f'(fin{_print_slots(p.slots, show)})'
    if isinstance(p, (Nat, Neg)):
        tag = 'nat' if isinstance(p, Nat) else 'neg'
        return f'({tag} (pre{_print_slots(p.prefix, show)}) (cyc{_print_slots(p.cycle, show)}))'
    if isinstance(p, IntCyc):
        return f'(int (cyc{_print_slots(p.cycle, show)}))'
    entries = ''.join(f' ({k} {"_" if s is None else show(s)})' for k, s in p.support)
    return f'(int (sup{entries}))'


def print_surface(tree: SurfaceTree) -> str:
    return f'(strip {_print_pattern(tree.children, print_surface)})'


# -- groups -----------------------------------------------------------------

def _group_seq(items: list, reader: _Reader) -> list:
    """Read a run of group slots, attaching any ``^w`` / ``^n`` suffixes."""
    out = []
    i = 0
    while i < len(items):
        node = items[i]
        if isinstance(node, Atom) and node.text == '^':
            raise reader.error('"^" without a base', node.pos, 'a group')
        g = None if isinstance(node, Atom) and node.text == '_' else _group_atom(node, reader)
        i += 1
        if i < len(items) and isinstance(items[i], Atom) and items[i].text == '^':
            if g is None:
                raise reader.error('"^" applied to an empty slot', items[i].pos)
            if i + 1 >= len(items) or not isinstance(items[i + 1], Atom):
                raise reader.error('missing exponent', items[i].pos, '"w" or an integer')
            exp = items[i + 1]
            if exp.text == 'w':
                g = Prod(Nat((), (g,)))
            else:
                n = _int(exp, reader)
                if n < 0:
                    raise reader.error('negative exponent', exp.pos, 'a non-negative integer')
                g = Prod(Fin((g,) * n))
            i += 2
        out.append(g)
    return out


def _group_atom(node, reader: _Reader):
    if isinstance(node, Atom):
        if node.text == '1':
            return ONE
        if node.text == 'Z':
            return Wr(ONE)
        raise reader.error(f'unknown group "{node.text}"', node.pos, '"1", "Z" or a form')
    head = _head(node, reader, 'x', 'xpat', 'wr')
    args = node.items[1:]
    if head == 'wr':
        inner = _group_seq(args, reader)
        if len(inner) != 1 or inner[0] is None:
            raise reader.error('"wr" takes exactly one group', node.pos, '"(wr GROUP)"')
        return Wr(inner[0])
    if head == 'x':
        slots = _group_seq(args, reader)
        if len(slots) < 2:
            raise reader.error('"x" needs at least two factors', node.pos, '"(x G G ...)"')
        return Prod(Fin(tuple(slots)))
    if len(args) != 1:
        raise reader.error('"xpat" takes one pattern', node.pos, '"(xpat PATTERN)"')

    def seq(items):
        return tuple(_group_seq(items, reader))

    def sup_entry(a):
        if not isinstance(a, SList) or len(a.items) < 2:
            raise reader.error('malformed entry', a.pos, '"(index group)"')
        gs = _group_seq(a.items[1:], reader)
        if len(gs) != 1:
            raise reader.error('malformed entry', a.pos, '"(index group)"')
        return _int(a.items[0], reader), gs[0]

    p = _group_pattern(args[0], reader, seq, sup_entry)
    return Prod(p)


def _group_pattern(node, reader, seq, sup_entry) -> Pattern:
    # same shape as _pattern, but slot runs may carry ^ suffixes
    kind = _head(node, reader, 'fin', 'nat', 'neg', 'int')
    args = node.items[1:]
    if kind == 'fin':
        return Fin(seq(args))
    if kind in ('nat', 'neg'):
        if len(args) != 2:
            raise reader.error(f'"{kind}" takes a prefix and a cycle', node.pos, '"(pre ...)" "(cyc ...)"')
        _head(args[0], reader, 'pre')
        _head(args[1], reader, 'cyc')
        cyc = seq(args[1].items[1:])
        if not cyc:
            raise reader.error('empty cycle', args[1].pos, 'at least one slot')
        return (Nat if kind == 'nat' else Neg)(seq(args[0].items[1:]), cyc)
    if len(args) != 1:
        raise reader.error('"int" takes one cycle or support list', node.pos, '"(cyc ...)" or "(sup ...)"')
    sub = _head(args[0], reader, 'cyc', 'sup')
    if sub == 'cyc':
        cyc = seq(args[0].items[1:])
        if not cyc:
            raise reader.error('empty cycle', args[0].pos, 'at least one slot')
        return IntCyc(cyc)
    entries = tuple(sup_entry(a) for a in args[0].items[1:])
    keys = [k for k, _ in entries]
    if len(set(keys)) != len(keys):
        raise reader.error('duplicate support index', args[0].pos)
    if any(g is None for _, g in entries):
        raise reader.error('empty support slot', args[0].pos, 'a group')
    return IntSup(entries)


def parse_group(text: str):
    reader = _Reader(text)
    data = reader.read()
    seq = _group_seq(data, reader)
    if len(seq) != 1:
        raise reader.error('trailing input', data[-1].pos, 'a single group')
    if seq[0] is None:
        raise reader.error('"_" is not a group', data[0].pos, 'a group')
    return seq[0]


def print_group(g) -> str:
    """Render an expression or a normal form; ``Wr(One)`` prints as ``Z``."""
    if g is ONE:
        return '1'
    if isinstance(g, Wr):
        return 'Z' if g.inner is ONE else f'(wr {print_group(g.inner)})'
    if isinstance(g, ProdNF):
        parts = []
        for f, m in g.factors:
            base = print_group(f)
            parts.append(f'{base}^w' if m is OMEGA else base if m == 1 else f'{base}^{m}')
        return parts[0] if len(parts) == 1 else f'(x {" ".join(parts)})'
    p = g.pattern
    if isinstance(p, Fin) and len(p.slots) >= 2:
        return f'(x{_print_slots(p.slots, print_group)})'
    return f'(xpat {_print_pattern(p, print_group)})'


# -- elements ---------------------------------------------------------------

def _element(node, reader: _Reader):
    if isinstance(node, Atom):
        if node.text == 'e':
            return None
        return WrElem((), _int(node, reader))
    head = _head(node, reader, 'p', 'w')
    if head == 'p':
        entries = []
        for a in node.items[1:]:
            k, v = _pair(a, reader)
            entries.append((_int(k, reader), _element(v, reader)))
        return ('p', entries, node.pos)
    if len(node.items) != 3 or not isinstance(node.items[1], SList):
        raise reader.error('malformed wreath element', node.pos, '"(w ((j elem) ...) n)"')
    entries = []
    for a in node.items[1].items:
        k, v = _pair(a, reader)
        entries.append((_int(k, reader), _element(v, reader)))
    return ('w', entries, node.pos, _int(node.items[2], reader))


def _resolve(raw, shape, reader: _Reader):
    from .elements import slot_shape
    if raw is None:
        return identity(shape)
    if isinstance(raw, WrElem):
        if not isinstance(shape, Wr):
            raise ShapeMismatch('integer literal needs a wreath shape')
        return raw
    pos = raw[2]
    entries = raw[1]
    keys = [k for k, _ in entries]
    if len(set(keys)) != len(keys):
        raise reader.error('duplicate index', pos)
    if raw[0] == 'p':
        if not isinstance(shape, Prod):
            raise ShapeMismatch(f'product literal at {":".join(map(str, reader.where(pos)))} '
                                f'for shape {print_group(shape)}')
        vals = [(k, _resolve(v, slot_shape(shape, k), reader)) for k, v in entries]
        return ProdElem(tuple(sorted((k, v) for k, v in vals if not is_identity(v))))
    if not isinstance(shape, Wr):
        raise ShapeMismatch(f'wreath literal at {":".join(map(str, reader.where(pos)))} '
                            f'for shape {print_group(shape)}')
    vals = [(k, _resolve(v, shape.inner, reader)) for k, v in entries]
    return WrElem(tuple(sorted((k, v) for k, v in vals if not is_identity(v))), raw[3])


def parse_element(text: str, shape):
    """Parse an element literal as an element of ``shape``.

    Raises ParseError on bad syntax and ShapeMismatch when the literal does
    not fit the shape.
    """
    reader = _Reader(text)
    raw = _element(_single(reader, reader.read()), reader)
    return check_element(shape, _resolve(raw, shape, reader))


def print_element(x) -> str:
    if is_identity(x):
        return 'e'
    if isinstance(x, ProdElem):
        return '(p ' + ' '.join(f'({i} {print_element(v)})' for i, v in x.entries) + ')'
    body = ' '.join(f'({j} {print_element(v)})' for j, v in x.support)
    return f'(w ({body}) {x.shift})'


# -- JSON mirror ------------------------------------------------------------

def _pattern_json(p: Pattern, enc: Callable) -> dict:
    def slots(xs):
        return [None if s is None else enc(s) for s in xs]
    if isinstance(p, Fin):
        return {'fin': slots(p.slots)}
    if isinstance(p, (Nat, Neg)):
        return {'nat' if isinstance(p, Nat) else 'neg': {'pre': slots(p.prefix), 'cyc': slots(p.cycle)}}
    if isinstance(p, IntCyc):
        return {'int': {'cyc': slots(p.cycle)}}
    return {'int': {'sup': [[k, None if s is None else enc(s)] for k, s in p.support]}}


def _strip_json(t: SurfaceTree) -> dict:
    return _pattern_json(t.children, _strip_json)


def _group_json(g):
    if g is ONE:
        return '1'
    if isinstance(g, Wr):
        return {'wr': _group_json(g.inner)}
    return {'x': _pattern_json(g.pattern, _group_json)}


def _nf_json(g):
    if g is ONE:
        return '1'
    if isinstance(g, Wr):
        return {'wr': _nf_json(g.inner)}
    return {'prod': [[_nf_json(f), 'w' if m is OMEGA else m] for f, m in g.factors]}


def _is_nf(g) -> bool:
    if isinstance(g, ProdNF):
        return True
    if isinstance(g, Wr):
        return _is_nf(g.inner)
    return False


def _elem_json(x):
    if x is E:
        return 'e'
    if isinstance(x, ProdElem):
        return {'p': [[i, _elem_json(v)] for i, v in x.entries]}
    return {'w': [[j, _elem_json(v)] for j, v in x.support], 'shift': x.shift}


def to_json_obj(value) -> dict:
    out: dict[str, Any] = {'v': SCHEMA}
    if isinstance(value, SurfaceTree):
        out['strip'] = _strip_json(value)
    elif isinstance(value, (Trivial, Period)):
        out['eta'] = 'trivial' if isinstance(value, Trivial) else {'period': value.k}
    elif value is E or isinstance(value, (ProdElem, WrElem)):
        out['elem'] = _elem_json(value)
    elif _is_nf(value):
        out['nf'] = _nf_json(value)
    elif value is ONE or isinstance(value, (Prod, Wr)):
        out['group'] = _group_json(value)
    else:
        raise TypeError(f'no JSON encoding for {type(value).__name__}')
    return out


def to_json(value) -> str:
    """Encode a surface, group expression, normal form, element or shift image.

    Normal forms containing no product (``1``, ``Z``, ``(wr Z)``, ...) are
    indistinguishable from expressions and are encoded under ``group``.
    """
    return json.dumps(to_json_obj(value), separators=(',', ':'))


def _bad(msg: str) -> SchemaError:
    return SchemaError(msg)


def _dec_pattern(obj, dec: Callable) -> Pattern:
    def slots(xs):
        if not isinstance(xs, list):
            raise _bad(f'expected a slot list, got {xs!r}')
        return tuple(None if s is None else dec(s) for s in xs)
    if not isinstance(obj, dict) or len(obj) != 1:
        raise _bad(f'expected a pattern object, got {obj!r}')
    (kind, body), = obj.items()
    if kind == 'fin':
        return Fin(slots(body))
    if kind in ('nat', 'neg'):
        if not isinstance(body, dict) or set(body) != {'pre', 'cyc'}:
            raise _bad(f'"{kind}" needs "pre" and "cyc"')
        return (Nat if kind == 'nat' else Neg)(slots(body['pre']), slots(body['cyc']))
    if kind == 'int':
        if not isinstance(body, dict) or len(body) != 1:
            raise _bad('"int" needs "cyc" or "sup"')
        if 'cyc' in body:
            return IntCyc(slots(body['cyc']))
        if 'sup' in body and isinstance(body['sup'], list):
            entries = []
            for e in body['sup']:
                if not (isinstance(e, list) and len(e) == 2 and isinstance(e[0], int)):
                    raise _bad(f'bad support entry {e!r}')
                entries.append((e[0], None if e[1] is None else dec(e[1])))
            return IntSup(tuple(entries))
    raise _bad(f'unknown pattern kind {kind!r}')


def _dec_strip(obj) -> SurfaceTree:
    return SurfaceTree(_dec_pattern(obj, _dec_strip))


def _dec_group(obj):
    if obj == '1':
        return ONE
    if isinstance(obj, dict) and len(obj) == 1:
        if 'wr' in obj:
            return Wr(_dec_group(obj['wr']))
        if 'x' in obj:
            return Prod(_dec_pattern(obj['x'], _dec_group))
    raise _bad(f'bad group {obj!r}')


def _dec_nf(obj):
    if obj == '1':
        return ONE
    if isinstance(obj, dict) and len(obj) == 1:
        if 'wr' in obj:
            return Wr(_dec_nf(obj['wr']))
        if 'prod' in obj and isinstance(obj['prod'], list):
            factors = []
            for e in obj['prod']:
                if not (isinstance(e, list) and len(e) == 2):
                    raise _bad(f'bad factor {e!r}')
                m = e[1]
                if m == 'w':
                    m = OMEGA
                elif not (isinstance(m, int) and m >= 1):
                    raise _bad(f'bad multiplicity {m!r}')
                factors.append((_dec_nf(e[0]), m))
            return ProdNF(tuple(sorted(factors, key=lambda fm: nf_key(fm[0]))))
    raise _bad(f'bad normal form {obj!r}')


def _dec_elem(obj):
    if obj == 'e':
        return E
    if isinstance(obj, dict):
        if set(obj) == {'p'}:
            return ProdElem(tuple((i, _dec_elem(v)) for i, v in _entries(obj['p'])))
        if set(obj) == {'w', 'shift'} and isinstance(obj['shift'], int):
            return WrElem(tuple((j, _dec_elem(v)) for j, v in _entries(obj['w'])), obj['shift'])
    raise _bad(f'bad element {obj!r}')


def _entries(xs) -> list:
    if not isinstance(xs, list) or not all(isinstance(e, list) and len(e) == 2 and isinstance(e[0], int) for e in xs):
        raise _bad(f'bad entry list {xs!r}')
    return xs


def from_json_obj(obj):
    if not isinstance(obj, dict):
        raise _bad('top level must be an object')
    if obj.get('v') != SCHEMA:
        raise _bad(f'unsupported schema version {obj.get("v")!r}, expected {SCHEMA!r}')
    keys = set(obj) - {'v'}
    if len(keys) != 1:
        raise _bad(f'expected exactly one payload key, got {sorted(keys)}')
    key, = keys
    body = obj[key]
    if key == 'strip':
        return _dec_strip(body)
    if key == 'group':
        return _dec_group(body)
    if key == 'nf':
        return _dec_nf(body)
    if key == 'elem':
        return _dec_elem(body)
    if key == 'eta':
        if body == 'trivial':
            return Trivial()
        if isinstance(body, dict) and isinstance(body.get('period'), int) and body['period'] >= 1:
            return Period(body['period'])
    raise _bad(f'unknown payload {key!r}')


def from_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f'invalid JSON: {exc}') from None
    return from_json_obj(obj)
