"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (invalid surface, element
not fitting its group), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import elements as el
from .elements import ShapeMismatch
from .groups import height, normalize, realize
from .homeotopy import compute_group, eta_image
from .render import RenderConfig, drawn_strip_count, render_svg
from .selftest import run_checks
from .surface import SurfaceError, SurfaceTree, canonicalize, graph_diameter, reduce, validate
from .textio import (
    SCHEMA, ParseError, SchemaError, from_json, parse_element, parse_group,
    parse_surface_unchecked, print_element, print_group, print_surface,
    to_json, to_json_obj,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise UsageError(f'cannot read {path}: {exc.strerror}') from None


def _load_surface(path: str, check: bool = True) -> tuple[SurfaceTree, list]:
    text = _read(path)
    if text.lstrip().startswith('{'):
        tree = from_json(text)
        if not isinstance(tree, SurfaceTree):
            raise SchemaError(f'{path} does not hold a surface')
        issues = validate(tree)
    else:
        tree, issues = parse_surface_unchecked(text)
    if check and issues:
        raise SurfaceError('; '.join(map(str, issues)))
    return tree, issues


def _load_group(path: str):
    text = _read(path)
    if text.lstrip().startswith('{'):
        g = from_json(text)
        if isinstance(g, SurfaceTree):
            raise SchemaError(f'{path} does not hold a group')
        return g
    return parse_group(text)


def _emit(args, text: str, payload: dict | None = None, value=None) -> None:
    if args.json:
        if value is not None:
            print(to_json(value))
        else:
            print(json.dumps({'v': SCHEMA, **(payload or {})}, separators=(',', ':')))
    else:
        print(text)


def cmd_validate(args) -> int:
    tree, issues = _load_surface(args.file, check=False)
    if args.json:
        _emit(args, '', {'valid': not issues, 'issues': [
            {'code': i.code, 'path': list(i.path), 'message': i.message} for i in issues]})
    elif not issues:
        print('valid')
    else:
        print('invalid')
        for i in issues:
            print(i, file=sys.stderr)
    return 1 if issues else 0


def cmd_canon(args) -> int:
    tree = canonicalize(_load_surface(args.file)[0])
    _emit(args, print_surface(tree), value=tree)
    return 0


def cmd_reduce(args) -> int:
    tree = reduce(_load_surface(args.file)[0])
    _emit(args, print_surface(tree), value=tree)
    return 0


def cmd_diameter(args) -> int:
    d = graph_diameter(_load_surface(args.file)[0])
    _emit(args, str(d), {'diameter': d})
    return 0


def cmd_eta(args) -> int:
    eta = eta_image(_load_surface(args.file)[0])
    _emit(args, str(eta), value=eta)
    return 0


def cmd_group(args) -> int:
    g = compute_group(_load_surface(args.file)[0])
    shown = normalize(g) if args.normalize else g
    if args.json:
        payload = to_json_obj(g)
        if args.normalize:
            nf = to_json_obj(normalize(g))
            payload['nf'] = nf.get('nf', nf.get('group'))
        if args.height:
            payload['height'] = height(g)
        print(json.dumps(payload, separators=(',', ':')))
        return 0
    print(print_group(shown))
    if args.height:
        print(f'height {height(g)}')
    return 0


def cmd_realize(args) -> int:
    tree = realize(_load_group(args.file))
    _emit(args, print_surface(tree), value=tree)
    return 0


def cmd_render(args) -> int:
    tree = _load_surface(args.file)[0]
    try:
        cfg = RenderConfig(repeat=args.repeat, depth=args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    Path(args.output).write_text(render_svg(tree, cfg), encoding='utf-8')
    n = drawn_strip_count(tree, cfg)
    _emit(args, f'wrote {args.output} ({n} strips)', {'output': args.output, 'strips': n})
    return 0


def cmd_elem(args) -> int:
    shape = _load_group(args.group)
    if args.op == 'mul':
        if len(args.elements) != 2:
            raise UsageError('elem mul takes two elements')
        a, b = (parse_element(t, shape) for t in args.elements)
        result = el.multiply(shape, a, b)
    else:
        if len(args.elements) != 1:
            raise UsageError('elem inv takes one element')
        result = el.inverse(shape, parse_element(args.elements[0], shape))
    _emit(args, print_element(result), value=result)
    return 0


def cmd_selftest(args) -> int:
    results = run_checks(seed=args.seed, iters=args.iters)
    if args.json:
        _emit(args, '', {'seed': args.seed, 'checks': [
            {'name': r.name, 'cases': r.cases, 'failures': r.failures} for r in results]})
    else:
        for r in results:
            print(f'{r.name:20s} {"ok" if r.ok else "FAIL"}  {r.cases - r.failures}/{r.cases}')
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog='folia', description='Homeotopy groups of striped surfaces.')
    ap.add_argument('--json', action='store_true', help='emit the JSON mirror instead of text')
    sub = ap.add_subparsers(dest='command', required=True)

    for name, fn, help_ in [
        ('validate', cmd_validate, 'check surface invariants'),
        ('canon', cmd_canon, 'print the canonical form'),
        ('reduce', cmd_reduce, 'splice out unary strips'),
        ('diameter', cmd_diameter, 'diameter of the strip graph'),
        ('eta', cmd_eta, 'image of the shift homomorphism'),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument('file')
        p.set_defaults(func=fn)

    p = sub.add_parser('group', help='homeotopy group of a surface')
    p.add_argument('file')
    p.add_argument('--normalize', action='store_true')
    p.add_argument('--height', action='store_true', help='also print the height of the computed representation')
    p.set_defaults(func=cmd_group)

    p = sub.add_parser('realize', help='surface realizing a group expression')
    p.add_argument('file')
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser('render', help='draw a surface as SVG')
    p.add_argument('file')
    p.add_argument('-o', '--output', required=True)
    p.add_argument('--repeat', type=int, default=3)
    p.add_argument('--depth', type=int, default=4)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser('elem', help='element arithmetic')
    p.add_argument('op', choices=('mul', 'inv'))
    p.add_argument('group')
    p.add_argument('elements', nargs='+')
    p.set_defaults(func=cmd_elem)

    p = sub.add_parser('selftest', help='run randomized consistency checks')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--iters', type=int, default=200)
    p.set_defaults(func=cmd_selftest)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, SchemaError, UsageError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return 2
    except (SurfaceError, ShapeMismatch) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
