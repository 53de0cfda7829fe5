"""Homeotopy groups of striped surfaces and iterated wreath products with Z."""

from .elements import (
    E, ProdElem, ShapeMismatch, WrElem, identity, include_i, inverse,
    multiply, project_pi, random_element, section_s, transport_compose,
)
from .groups import ONE, Z, Prod, ProdNF, Wr, height, normalize, realize
from .homeotopy import Period, Trivial, compute_group, eta_image
from .patterns import OMEGA, Fin, IntCyc, IntSup, Nat, Neg
from .render import RenderConfig, render_svg
from .surface import (
    SurfaceError, SurfaceTree, canonicalize, graph_diameter, is_reduced,
    minimal_period, reduce, trees_equivalent, validate,
)
from .textio import (
    ParseError, SchemaError, from_json, parse_element, parse_group,
    parse_surface, print_element, print_group, print_surface, to_json,
)

__version__ = '0.1.0'

__all__ = [
    'E',
    'ProdElem',
    'ShapeMismatch',
    'WrElem',
    'identity',
    'include_i',
    'inverse',
    'multiply',
    'project_pi',
    'random_element',
    'section_s',
    'transport_compose',
    'ONE',
    'Z',
    'Prod',
    'ProdNF',
    'Wr',
    'height',
    'normalize',
    'realize',
    'Period',
    'Trivial',
    'compute_group',
    'eta_image',
    'OMEGA',
    'Fin',
    'IntCyc',
    'IntSup',
    'Nat',
    'Neg',
    'RenderConfig',
    'render_svg',
    'SurfaceError',
    'SurfaceTree',
    'canonicalize',
    'graph_diameter',
    'is_reduced',
    'minimal_period',
    'reduce',
    'trees_equivalent',
    'validate',
    'ParseError',
    'SchemaError',
    'from_json',
    'parse_element',
    'parse_group',
    'parse_surface',
    'print_element',
    'print_group',
    'print_surface',
    'to_json',
]
