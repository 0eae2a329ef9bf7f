"""Executable calculus of planar cobordism diagrams with a GF(2) backend."""

from __future__ import annotations

from .backend import CategoryPresentation, GeneratorDecl, HomologyClass, TriangleDecl, k0, omega
from .cabling import cabling_equivalent, check_axioms, naturality_square, octahedron
from .errors import *  # noqa: F401,F403
from .gf2 import ChainComplexGF2, GF2Matrix, cone, is_quasi_iso
from .metrics import abstract_metric_sF, avg_distance, frag_distance, rigidity_scan, theta_noncontraction
from .planar import CobordismDiagram, PLCurve, Point2, detect_crossings, invert, shadow, translate
from .presentation_io import load_presentation, read_presentation, write_presentation
from .svg import render_svg
from .theta import theta
from .words import Word, cable, compose, compose_at_leg, gen, identity, parse_word, rotate, surgery, to_sexpr, union

__version__ = "0.1.0"
