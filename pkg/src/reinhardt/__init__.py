"""Enumeration, classification, construction and geometry of Reinhardt polygons."""
from __future__ import annotations

from .classify import Classification, D, E0_formula, E_pq_formula, classify, periods
from .composition import (
    Composition,
    InvalidComposition,
    SignVector,
    canonicalize,
    composition_to_sign_vector,
    expand_runlength,
    format_composition,
    is_reinhardt,
    parse_composition,
    sign_vector_to_composition,
)
from .construct import (
    ALL_NONTRIVIAL,
    MUST_CONTAIN_ZERO,
    BlockChoice,
    ConstructionParams,
    build_f1,
    construct_F,
    construct_sporadic,
    count_periodic_constructed,
    enumerate_block_choices,
)
from .decompose import Decomposition, decompose, has_trivial_decomposition
from .enumeration import EnumerationResult, SearchBudgetExceeded, count_summary, enumerate_reinhardt
from .geometry import PolygonRealization, realize
from .poly import IntPolynomial, cyclotomic, divides, poly_divrem
from .svg import SvgStyle, render_svg

__version__ = "0.1.0"
