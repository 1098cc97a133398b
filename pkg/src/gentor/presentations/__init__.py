"""Knot-group presentations, homology, Alexander polynomials and a triviality prover."""
from .alexander import alexander_polynomial, format_polynomial
from .core import (Presentation, connected_sum, dehn_filling, format_presentation,
                   parse_presentation, simplify, twist_knot_presentation, twist_sum)
from .homology import H1, SmithForm, h1_order, homology_h1, smith_normal_form
from .meridian import MeridianRecord, MeridianSearch, meridian_gt_search
from .prover import Derivation, Step, format_derivation, parse_derivation, prove_trivial
from .replay import check_derivation

__all__ = [
    "Presentation", "connected_sum", "dehn_filling", "format_presentation",
    "parse_presentation", "simplify", "twist_knot_presentation", "twist_sum",
    "H1", "SmithForm", "h1_order", "homology_h1", "smith_normal_form",
    "alexander_polynomial", "format_polynomial",
    "Derivation", "Step", "format_derivation", "parse_derivation", "prove_trivial",
    "check_derivation", "MeridianRecord", "MeridianSearch", "meridian_gt_search",
]
