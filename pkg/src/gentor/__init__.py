"""Generalized torsion in free products and 3-manifold groups.

Exact word calculus in free products of cyclic groups, certificates and their
bounded search, counting quasimorphisms with certified scl lower bounds, and
knot-group presentations for Dehn-filled connected sums of twist knots.
"""
from .certificates import (GTCertificate, certify, evaluate_product, normalize,
                           search_order, transport_to_factor, verify)
from .words import (FactorSpec, GroupSpec, Word, abelian_order, abelianize,
                    conjugate_into_factor, cyclically_reduce, parse_group, parse_word)

__version__ = "0.1.0"

__all__ = [
    "FactorSpec", "GroupSpec", "Word", "abelian_order", "abelianize",
    "conjugate_into_factor", "cyclically_reduce", "parse_group", "parse_word",
    "GTCertificate", "certify", "evaluate_product", "normalize", "search_order",
    "transport_to_factor", "verify",
]
