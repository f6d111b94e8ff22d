"""Finite p-groups on power-commutator presentations: collection, subgroup
machinery, first cohomology, and certified non-inner automorphisms of order p.
"""

from .pc import EnumerationBoundError, PcPresentation, PresentationError
from .families import gen_family, catalog_dir
from .presentation_io import parse_presentation, print_presentation
from .search import Certificate, SearchExhausted, find_noninner, verify_certificate

__all__ = [
    "PcPresentation",
    "PresentationError",
    "EnumerationBoundError",
    "gen_family",
    "catalog_dir",
    "parse_presentation",
    "print_presentation",
    "Certificate",
    "SearchExhausted",
    "find_noninner",
    "verify_certificate",
]
