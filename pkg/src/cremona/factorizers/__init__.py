"""Factorizations into involutions for specific families of birational maps."""

from .bounds import BOUND_CLASSES, BoundError, paper_bound
from .common import FactorizationError
from .gn import chain_product, conjugated_sigma, sigma_chain, sigma_chain_certificate
from .jn import JnMap, factor_jn, parse_jn
from .jonq_p3 import factor_jonq_p3, lift_p2_to_p3, unlift_p3_to_p2
from .jonquieres import Jonquieres2, factor_jonquieres2, parse_jonquieres2, split_jonquieres2
from .p1n import MultiP1Map, factor_p1n
from .polyaut import (
    PolyAut, ReducedWord, ReducedWordError, classify_autc2, factor_elementary_c2, factor_henon,
    henon_parts, in_h1, in_h1_h2_normal_form, in_h2, is_affine, is_elementary, parse_polyaut,
    reduced_word_degree,
)

__all__ = [
    "BOUND_CLASSES", "BoundError", "paper_bound", "FactorizationError", "chain_product",
    "conjugated_sigma", "sigma_chain", "sigma_chain_certificate", "JnMap", "factor_jn", "parse_jn",
    "factor_jonq_p3", "lift_p2_to_p3", "unlift_p3_to_p2", "Jonquieres2", "factor_jonquieres2",
    "parse_jonquieres2", "split_jonquieres2", "MultiP1Map", "factor_p1n", "PolyAut", "ReducedWord",
    "ReducedWordError", "classify_autc2", "factor_elementary_c2", "factor_henon", "henon_parts",
    "in_h1", "in_h1_h2_normal_form", "in_h2", "is_affine", "is_elementary", "parse_polyaut",
    "reduced_word_degree",
]
