"""Penrose transform for CP_n through the flag manifold F_{1,2}(C^{n+1})."""
from .bbw import CohomologyResult, cohomology, direct_images
from .charlib import character_of, decompose, exterior_power, tensor
from .errors import PenroseError
from .flagspace import Bundle, BundleSum, F, FlagSpace, G, M, parse_bundle
from .penrose import Complex, E1Page, GradedInput, cancel, e1_page, raw_complex, transform
from .relforms import pullback, relative_forms, tangent_series
from .render import emit, hermitian_name, parse
from .rootsys import Weight, weyl_dim

__all__ = [
    "Bundle", "BundleSum", "CohomologyResult", "Complex", "E1Page", "F", "FlagSpace", "G", "GradedInput", "M",
    "PenroseError", "Weight", "cancel", "character_of", "cohomology", "decompose", "direct_images", "e1_page",
    "emit", "exterior_power", "hermitian_name", "parse", "parse_bundle", "pullback", "raw_complex",
    "relative_forms", "tangent_series", "tensor", "transform", "weyl_dim",
]
