"""Counting quasimorphisms on amalgamated free products and HNN extensions of finite groups."""

from .amalgam import AElement, ALetter, AmalgamPresentation, WordSyntaxError
from .estimator import CountingFeatures
from .families import (
    AmalgamFamilyParams,
    HnnFamilyParams,
    commutator_certificate_check,
    cover_refute,
    family_word,
    symbol_pattern,
)
from .groups import FiniteGroup, GroupValidationError, build_group, check_embedding, cyclic, direct_product
from .hnn import HElement, HLetter, HnnPresentation, check_condition_I_II, t_pattern
from .instances import ConfigError, Instance, load_instance
from .quasimorphism import CountingQuasimorphism, c_w, defect_scan, delta_h, h_w, oracle_c_w
from .snf import AbelianInvariants, smith_invariants

__version__ = "0.1.0"

__all__ = [
    "AElement", "ALetter", "AbelianInvariants", "AmalgamFamilyParams", "AmalgamPresentation",
    "ConfigError", "CountingFeatures", "CountingQuasimorphism", "FiniteGroup", "GroupValidationError",
    "HElement", "HLetter", "HnnFamilyParams", "HnnPresentation", "Instance", "WordSyntaxError",
    "build_group", "c_w", "check_condition_I_II", "check_embedding", "commutator_certificate_check",
    "cover_refute", "cyclic", "defect_scan", "delta_h", "direct_product", "family_word", "h_w",
    "load_instance", "oracle_c_w", "smith_invariants", "symbol_pattern", "t_pattern",
]
