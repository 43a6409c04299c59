"""Executable crystals and quiver-variety data over exact rationals."""

from .cartan import CartanDatum, CartanError, CharacterTable, WeightVector, preset, weyl_kac_character
from .crystal import CrystalGraph, Report, check_axioms, check_morphism, connected_components
from .binfinity import IotaSequence, StringElement, generate_blambda, pi_lambda
from .quiver import ADHMDatum, DoubledQuiver, GradedDims, build_doubled_quiver

__all__ = [
    "ADHMDatum", "CartanDatum", "CartanError", "CharacterTable", "CrystalGraph", "DoubledQuiver",
    "GradedDims", "IotaSequence", "Report", "StringElement", "WeightVector", "build_doubled_quiver",
    "check_axioms", "check_morphism", "connected_components", "generate_blambda", "pi_lambda",
    "preset", "weyl_kac_character",
]
__version__ = "0.1.0"
