"""Exact symbolic workbench for image ideals of locally nilpotent
derivations on polynomial rings over Q and Q[t_1..t_k], with a
degree-bounded linear-algebra oracle that independently verifies every
generator formula."""

from .polyring import (
    ExactDivisionError,
    IdealPresentation,
    MultiPoly,
    PlinthError,
    PolyParseError,
    PolyRing,
    RingMismatchError,
)
from .derivation import Derivation, StructureReport, UnsupportedStructureError
from .imageideals import (
    ImageIdealResult,
    KernelPresentation,
    image_ideal,
    kernel_generator,
    min_exponent,
    nice3var_reduce,
    slice_construct,
    strictness_decompose,
)

__version__ = "1.0.0"

__all__ = [
    "Derivation",
    "ExactDivisionError",
    "IdealPresentation",
    "ImageIdealResult",
    "KernelPresentation",
    "MultiPoly",
    "PlinthError",
    "PolyParseError",
    "PolyRing",
    "RingMismatchError",
    "StructureReport",
    "UnsupportedStructureError",
    "image_ideal",
    "kernel_generator",
    "min_exponent",
    "nice3var_reduce",
    "slice_construct",
    "strictness_decompose",
]
