"""Exact fans, pans, affine monoids and their homomorphisms."""

from .cones import Cone, Fan, HalfSpace, dual_cone, faces, is_subdivision, is_subfan
from .errors import (
    ExponentNotFound,
    InputError,
    InputTooLargeError,
    LinealityError,
    LogconeError,
    PreconditionFailed,
)
from .homs import MonoidHom
from .lattice import Lattice, LatticeHom, smith_normal_form
from .monoids import AffineMonoid, MonoidFace, hilbert_basis, saturation
from .pans import Pan, PanMorphism
from .report import Check, Report

__version__ = "0.1.0"

__all__ = [
    "AffineMonoid", "Check", "Cone", "ExponentNotFound", "Fan", "HalfSpace", "InputError",
    "InputTooLargeError", "Lattice", "LatticeHom", "LinealityError", "LogconeError", "MonoidFace",
    "MonoidHom", "Pan", "PanMorphism", "PreconditionFailed", "Report", "dual_cone", "faces",
    "hilbert_basis", "is_subdivision", "is_subfan", "saturation", "smith_normal_form",
]
