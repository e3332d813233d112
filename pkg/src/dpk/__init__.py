"""dpk: exact computational toolkit for del Pezzo surface arithmetic."""

__version__ = "0.1.0"

from .lattice import DivisorClass, PicLattice, QuadricD8Lattice, RootSystemData
from .weyl import LatticeAutomorphism, element_from_word, generate_group, reflection
from .cohomology import FiniteAbelianGroup, h1_cyclic, scan_h1, smith_normal_form

__all__ = [
    "DivisorClass",
    "PicLattice",
    "QuadricD8Lattice",
    "RootSystemData",
    "LatticeAutomorphism",
    "element_from_word",
    "generate_group",
    "reflection",
    "FiniteAbelianGroup",
    "h1_cyclic",
    "scan_h1",
    "smith_normal_form",
]
