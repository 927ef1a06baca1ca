"""Finite spherical buildings of type A, hemisphere complexes and their connectivity."""

from .building import FlagBuilding, JoinBuilding, ThinBuilding, build_flag
from .complex import SimplicialComplex
from .filtration import Filtration
from .homology import is_homotopy_CM, reduced_homology
from .metric import barycenter_pole, classify, classify_cap, vertex_pole
from .supports import cap_complement, closed_hemisphere, equator, open_hemisphere, root_complement

__version__ = "0.1.0"

__all__ = [
    "FlagBuilding", "JoinBuilding", "ThinBuilding", "build_flag", "SimplicialComplex",
    "Filtration", "is_homotopy_CM", "reduced_homology", "barycenter_pole", "classify",
    "classify_cap", "vertex_pole", "cap_complement", "closed_hemisphere", "equator",
    "open_hemisphere", "root_complement",
]
