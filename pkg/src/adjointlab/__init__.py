"""adjointlab: numerics for compact adjoint simple Lie groups.

The two constructors below build the combinatorial and the matrix side of a
group (A1, A2, B2, C2 or G2); the re-exported functions are the headline
measurements. Everything else lives in the topic modules: rootsys,
characters, compactform, orbits, classpowers, disk.
"""

from .characters import haar_character_integral, weight_multiplicities
from .classpowers import (
    bch_scaling_fit,
    class_power_identity_check,
    conjugacy_class,
    product_radius_mu,
)
from .compactform import build_compact_form
from .disk import empirical_disk_constant
from .orbits import find_vanishing_submersive_tuple
from .rootsys import build_root_system

__version__ = "0.1.0"

__all__ = [
    "bch_scaling_fit",
    "build_compact_form",
    "build_root_system",
    "class_power_identity_check",
    "conjugacy_class",
    "empirical_disk_constant",
    "find_vanishing_submersive_tuple",
    "haar_character_integral",
    "product_radius_mu",
    "weight_multiplicities",
    "__version__",
]
