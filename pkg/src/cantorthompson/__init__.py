"""Thompson's groups on complements of generalized Cantor sets.

Exact tree-pair-diagram algebra for F, T, V; generalized Cantor sets E(omega)
with their canonical pants trees; the correspondence between combinatorial
mapping classes and Thompson elements; and numeric estimators for lengths,
collars and twist-map dilatations.
"""

from .dyadic import Dyadic, DyadicInterval, interval_of_address, address_of_interval
from .treepair import (
    Tree,
    TreePair,
    PLMap,
    tree_from_partition,
    from_pl_map,
    generator,
    generator_pl_map,
    parse_word,
    word_eval,
)
from .cantor import CantorParams, brd_check, interval, gap, circle, iterated_log
from .pantstree import CurveAddress, PantsSubtree, iota_C, boundary_of_Wd, pants_of
from .theta import (
    CombinatorialMappingClass,
    theta,
    realize,
    depth_stabilize,
    compose_classes,
    kernel_test,
)
from .geometry import (
    TwistMapSpec,
    annulus_modulus,
    collar_width,
    count_NK,
    d_of_K,
    length_upper_bound,
    twist_dilatation,
    twist_map_eval,
    wolpert_interval,
)
from . import errors

__all__ = [
    "Dyadic",
    "DyadicInterval",
    "interval_of_address",
    "address_of_interval",
    "Tree",
    "TreePair",
    "PLMap",
    "tree_from_partition",
    "from_pl_map",
    "generator",
    "generator_pl_map",
    "parse_word",
    "word_eval",
    "CantorParams",
    "brd_check",
    "interval",
    "gap",
    "circle",
    "iterated_log",
    "CurveAddress",
    "PantsSubtree",
    "iota_C",
    "boundary_of_Wd",
    "pants_of",
    "CombinatorialMappingClass",
    "theta",
    "realize",
    "depth_stabilize",
    "compose_classes",
    "kernel_test",
    "TwistMapSpec",
    "annulus_modulus",
    "collar_width",
    "count_NK",
    "d_of_K",
    "length_upper_bound",
    "twist_dilatation",
    "twist_map_eval",
    "wolpert_interval",
    "errors",
]

__version__ = "0.1.0"
