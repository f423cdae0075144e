"""Finite group piles, embedding problems and HNN presentations."""

from .groups import FiniteGroup, GroupHom, Subgroup, validate_group
from .gset import GSet, Partition
from .pile import Pile, PileMorphism
from .presentations import Presentation, hom_count, hom_profile

__all__ = [
    "FiniteGroup", "GroupHom", "Subgroup", "validate_group",
    "GSet", "Partition", "Pile", "PileMorphism",
    "Presentation", "hom_count", "hom_profile",
]
__version__ = "0.1.0"
