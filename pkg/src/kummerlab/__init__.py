"""Exact invariants of Abelian covers of the plane and the degree-5 del Pezzo surface."""

from .configs import LineConfiguration, builtin, stats
from .covers import ChernInvariants, CoverSpec, invariants_general, invariants_kummer_plane
from .zgroups import Character, FiniteAbelianGroup, GroupElement

__all__ = [
    "Character",
    "ChernInvariants",
    "CoverSpec",
    "FiniteAbelianGroup",
    "GroupElement",
    "LineConfiguration",
    "builtin",
    "invariants_general",
    "invariants_kummer_plane",
    "stats",
]
