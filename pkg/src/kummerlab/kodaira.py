"""Numerics of fibred surfaces: slopes, Euler residues and feasibility windows.

Everything is exact arithmetic on caller-supplied numbers.  ``b`` is the
genus of the base curve and ``g`` the genus of the fibre.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class FibrationDataError(ValueError):
    pass


@dataclass(frozen=True)
class FibrationParams:
    b: int
    g: int
    K2: Fraction | None = None
    e: Fraction | None = None
    chi: Fraction | None = None


def bundle_euler(b: int, g: int) -> int:
    return 4 * (g - 1) * (b - 1)


def zeuthen_segre_mu(e, b: int, g: int, smooth_minimal: bool = False) -> int:
    """``mu = e - 4(g-1)(b-1)``, the contribution of the singular fibres."""
    mu = e - bundle_euler(b, g)
    if smooth_minimal and g >= 2 and mu < 0:
        raise FibrationDataError(f"negative Zeuthen-Segre residue {mu}")
    return mu


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    chi_range: tuple[int, int] | None  # inclusive bounds of admissible integer chi


def kodaira_feasibility(g: int, b: int) -> Feasibility:
    """Integers ``chi`` with ``(g-1)(b-1) < chi < 4(g-1)(b-1)/3``."""
    lo = (g - 1) * (b - 1) + 1
    hi = -((-4 * (g - 1) * (b - 1)) // 3) - 1  # largest integer strictly below 4x/3
    if lo <= hi:
        return Feasibility(True, (lo, hi))
    return Feasibility(False, None)


def fibre_genus_scaling(g: int, n: int) -> int:
    """Fibre genus after pulling back by multiplication by ``n`` on the Jacobian."""
    if g < 2 or n < 1:
        raise ValueError("need g >= 2 and n >= 1")
    return 1 + (g - 1) * n ** (2 * g)


@dataclass(frozen=True)
class ArakelovDegree:
    degree: Fraction
    holomorphic_bundle: bool


def arakelov_degree(chi, b: int, g: int, kodaira_fibred: bool = False) -> ArakelovDegree:
    deg = Fraction(chi) - (g - 1) * (b - 1)
    if deg < 0:
        raise FibrationDataError(f"negative degree {deg} of the Hodge bundle")
    if kodaira_fibred and deg <= 0:
        raise FibrationDataError("a Kodaira fibration has positive Hodge bundle degree")
    return ArakelovDegree(deg, deg == 0)


def tan_min_singular_fibres(b: int, g: int, chi=None, deg=None) -> int:
    """Least ``s >= 0`` with ``(g/2)(2b - 2 + s) > deg``.

    ``deg`` defaults to ``chi - (b-1)(g-1)``; passing it directly covers the
    cases where ``chi`` is not at hand.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    if deg is None:
        if chi is None:
            raise ValueError("give chi or deg")
        deg = Fraction(chi) - (b - 1) * (g - 1)
    deg = Fraction(deg)
    # s > 2 deg / g - (2b - 2)
    bound = 2 * deg / g - (2 * b - 2)
    s = math.floor(bound) + 1
    return max(s, 0)


def very_simple_slope(b: int, multiplicities: Sequence[int]) -> Fraction:
    if b < 2:
        raise ValueError("b must be >= 2")
    if any(m < 2 for m in multiplicities):
        raise ValueError("multiplicities must be >= 2")
    num = sum(1 - Fraction(1, m * m) for m in multiplicities)
    den = 2 * (b - 1) + sum(1 - Fraction(1, m) for m in multiplicities)
    return 2 + num / den


def very_simple_slope_limit(alpha) -> Fraction:
    """The slope as all multiplicities grow, with ``alpha = r/(b-1)``."""
    return 3 - Fraction(2) / (2 + Fraction(alpha))


def base_change_slope(K2, g: int, b: int, d: int, r: int) -> Fraction:
    """Slope after a degree-``d`` base change branched at ``r`` points (one per fibre)."""
    if d < 1 or r < 0 or g < 2 or b < 2:
        raise ValueError("need d >= 1, r >= 0, g >= 2, b >= 2")
    t = Fraction(r, d)
    new = (Fraction(K2) + 4 * t * (g - 1)) / (4 * (g - 1) * (b - 1 + t / 2))
    if r > 0 and K2 > 8 * (b - 1) * (g - 1):
        old = Fraction(K2) / bundle_euler(b, g)
        assert new < old
    return new


def check_kodaira_slope(K2, e) -> Fraction:
    """Return ``K2/e``, raising unless it lies strictly between 2 and 3."""
    nuC = Fraction(K2) / Fraction(e)
    if not 2 < nuC < 3:
        raise FibrationDataError(f"slope {nuC} of a Kodaira fibration must lie in (2, 3)")
    return nuC


@dataclass(frozen=True)
class IsogenousEuler:
    value: Fraction
    possible: bool


def isogenous_euler(g1: int, g2: int, group_order: int) -> IsogenousEuler:
    if g1 < 2 or g2 < 2:
        raise ValueError("need g1, g2 >= 2")
    val = Fraction(4 * (g1 - 1) * (g2 - 1), group_order)
    return IsogenousEuler(val, val.denominator == 1)


@dataclass(frozen=True)
class RigidityVerdict:
    quantity: int
    verdict: str  # "not rigid" or "inconclusive"


def nonrigidity_test(chi: int, K2: int, h0_theta: int = 0) -> RigidityVerdict:
    q = 10 * chi - 2 * K2 + h0_theta
    return RigidityVerdict(q, "not rigid" if q > 0 else "inconclusive")
