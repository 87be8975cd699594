"""Intersection numerics on the ambient surfaces of the covers.

Two kinds of ambient surface are modelled: the plane blown up at the
multiple points of a line configuration, and the del Pezzo surface of
degree 5.  Lattice vectors are integer (or Fraction) tuples in the basis
``(L, E_1, ..., E_k)`` with Gram matrix ``diag(1, -1, ..., -1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .configs import LineConfiguration


@dataclass(frozen=True)
class PicardLattice:
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    euler: int

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, x: Sequence, y: Sequence):
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))

    def square(self, x: Sequence):
        return self.dot(x, x)

    def K2(self) -> int:
        return self.square(self.canonical)

    def chi_O(self) -> Fraction:
        return Fraction(self.K2() + self.euler, 12)

    def riemann_roch(self, D: Sequence) -> Fraction:
        """``chi(O(D)) = chi(O_Y) + (D^2 - D.K)/2``."""
        return self.chi_O() + Fraction(self.square(D) - self.dot(D, self.canonical), 2)


def blowup_lattice(k: int) -> PicardLattice:
    gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(k + 1)) for i in range(k + 1))
    return PicardLattice(gram, (-3,) + (1,) * k, 3 + k)


@dataclass(frozen=True)
class BranchCurve:
    cls: tuple[int, ...]
    open_euler: int
    label: str
    genus: int = 0


@dataclass(frozen=True)
class BranchGeometry:
    kind: str  # "plane" or "delpezzo5"
    lattice: PicardLattice
    curves: tuple[BranchCurve, ...]
    nodes: tuple[tuple[int, int], ...]
    config: LineConfiguration | None = None
    # number of curves that are strict transforms of configuration lines
    n_lines: int = 0
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def e_complement(self) -> int:
        """Euler number of ``Y - D``, additive over the stratification."""
        return self.lattice.euler - sum(c.open_euler for c in self.curves) - len(self.nodes)

    def check(self) -> list[str]:
        problems = []
        count = {}
        for a, b in self.nodes:
            key = (min(a, b), max(a, b))
            count[key] = count.get(key, 0) + 1
        for a, b in itertools.combinations(range(len(self.curves)), 2):
            ab = self.lattice.dot(self.curves[a].cls, self.curves[b].cls)
            if ab != count.get((a, b), 0):
                problems.append(f"curves {a},{b}: intersection {ab} but {count.get((a, b), 0)} nodes")
        for i, c in enumerate(self.curves):
            on = sum(1 for pr in self.nodes if i in pr)
            if c.open_euler != 2 - 2 * c.genus - on:
                problems.append(f"curve {i}: open Euler number {c.open_euler} inconsistent with {on} nodes")
        return problems


def blowup_plane(c: LineConfiguration) -> BranchGeometry:
    """Blow up the multiple points; the branch locus is lines plus exceptionals."""
    r, k = c.r, c.k
    lat = blowup_lattice(k)
    a = c.incidence()
    residual = c.residual_double_points()
    curves = []
    for j in range(r):
        cls = (1,) + tuple(-a[j][i] for i in range(k))
        on = sum(1 for pr in residual if j in pr) + sum(a[j])
        curves.append(BranchCurve(cls, 2 - on, f"D{j}"))
    for i, p in enumerate(c.points):
        cls = tuple(1 if t == i + 1 else 0 for t in range(k + 1))
        curves.append(BranchCurve(cls, 2 - p.valency, f"E{i}"))
    nodes = list(residual)
    nodes += [(j, r + i) for j in range(r) for i in range(k) if a[j][i]]
    return BranchGeometry("plane", lat, tuple(curves), tuple(sorted(nodes)), c, r)


# ---------------------------------------------------------------------------
# the del Pezzo surface of degree 5

DP_PAIRS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(1, 6), 2))
DP_INDEX = {p: i for i, p in enumerate(DP_PAIRS)}


def dp_line_class(i: int, j: int) -> tuple[int, ...]:
    """Class of ``E_{i,j}`` in the basis ``(L, E_1..E_4)``."""
    i, j = min(i, j), max(i, j)
    if j == 5:
        return tuple(1 if t == i else 0 for t in range(5))
    h, k = sorted({1, 2, 3, 4} - {i, j})
    return tuple(1 if t == 0 else (-1 if t in (h, k) else 0) for t in range(5))


DP_LINES: tuple[tuple[int, ...], ...] = tuple(dp_line_class(*p) for p in DP_PAIRS)
DP_LATTICE = blowup_lattice(4)
DP_NODES: tuple[tuple[int, int], ...] = tuple(
    (a, b) for a, b in itertools.combinations(range(10), 2) if not set(DP_PAIRS[a]) & set(DP_PAIRS[b])
)


def delpezzo5() -> BranchGeometry:
    curves = tuple(BranchCurve(cls, -1, f"E{i}{j}") for (i, j), cls in zip(DP_PAIRS, DP_LINES))
    return BranchGeometry("delpezzo5", DP_LATTICE, curves, DP_NODES)


def dot5(x, y):
    return x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3] - x[4] * y[4]


K_DP = DP_LATTICE.canonical


def s5_matrix(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Lattice automorphism induced by ``perm`` (a permutation of 1..5, as a tuple
    with ``perm[i-1] = sigma(i)``) acting by ``E_{i,j} -> E_{sigma i, sigma j}``.

    Returned as the list of images of the basis vectors.
    """
    s = {i + 1: perm[i] for i in range(5)}
    img = [None] * 5
    # L = E_{1,2} + E_{3,5} + E_{4,5}
    parts = [dp_line_class(s[1], s[2]), dp_line_class(s[3], s[5]), dp_line_class(s[4], s[5])]
    img[0] = tuple(sum(p[t] for p in parts) for t in range(5))
    for i in range(1, 5):
        img[i] = dp_line_class(s[i], s[5])
    return tuple(img)


def s5_apply(perm: Sequence[int], D: Sequence[int]) -> tuple[int, ...]:
    M = s5_matrix(perm)
    return tuple(sum(D[b] * M[b][t] for b in range(5)) for t in range(5))


def h0_delpezzo(D: Sequence[int]) -> int:
    """``h^0(O(D))`` on the degree-5 del Pezzo surface.

    Fixed (-1)-curves are peeled off until the class is nef or visibly not
    effective.  For nef ``D`` the higher cohomology vanishes, so Riemann-Roch
    gives the answer.
    """
    D = tuple(int(x) for x in D)
    if len(D) != 5:
        raise ValueError("del Pezzo classes have 5 coordinates")
    while True:
        if not any(D):
            return 1
        if -dot5(D, K_DP) < 0:
            return 0
        for E in DP_LINES:
            if dot5(D, E) < 0:
                D = tuple(d - e for d, e in zip(D, E))
                break
        else:
            return 1 + (dot5(D, D) - dot5(D, K_DP)) // 2


def cohomology_delpezzo(D: Sequence[int]) -> tuple[int, int, int]:
    h0 = h0_delpezzo(D)
    h2 = h0_delpezzo(tuple(k - d for k, d in zip(K_DP, D)))
    chi = 1 + Fraction(dot5(D, D) - dot5(D, K_DP), 2)
    h1 = h0 + h2 - chi
    assert h1 >= 0 and h1.denominator == 1, f"negative h1 for {D}"
    return h0, int(h1), h2


def h0_plane(d: int) -> int:
    return comb(d + 2, 2) if d >= 0 else 0


def cohomology_plane(d: int) -> tuple[int, int, int]:
    return h0_plane(d), 0, h0_plane(-3 - d)


def supports_delpezzo_cohomology(g: BranchGeometry) -> bool:
    """Ambient surfaces whose classes embed in the degree-5 del Pezzo lattice.

    This holds for the blow-up of at most four points of the plane, no
    three collinear.  Collinearity is visible combinatorially only when the
    points are pairwise joined by configuration lines, so that is required.
    """
    if g.kind == "delpezzo5":
        return True
    c = g.config
    if c is None or not 1 <= c.k <= 4:
        return False
    a = c.incidence()
    for P, Q in itertools.combinations(range(c.k), 2):
        if not any(a[j][P] and a[j][Q] for j in range(c.r)):
            return False
    return all(sum(a[j]) <= 2 for j in range(c.r))


def cohomology(g: BranchGeometry, D: Sequence[int]) -> tuple[int, int, int]:
    """``(h0, h1, h2)`` of a divisor class on a supported ambient surface."""
    if g.kind == "plane" and g.lattice.rank == 1:
        return cohomology_plane(int(D[0]))
    if supports_delpezzo_cohomology(g):
        # pulling back along further blow-ups at general points preserves h^i
        return cohomology_delpezzo(tuple(D) + (0,) * (5 - len(D)))
    raise NotImplementedError("cohomology is only available on P^2 and the degree-5 del Pezzo surface")
