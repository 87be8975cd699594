"""Eigensheaf cohomology of Abelian covers, and cyclic covers of the line.

For a cover with group ``G`` the pushforward of the structure sheaf splits
into ``O(-L_chi)`` over the characters, with
``n L_chi = sum_j [chi(g_j)] D_j`` (``[.]`` the residue in ``[0, n)``).
Irregularity and geometric genus are sums of ``h^1(-L_chi)`` and
``h^0(K + L_chi)`` over the nontrivial characters.

The second half treats the family of cyclic covers
``z^n = y0^m0 y1^m1 (y1 - y0)^m2 (y1 - x y0)^m3`` of the line, whose
eigenspace dimensions decide the Fujita splitting of the Hodge bundle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .covers import CoverError, CoverSpec, invariants_general
from .geometry import cohomology
from .zgroups import Character, FiniteAbelianGroup, unit_translates


@dataclass(frozen=True)
class CharacterBundle:
    character: Character
    L: tuple[int, ...]
    h0_canonical_twist: int
    h1_negative: int
    values: tuple[int, ...]  # [chi(g_j)] for every branch curve


def _L_class(spec: CoverSpec, chi: Character) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = chi.modulus
    vals = tuple(chi(g) for g in spec.monodromy)
    rank = spec.geometry.lattice.rank
    tot = [0] * rank
    for v, c in zip(vals, spec.geometry.curves):
        for t in range(rank):
            tot[t] += v * c.cls[t]
    if any(x % n for x in tot):
        raise CoverError(f"L_chi is not integral for chi = {chi.coords}: {n} L = {tot}")
    return tuple(x // n for x in tot), vals


def character_bundles(spec: CoverSpec) -> list[CharacterBundle]:
    geom = spec.geometry
    K = geom.lattice.canonical
    out = []
    for chi in spec.group.characters():
        if chi.is_trivial():
            continue
        L, vals = _L_class(spec, chi)
        h0 = cohomology(geom, tuple(k + x for k, x in zip(K, L)))[0]
        h1 = cohomology(geom, tuple(-x for x in L))[1]
        out.append(CharacterBundle(chi, L, h0, h1, vals))
    return out


def irregularity_and_pg(spec: CoverSpec) -> tuple[int, int]:
    bundles = character_bundles(spec)
    q = sum(b.h1_negative for b in bundles)
    pg = sum(b.h0_canonical_twist for b in bundles)
    chi = invariants_general(spec).chi
    if 1 - q + pg != chi:
        raise AssertionError(f"1 - q + p_g = {1 - q + pg} but chi = {chi}")
    return q, pg


@dataclass(frozen=True)
class CanonicalCharacter:
    character: Character
    L: int
    exponents: tuple[int, ...]  # multiplicity of each ramification curve in z_chi


@dataclass(frozen=True)
class CanonicalInventory:
    characters: tuple[CanonicalCharacter, ...]
    common_curves: tuple[int, ...]
    base_nodes: tuple[tuple[int, int], ...]


def canonical_characters(spec: CoverSpec) -> CanonicalInventory:
    """Characters contributing to ``H^0(K_S)`` on a cover of the plane.

    Each contributes ``z_chi * H^0(O(L_chi - 3))``; ``z_chi`` vanishes on the
    ramification curve over ``D_j`` to order ``n - 1 - [chi(g_j)]``.  Also
    reported: curves on which every ``z_chi`` vanishes, and nodes where every
    ``z_chi`` vanishes on one of the two ramification curves.
    """
    geom = spec.geometry
    if geom.kind != "plane" or geom.lattice.rank != 1:
        raise CoverError("canonical characters are computed for covers of P^2 branched on lines")
    found = []
    for b in character_bundles(spec):
        if b.h0_canonical_twist > 0:
            n = b.character.modulus
            found.append(CanonicalCharacter(b.character, b.L[0], tuple(n - 1 - v for v in b.values)))
    found.sort(key=lambda c: c.character.coords)
    ncurves = len(geom.curves)
    common = tuple(j for j in range(ncurves) if found and all(c.exponents[j] > 0 for c in found))
    base = tuple(
        (a, b)
        for a, b in geom.nodes
        if found and all(c.exponents[a] > 0 or c.exponents[b] > 0 for c in found)
    )
    return CanonicalInventory(tuple(found), common, base)


# ---------------------------------------------------------------------------
# cyclic covers of P^1 branched at four points


@dataclass(frozen=True)
class CyclicQuadrupleCover:
    n: int
    m: tuple[int, int, int, int]

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        object.__setattr__(self, "m", m)
        if len(m) != 4:
            raise ValueError("four exponents are required")
        if any(x <= 0 for x in m):
            raise ValueError("exponents must be positive")
        if any(math.gcd(x, self.n) != 1 for x in m):
            raise ValueError("exponents must be coprime to n (degenerate residues are not supported)")
        if sum(m) % self.n:
            raise ValueError("exponents must sum to 0 mod n")

    @property
    def normalized(self) -> bool:
        return sum(self.m) == self.n and all(x <= self.n - 3 for x in self.m)


def eigen_dims(c: CyclicQuadrupleCover) -> list[int]:
    """``dim V^{chi_i}`` for ``i = 1..n-1``."""
    n = c.n
    dims = []
    for i in range(1, n):
        res = [i * m % n for m in c.m]
        if 0 in res:
            raise ValueError(f"residue [i m_j] vanishes for i = {i}")
        num = sum(res) - n
        assert num % n == 0
        dims.append(num // n)
    for i in range(1, n):
        d = dims[i - 1]
        assert d in (0, 1, 2), f"dimension {d} out of range"
        assert d + dims[n - i - 1] == 2, "conjugate dimensions must add to 2"
    return dims


@dataclass(frozen=True)
class FujitaSplit:
    n: int
    dims: tuple[int, ...]
    classification: tuple[str, ...]
    rank_A: int
    rank_Q: tuple[int, ...]
    flat_characters: tuple[int, ...]
    indefinite_translates: tuple[tuple[int, int], ...]  # (flat i, translate j*i of dim 1)
    infinite_monodromy: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dims": list(self.dims),
            "classification": list(self.classification),
            "rank_A": self.rank_A,
            "rank_Q": list(self.rank_Q),
            "flat_characters": list(self.flat_characters),
            "indefinite_translates": [list(p) for p in self.indefinite_translates],
            "infinite_monodromy": self.infinite_monodromy,
        }


_KIND = {2: "flat_rank2", 1: "ample_rank1", 0: "absorbed"}


def fujita_split(c: CyclicQuadrupleCover) -> FujitaSplit:
    """Split into the ample part (dimension 1) and flat rank-2 pieces.

    A flat piece is declared to have infinite monodromy when a Galois
    conjugate of its character has dimension 1, so that the invariant
    Hermitian form there is indefinite.  Failure of this test says nothing
    about finiteness.
    """
    dims = eigen_dims(c)
    n = c.n
    flat = tuple(i for i in range(1, n) if dims[i - 1] == 2)
    witnesses = []
    for i in flat:
        # Galois conjugates of chi_i are chi_{j i} for units j
        chi = Character(FiniteAbelianGroup((n,)), (i,))
        for t in unit_translates(chi):
            if dims[t.coords[0] - 1] == 1:
                witnesses.append((i, t.coords[0]))
                break
    return FujitaSplit(
        n,
        tuple(dims),
        tuple(_KIND[d] for d in dims),
        sum(1 for d in dims if d == 1),
        tuple(2 for _ in flat),
        flat,
        tuple(witnesses),
        bool(witnesses),
    )


def cyclic_p1_genus(n: int, exponents: Sequence[int]) -> int:
    """Genus of the cyclic ``n``-fold cover of the line with the given local exponents."""
    if n < 1:
        raise ValueError("n must be positive")
    if sum(exponents) % n:
        raise ValueError("exponents must sum to 0 mod n")
    if math.gcd(n, *exponents) != 1:
        raise ValueError("the cover is disconnected")
    twice = -2 * n + sum(n - math.gcd(n, a) for a in exponents)  # 2g - 2
    assert twice % 2 == 0
    return twice // 2 + 1
