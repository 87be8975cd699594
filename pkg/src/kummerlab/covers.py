"""Abelian covers of the ambient surfaces and their Chern invariants.

A cover is given by a finite Abelian group ``G`` and one monodromy element
per branch curve.  Such data define a cover exactly when, for every class
``x`` of the (unimodular) Picard lattice, ``sum_j (x . D_j) g_j = 0`` in
``G``.  On the blown-up plane this says that the line monodromies add up
to zero and that the exceptional curve over a point gets the sum of the
monodromies of the lines through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import configs as cfg
from .geometry import (
    DP_PAIRS,
    BranchGeometry,
    blowup_plane,
    delpezzo5,
)
from .zgroups import (
    FiniteAbelianGroup,
    GroupElement,
    Homomorphism,
    direct_sum_test,
    element_order,
    generates,
    quotient_lift,
)


class CoverError(ValueError):
    """Invalid or unsupported cover data."""


class UnsupportedCover(CoverError):
    pass


@dataclass(frozen=True)
class CoverSpec:
    geometry: BranchGeometry
    group: FiniteAbelianGroup
    monodromy: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "monodromy", tuple(self.monodromy))
        if len(self.monodromy) != len(self.geometry.curves):
            raise CoverError(
                f"{len(self.geometry.curves)} branch curves but {len(self.monodromy)} monodromy elements"
            )
        for g in self.monodromy:
            if g.group != self.group:
                raise CoverError(f"monodromy element {g} is not in {self.group}")

    @property
    def orders(self) -> list[int]:
        return [element_order(g) for g in self.monodromy]


def relation_defects(spec: CoverSpec) -> list[tuple[int, GroupElement]]:
    """Basis vectors ``x`` with ``sum_j (x . D_j) g_j != 0``, and that sum."""
    lat = spec.geometry.lattice
    out = []
    for t in range(lat.rank):
        x = tuple(int(s == t) for s in range(lat.rank))
        total = spec.group.zero()
        for c, g in zip(spec.geometry.curves, spec.monodromy):
            total = total + lat.dot(x, c.cls) * g
        if not total.is_zero():
            out.append((t, total))
    return out


def validate(spec: CoverSpec) -> list[str]:
    problems = []
    if not generates(list(spec.monodromy), spec.group):
        problems.append("monodromy elements do not generate the group")
    for t, total in relation_defects(spec):
        problems.append(f"linear equivalence relation violated along basis class {t}: sum is {total}")
    return problems


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    failures: tuple[tuple[int, int], ...]
    checked: int


def smoothness_check(spec: CoverSpec) -> SmoothnessReport:
    """Node-by-node test that the two inertia subgroups form a direct sum."""
    zero = [spec.geometry.curves[i].label for i, g in enumerate(spec.monodromy) if g.is_zero()]
    if zero:
        raise UnsupportedCover(f"zero monodromy on branch curves {', '.join(zero)} is not supported")
    bad = tuple(
        (a, b) for a, b in spec.geometry.nodes if not direct_sum_test(spec.monodromy[a], spec.monodromy[b])
    )
    return SmoothnessReport(not bad, bad, len(spec.geometry.nodes))


# ---------------------------------------------------------------------------
# building specs


def plane_spec(c: cfg.LineConfiguration, group: FiniteAbelianGroup, lines: Sequence) -> CoverSpec:
    """Cover of the blown-up plane from the monodromy of the lines alone.

    Exceptional monodromies are filled in as ``eps_i = sum_j a_{j,i} g_j``.
    """
    geom = blowup_plane(c)
    gs = [x if isinstance(x, GroupElement) else group(tuple(x)) for x in lines]
    if len(gs) != c.r:
        raise CoverError(f"expected {c.r} line monodromies, got {len(gs)}")
    a = c.incidence()
    eps = []
    for i in range(c.k):
        s = group.zero()
        for j in range(c.r):
            if a[j][i]:
                s = s + gs[j]
        eps.append(s)
    return CoverSpec(geom, group, tuple(gs + eps))


def kummer_spec(c: cfg.LineConfiguration, n: int) -> CoverSpec:
    """The maximal cover with all lines branched of order ``n``: group ``(Z/n)^r / diag``."""
    G, proj, _ = quotient_lift([n] * c.r, [[1] * c.r])
    return plane_spec(c, G, proj)


def delpezzo_spec(assignment: Mapping, n: int = 5) -> CoverSpec:
    """Cover of the del Pezzo surface from values on the ten lines.

    ``assignment`` maps index pairs ``(i, j)`` (or strings ``"ij"``) to
    elements of ``(Z/n)^2``; a plain sequence in pair order is accepted too.
    """
    G = FiniteAbelianGroup((n, n))
    if isinstance(assignment, Mapping):
        norm = {}
        for key, val in assignment.items():
            pair = tuple(sorted(int(ch) for ch in key)) if isinstance(key, str) else tuple(sorted(key))
            norm[pair] = val
        missing = [p for p in DP_PAIRS if p not in norm]
        if missing:
            raise CoverError(f"assignment misses lines {missing}")
        values = [norm[p] for p in DP_PAIRS]
    else:
        values = list(assignment)
        if len(values) != 10:
            raise CoverError("a del Pezzo assignment has ten values")
    return CoverSpec(delpezzo5(), G, tuple(G(tuple(v)) for v in values))


def maximal_cover(spec: CoverSpec) -> tuple[CoverSpec, Homomorphism]:
    """The maximal cover with the same branching orders on the lines.

    Returns the new spec and the surjection ``G'' -> G`` sending the
    tautological generators to the given line monodromies.  A spec that is
    already maximal is returned unchanged.
    """
    geom = spec.geometry
    if geom.kind != "plane":
        raise CoverError("maximal covers are defined for plane line configurations")
    r = geom.n_lines
    d = [element_order(g) for g in spec.monodromy[:r]]
    if any(x == 1 for x in d):
        raise UnsupportedCover("a line with trivial monodromy is not a branch curve")
    Q, proj, lifts = quotient_lift(d, [[1] * r])
    images = []
    for coeffs in lifts:
        s = spec.group.zero()
        for cj, g in zip(coeffs, spec.monodromy[:r]):
            s = s + cj * g
        images.append(s)
    hom = Homomorphism(Q, spec.group, tuple(images))
    if Q.order == spec.group.order:
        return spec, hom
    return plane_spec(geom.config, Q, proj), hom


def spec_from_json(data: dict) -> CoverSpec:
    if not isinstance(data, dict):
        raise CoverError("cover spec must be a JSON object")
    if data.get("surface") == "delpezzo5":
        if "assignment" not in data:
            raise CoverError("delpezzo5 cover: missing field 'assignment'")
        orders = data.get("group", {}).get("orders", [5, 5])
        if len(orders) != 2 or orders[0] != orders[1]:
            raise CoverError("delpezzo5 cover: group must be (Z/n)^2")
        return delpezzo_spec(data["assignment"], orders[0])
    if "configuration" not in data:
        raise CoverError("cover spec: missing field 'configuration'")
    conf = data["configuration"]
    c = cfg.builtin(conf) if isinstance(conf, str) else cfg.LineConfiguration.from_json(conf)
    try:
        G = FiniteAbelianGroup(tuple(data["group"]["orders"]))
    except (KeyError, TypeError):
        raise CoverError("cover spec: field 'group.orders' missing or malformed") from None
    mono = data.get("monodromy")
    if not isinstance(mono, list):
        raise CoverError("cover spec: field 'monodromy' must be a list")
    for i, m in enumerate(mono):
        if not isinstance(m, (list, tuple)) or len(m) != G.rank:
            raise CoverError(f"cover spec: monodromy[{i}] must have {G.rank} coordinates")
    if len(mono) == c.r:
        return plane_spec(c, G, mono)
    if len(mono) == c.r + c.k:
        return CoverSpec(blowup_plane(c), G, tuple(G(tuple(m)) for m in mono))
    raise CoverError(f"cover spec: need {c.r} or {c.r + c.k} monodromy entries, got {len(mono)}")


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class ChernInvariants:
    K2: int
    e: int
    chi: int
    sigma: Fraction
    nu: Fraction | None
    nuC: Fraction | None
    flags: dict = field(compare=False, hash=False)
    realizability: str = "complex"
    path: str = field(default="", compare=False)

    @classmethod
    def from_K2_e(cls, K2, e, realizability: str = "complex", path: str = "") -> "ChernInvariants":
        K2, e = Fraction(K2), Fraction(e)
        chi = (K2 + e) / 12
        if K2.denominator != 1 or e.denominator != 1:
            raise CoverError(f"non-integral Chern numbers K2={K2}, e={e}")
        if chi.denominator != 1:
            raise CoverError(f"non-integral chi = {chi} (K2={K2}, e={e})")
        K2, e, chi = int(K2), int(e), int(chi)
        nu = Fraction(K2, chi) if chi else None
        nuC = Fraction(K2, e) if e else None
        flags = {
            "positive_index": K2 > 2 * e,
            "bmy_satisfied": K2 <= 3 * e,
            "bmy_violated": K2 > 3 * e,
            "ball_quotient": e > 0 and K2 == 3 * e,
            "bidisk_slope": e > 0 and K2 == 2 * e,
        }
        return cls(K2, e, chi, Fraction(K2 - 2 * e, 3), nu, nuC, flags, realizability, path)

    def check_identities(self) -> list[str]:
        out = []
        if 12 * self.chi != self.K2 + self.e:
            out.append("Noether")
        if self.sigma != Fraction(self.K2 - 2 * self.e, 3):
            out.append("signature")
        if self.nu is not None and self.nuC is not None and self.nu != 12:
            if self.nuC != self.nu / (12 - self.nu):
                out.append("slope relation")
        return out

    def as_dict(self) -> dict:
        return {
            "K2": self.K2,
            "e": self.e,
            "chi": self.chi,
            "sigma": self.sigma,
            "nu": self.nu,
            "nuC": self.nuC,
            **self.flags,
            "realizability": self.realizability,
        }


def _realizability(spec: CoverSpec) -> str:
    c = spec.geometry.config
    return c.realizability if c is not None else "complex"


def invariants_general(spec: CoverSpec) -> ChernInvariants:
    """Invariants from the pulled-back log canonical class and Euler additivity."""
    rep = smoothness_check(spec)
    if not rep.smooth:
        raise CoverError(f"cover is singular over nodes {list(rep.failures)}")
    geom, lat = spec.geometry, spec.geometry.lattice
    N = spec.group.order
    d = spec.orders
    K = [Fraction(x) for x in lat.canonical]
    for c, dc in zip(geom.curves, d):
        w = 1 - Fraction(1, dc)
        K = [k + w * x for k, x in zip(K, c.cls)]
    K2 = N * lat.square(K)
    e = N * geom.e_complement
    e += sum(Fraction(N, dc) * c.open_euler for c, dc in zip(geom.curves, d))
    e += sum(Fraction(N, d[a] * d[b]) for a, b in geom.nodes)
    return ChernInvariants.from_K2_e(K2, e, _realizability(spec), "general")


def invariants_kummer_plane(c: cfg.LineConfiguration, n: int) -> ChernInvariants:
    """Closed forms for the exponent-``n`` Kummer cover of a line configuration."""
    if n < 2:
        raise CoverError("exponent must be >= 2")
    for i, p in enumerate(c.points):
        # eps_i is a sum of v_i of the r tautological generators
        if p.valency >= c.r:
            raise CoverError(f"point {i}: exceptional branching order drops below {n}")
    st = cfg.stats(c)
    r, k, v, delta = st.as_tuple()
    w = 1 - Fraction(1, n)
    K2 = n ** (r - 1) * ((-3 + r * w) ** 2 - sum((1 + w * (1 - p.valency)) ** 2 for p in c.points))
    e = n ** (r - 1) * (
        k + 3 - w * (2 * k - 2 * v + 2 * r - 2 * delta) - (1 - Fraction(1, n * n)) * (v + delta)
    )
    return ChernInvariants.from_K2_e(K2, e, c.realizability, "kummer")


def invariants_hk_delpezzo(n: int) -> ChernInvariants:
    if n < 2:
        raise CoverError("exponent must be >= 2")
    K2 = 5 * (n - 2) ** 2 * n**3
    e = n**3 * (2 * n * n - 10 * n + 15)
    return ChernInvariants.from_K2_e(K2, e, "complex", "hk_delpezzo")


@dataclass(frozen=True)
class BCDHRecord:
    invariants: ChernInvariants
    b: int
    g: int
    singular_fibres: int = 3


def bcdh_invariants(n: int) -> BCDHRecord:
    """The ``(Z/n)^2`` cover of the del Pezzo surface and its fibration data."""
    if math.gcd(n, 6) != 1 or n < 5:
        raise CoverError(f"need gcd(n, 6) = 1 and n >= 5, got n = {n}")
    K2 = 5 * (n - 2) ** 2
    e = 2 * n * n - 10 * n + 15
    inv = ChernInvariants.from_K2_e(K2, e, "complex", "bcdh")
    b, g = (n - 1) // 2, n - 1
    assert inv.e == 4 * (g - 1) * (b - 1) + 3
    return BCDHRecord(inv, b, g)
