"""Finite Abelian groups ``Z/n_1 + ... + Z/n_k`` and their characters.

Elements and characters share one coordinate representation: a tuple of
residues, the ``i``-th one reduced modulo ``n_i``.  Everything here is an
immutable value.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

# breadth-first closure is used up to this many elements, lattice index above
BFS_LIMIT = 4096


@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        for n in orders:
            if n < 2:
                raise ValueError(f"cyclic factor orders must be >= 2, got {n}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def cyclic_power(cls, n: int, k: int) -> "FiniteAbelianGroup":
        return cls((n,) * k)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def __call__(self, *coords) -> "GroupElement":
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def basis(self) -> list["GroupElement"]:
        out = []
        for i in range(self.rank):
            c = [0] * self.rank
            c[i] = 1
            out.append(GroupElement(self, tuple(c)))
        return out

    def elements(self) -> Iterator["GroupElement"]:
        import itertools

        for c in itertools.product(*(range(n) for n in self.orders)):
            yield GroupElement(self, c)

    def characters(self) -> Iterator["Character"]:
        for x in self.elements():
            yield Character(self, x.coords)

    def __str__(self):
        if not self.orders:
            return "0"
        return " + ".join(f"Z/{n}" for n in self.orders)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.group.rank:
            raise ValueError(
                f"expected {self.group.rank} coordinates, got {len(coords)}"
            )
        coords = tuple(c % n for c, n in zip(coords, self.group.orders))
        object.__setattr__(self, "coords", coords)

    def _check(self, other: "GroupElement"):
        if other.group != self.group:
            raise ValueError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> int:
        return element_order(self)

    def __repr__(self):
        return f"{self.coords}"


@dataclass(frozen=True)
class Character:
    """A character of ``group``; ``coords[i]`` is read modulo ``orders[i]``.

    The value on ``x`` is ``sum(a_i * x_i * e / n_i)`` modulo the exponent
    ``e``, i.e. the usual pairing scaled into a single ``Z/e``.
    """

    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.group.rank:
            raise ValueError("character coordinate count does not match group")
        coords = tuple(c % n for c, n in zip(coords, self.group.orders))
        object.__setattr__(self, "coords", coords)

    @property
    def modulus(self) -> int:
        return self.group.exponent

    def __call__(self, x: GroupElement) -> int:
        if x.group != self.group:
            raise ValueError("character and element belong to different groups")
        e = self.group.exponent
        return sum(a * c * (e // n) for a, c, n in zip(self.coords, x.coords, self.group.orders)) % e

    def __mul__(self, j: int) -> "Character":
        return Character(self.group, tuple(j * a for a in self.coords))

    __rmul__ = __mul__

    def __neg__(self) -> "Character":
        return self * -1

    def is_trivial(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> int:
        return element_order(GroupElement(self.group, self.coords))

    def __repr__(self):
        return f"chi{self.coords}"


def element_order(x: GroupElement) -> int:
    return math.lcm(
        *(n // math.gcd(n, c) for n, c in zip(x.group.orders, x.coords))
    ) if x.coords else 1


def cyclic_span(x: GroupElement) -> frozenset[GroupElement]:
    """All multiples ``0, x, 2x, ...`` of ``x``."""
    return frozenset(k * x for k in range(element_order(x)))


def direct_sum_test(x: GroupElement, y: GroupElement) -> bool:
    """True iff the cyclic subgroups generated by ``x`` and ``y`` meet only in 0."""
    if x.group != y.group:
        raise ValueError("elements belong to different groups")
    sx = cyclic_span(x)
    return all((k * y) not in sx for k in range(1, element_order(y)))


def _closure_coords(elems: Iterable[GroupElement], G: FiniteAbelianGroup) -> set[tuple[int, ...]]:
    orders = G.orders
    gens = [g.coords for g in elems if not g.is_zero()]
    zero = (0,) * G.rank
    seen = {zero}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple((a + b) % n for a, b, n in zip(x, g, orders))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def subgroup_closure(elems: Iterable[GroupElement], G: FiniteAbelianGroup) -> set[GroupElement]:
    """Breadth-first saturation of ``elems`` under addition."""
    return {GroupElement(G, c) for c in _closure_coords(elems, G)}


def generates(elems: Sequence[GroupElement], G: FiniteAbelianGroup) -> bool:
    for g in elems:
        if g.group != G:
            raise ValueError("element not in the given group")
    if G.order <= BFS_LIMIT:
        return len(_closure_coords(elems, G)) == G.order
    # too large to saturate: the quotient G/<elems> must be trivial
    rows = [list(g.coords) for g in elems]
    Q, _ = quotient_group(G.orders, rows)
    return Q.order == 1


def unit_translates(c: Character) -> list[Character]:
    """Distinct characters ``j*c`` with ``j`` a unit modulo the exponent."""
    if c.is_trivial():
        raise ValueError("unit translates of the trivial character are not defined")
    e = c.group.exponent
    out: list[Character] = []
    seen = set()
    for j in range(1, e):
        if math.gcd(j, e) != 1:
            continue
        t = c * j
        if t.coords not in seen:
            seen.add(t.coords)
            out.append(t)
    return out


def euler_phi(n: int) -> int:
    return sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


# ---------------------------------------------------------------------------
# integer Smith normal form and quotients of Z^r


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return ``(D, U, V)`` with ``U A V = D`` diagonal and ``U, V`` unimodular.

    The diagonal entries are non-negative and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        done = False
        while not done:
            done = True
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
                        break
            if not done:
                continue
            p = D[t][t]
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
                        break
            if not done:
                continue
            # divisibility of the remaining block
            p = D[t][t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        add_row(i, t, 1)
                        done = False
                        break
                if not done:
                    break
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return D, U, V


def _inverse_unimodular(V: list[list[int]]) -> list[list[int]]:
    from fractions import Fraction

    n = len(V)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    out = [[row[n + j] for j in range(n)] for row in M]
    for row in out:
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism given by the images of the source's standard generators."""

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    images: tuple[GroupElement, ...]

    def __call__(self, x: GroupElement) -> GroupElement:
        out = self.target.zero()
        for c, img in zip(x.coords, self.images):
            out = out + c * img
        return out

    def is_surjective(self) -> bool:
        return generates(list(self.images), self.target)


def quotient_group(orders: Sequence[int], relations: Sequence[Sequence[int]]):
    """Quotient of ``Z/orders[0] + ...`` by the subgroup spanned by ``relations``.

    Returns ``(Q, proj)`` where ``Q`` is in invariant-factor form and
    ``proj[j]`` is the image in ``Q`` of the ``j``-th standard generator.
    """
    Q, proj, _ = quotient_lift(orders, relations)
    return Q, proj


def quotient_lift(orders: Sequence[int], relations: Sequence[Sequence[int]]):
    """Like :func:`quotient_group` but also lifts ``Q``'s generators to ``Z^r``.

    The third return value lists, for each generator of ``Q``, integer
    coefficients on the standard generators of the source.
    """
    r = len(orders)
    rows = [[orders[i] if j == i else 0 for j in range(r)] for i in range(r)]
    rows += [list(map(int, rel)) for rel in relations]
    D, _, V = smith_normal_form(rows)
    diag = [D[i][i] for i in range(r)]
    if any(d == 0 for d in diag):
        raise ValueError("quotient is infinite")
    keep = [i for i, d in enumerate(diag) if d > 1]
    Q = FiniteAbelianGroup(tuple(diag[i] for i in keep))
    proj = [Q(tuple(V[j][i] for i in keep)) for j in range(r)]
    Vinv = _inverse_unimodular(V)
    lifts = [Vinv[i] for i in keep]
    return Q, proj, lifts
