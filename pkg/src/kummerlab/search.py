"""Finite searches: del Pezzo monodromy orbits, Beauville structures, packings.

The del Pezzo search enumerates assignments of ``(Z/n)^2`` values to the
ten lines that satisfy the linear equivalence relations, keeps the
admissible ones (values pairwise independent at all fifteen nodes) and
splits them into orbits under ``GL(2, Z/n) x S_5``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np

from .geometry import DP_INDEX, DP_LINES, DP_NODES, DP_PAIRS, dot5
from .zgroups import FiniteAbelianGroup

# parallelism cap read from the environment; the searches below are serial
THREADS = int(os.environ.get("KUMMERLAB_THREADS", "1") or 1)


# ---------------------------------------------------------------------------
# linear algebra over Z/p


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def nullspace_mod_p(A: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of ``{x : A x = 0}`` over ``F_p`` by Gauss-Jordan elimination."""
    rows = [[x % p for x in row] for row in A]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol] % p
        basis.append(v)
    return basis


def relation_matrix() -> list[list[int]]:
    """Rows ``x . E_{ij}`` for the basis classes ``x``; kernel = relation-consistent values."""
    basis = [tuple(int(s == t) for s in range(5)) for t in range(5)]
    return [[dot5(x, E) for E in DP_LINES] for x in basis]


# ---------------------------------------------------------------------------
# del Pezzo assignments


@dataclass
class AssignmentSet:
    n: int
    kernel_dim: int
    values: np.ndarray  # (N, 10, 2) residues, rows in increasing lexicographic order

    def __len__(self):
        return len(self.values)

    def as_tuples(self, i: int) -> tuple[tuple[int, int], ...]:
        return tuple((int(a), int(b)) for a, b in self.values[i])

    def codes(self) -> np.ndarray:
        if getattr(self, "_codes", None) is None:
            self._codes = _encode(self.values, self.n)
        return self._codes


def _encode(values: np.ndarray, n: int) -> np.ndarray:
    digits = values[..., 0].astype(np.int64) * n + values[..., 1]
    weights = (n * n) ** np.arange(9, -1, -1, dtype=np.int64)
    return digits @ weights


def enumerate_assignments(n: int = 5) -> AssignmentSet:
    """All admissible assignments, in lexicographic order.

    Each coordinate of the values ranges over the kernel of the relation
    matrix, so candidates are pairs of kernel vectors.  Admissible means
    that at every node the two values are independent; this forces the
    values to be nonzero and to generate ``(Z/n)^2``.
    """
    if not _is_prime(n):
        raise ValueError("the del Pezzo enumeration needs n prime")
    ker = nullspace_mod_p(relation_matrix(), n)
    d = len(ker)
    coeffs = np.array(list(itertools.product(range(n), repeat=d)), dtype=np.int64)
    K = (coeffs @ np.array(ker, dtype=np.int64)) % n  # all kernel vectors, (n^d, 10)
    A = np.array([a for a, _ in DP_NODES])
    B = np.array([b for _, b in DP_NODES])
    # a kernel vector that is zero at both ends of some node can never pass
    chunks = []
    step = max(1, 2**20 // len(K))
    for s in range(0, len(K), step):
        X = K[s : s + step]
        det = X[:, None, A] * K[None, :, B] - X[:, None, B] * K[None, :, A]
        ok = np.all(det % n != 0, axis=2)
        i, j = np.nonzero(ok)
        if len(i):
            chunks.append(np.stack([X[i], K[j]], axis=2))
    vals = np.concatenate(chunks) if chunks else np.zeros((0, 10, 2), dtype=np.int64)
    order = np.argsort(_encode(vals, n), kind="stable")
    return AssignmentSet(n, d, vals[order])


def gl2_generators(n: int) -> list[tuple[int, int, int, int]]:
    """Generators ``(a, b, c, d)`` of ``GL(2, Z/p)``, acting by ``(x, y) -> (ax + by, cx + dy)``."""
    g = next(x for x in range(1, n) if all(pow(x, (n - 1) // q, n) != 1 for q in _prime_factors(n - 1)))
    return [(g, 0, 0, 1), (1, 1, 0, 1), (0, 1, n - 1, 0)]


def _prime_factors(m: int) -> list[int]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


S5_GENERATORS = [(2, 1, 3, 4, 5), (2, 3, 4, 5, 1)]


def pair_permutation(perm: Sequence[int]) -> list[int]:
    """Index map on the ten lines induced by ``i -> perm[i-1]``."""
    return [DP_INDEX[tuple(sorted((perm[i - 1], perm[j - 1])))] for i, j in DP_PAIRS]


def act(values: np.ndarray, n: int, M=None, perm=None) -> np.ndarray:
    """Apply ``(M, perm)``: the value on ``E_{sigma i, sigma j}`` becomes ``M`` times the value on ``E_{ij}``."""
    out = values
    if M is not None:
        a, b, c, d = M
        x, y = out[..., 0], out[..., 1]
        out = np.stack([(a * x + b * y) % n, (c * x + d * y) % n], axis=-1)
    if perm is not None:
        P = pair_permutation(perm)
        new = np.empty_like(out)
        new[..., P, :] = out
        out = new
    return out


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller index as root so roots are lexicographic minima
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


@dataclass
class Orbit:
    representative: tuple[tuple[int, int], ...]
    size: int
    members: np.ndarray = field(repr=False)
    invariants: dict = field(default_factory=dict)


@dataclass
class OrbitClassification:
    n: int
    kernel_dim: int
    admissible: int
    orbits: list[Orbit]
    assignments: AssignmentSet | None = field(default=None, repr=False)
    labels: np.ndarray | None = field(default=None, repr=False)


def orbit_labels(aset: AssignmentSet) -> np.ndarray:
    """Component index of each assignment; components are numbered by their least member."""
    n, vals = aset.n, aset.values
    codes = _encode(vals, n)
    uf = UnionFind(len(vals))
    moves = [dict(M=M) for M in gl2_generators(n)] + [dict(perm=p) for p in S5_GENERATORS]
    for mv in moves:
        moved = _encode(act(vals, n, **mv), n)
        img = np.minimum(np.searchsorted(codes, moved), len(codes) - 1)
        if not np.array_equal(codes[img], moved):
            raise AssertionError("admissible set is not closed under the symmetry group")
        for x, y in zip(range(len(vals)), img.tolist()):
            uf.union(x, y)
    roots = np.array([uf.find(i) for i in range(len(vals))])
    _, labels = np.unique(roots, return_inverse=True)
    return labels


def classify_orbits(n: int = 5, with_invariants: bool = True, verify_members: bool = True) -> OrbitClassification:
    aset = enumerate_assignments(n)
    labels = orbit_labels(aset)
    orbits = []
    for lab in range(labels.max() + 1 if len(labels) else 0):
        idx = np.nonzero(labels == lab)[0]
        orbits.append(Orbit(aset.as_tuples(int(idx[0])), len(idx), idx))
    if with_invariants:
        from .covers import delpezzo_spec, invariants_general
        from .hodge import irregularity_and_pg

        for orb in orbits:
            spec = delpezzo_spec(orb.representative, n)
            inv = invariants_general(spec)
            q, pg = irregularity_and_pg(spec)
            orb.invariants = {"K2": inv.K2, "e": inv.e, "chi": inv.chi, "q": q, "p_g": pg}
            if verify_members:
                qs, pgs = q_pg_vectorized(aset.values[orb.members], n)
                if not (np.all(qs == q) and np.all(pgs == pg)):
                    raise AssertionError("q or p_g varies within an orbit")
                # K2 and e depend only on the orders of the values, all equal to n here
                orb.invariants["verified_members"] = int(len(orb.members))
    return OrbitClassification(n, aset.kernel_dim, len(aset), orbits, aset, labels)


def q_pg_vectorized(values: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(q, p_g)`` of many del Pezzo covers at once, summed over characters."""
    from .geometry import K_DP, cohomology_delpezzo

    classes = np.array(DP_LINES, dtype=np.int64)
    q = np.zeros(len(values), dtype=np.int64)
    pg = np.zeros(len(values), dtype=np.int64)
    cache = {}
    for a, b in itertools.product(range(n), repeat=2):
        if a == b == 0:
            continue
        chi_vals = (a * values[..., 0] + b * values[..., 1]) % n
        tot = chi_vals @ classes
        if np.any(tot % n):
            raise ValueError("L_chi not integral")
        L = tot // n
        # rows are short and small, so a scalar key keeps np.unique one-dimensional
        base = 2 * int(np.abs(L).max()) + 1
        keys = (L + base // 2) @ (base ** np.arange(4, -1, -1, dtype=np.int64))
        ukeys, first, inv = np.unique(keys, return_index=True, return_inverse=True)
        hq = np.empty(len(ukeys), dtype=np.int64)
        hp = np.empty(len(ukeys), dtype=np.int64)
        for t, pos in enumerate(first):
            key = tuple(int(x) for x in L[pos])
            if key not in cache:
                h1 = cohomology_delpezzo(tuple(-x for x in key))[1]
                h0 = cohomology_delpezzo(tuple(k + x for k, x in zip(K_DP, key)))[0]
                cache[key] = (h1, h0)
            hq[t], hp[t] = cache[key]
        q += hq[inv.ravel()]
        pg += hp[inv.ravel()]
    return q, pg


def assignment_orbit_index(assignment: Sequence, aset: AssignmentSet, labels: np.ndarray) -> int | None:
    """Orbit label of an assignment (ten values in line order), or ``None`` if inadmissible."""
    v = np.array([list(assignment)], dtype=np.int64) % aset.n
    code = _encode(v, aset.n)[0]
    codes = aset.codes()
    pos = int(np.searchsorted(codes, code))
    if pos < len(codes) and codes[pos] == code:
        return int(labels[pos])
    return None


# ---------------------------------------------------------------------------
# Beauville structures on (Z/n)^2


@dataclass(frozen=True)
class BeauvilleDatum:
    n: int
    T1: tuple[tuple[int, int], ...]
    T2: tuple[tuple[int, int], ...]


@dataclass
class BeauvilleResult:
    n: int
    witnesses: list[BeauvilleDatum]
    searched: int

    @property
    def exists(self) -> bool:
        return bool(self.witnesses)


def _span(x, n):
    return {((k * x[0]) % n, (k * x[1]) % n) for k in range(n)}


def stabilizer_set(T, n) -> set:
    out = set()
    for x in T:
        out |= _span(x, n)
    return out


def _basis_change(a, b, n):
    """Matrix sending ``a -> e1``, ``b -> e2``, as a function on pairs."""
    det = (a[0] * b[1] - a[1] * b[0]) % n
    inv = pow(det, -1, n)
    # inverse of the matrix with columns a, b
    m = ((b[1] * inv) % n, (-b[0] * inv) % n, (-a[1] * inv) % n, (a[0] * inv) % n)
    return lambda x: ((m[0] * x[0] + m[1] * x[1]) % n, (m[2] * x[0] + m[3] * x[1]) % n)


def canonical_beauville(T1, T2, n) -> tuple:
    """Least normal form over automorphisms, triple permutations and swapping the triples."""
    best = None
    for A, B in ((T1, T2), (T2, T1)):
        for i, j in itertools.permutations(range(3), 2):
            f = _basis_change(A[i], A[j], n)
            key = tuple(sorted(f(x) for x in B))
            if best is None or key < best:
                best = key
    return best


def _generating_pairs(n):
    for a in itertools.product(range(n), repeat=2):
        for b in itertools.product(range(n), repeat=2):
            if math.gcd(a[0] * b[1] - a[1] * b[0], n) == 1:
                yield a, b


def beauville_search(n: int) -> BeauvilleResult:
    """All abelian Beauville structures on ``(Z/n)^2`` up to symmetry.

    A generating pair of ``(Z/n)^2`` is a basis, so the first triple can be
    moved to ``(e1, e2, -e1-e2)``; the second triple runs over all bases.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    e1, e2 = (1, 0), (0, 1)
    T1 = (e1, e2, ((-1) % n, (-1) % n))
    S1 = stabilizer_set(T1, n)
    found = {}
    count = 0
    for a, b in _generating_pairs(n):
        count += 1
        c = ((-a[0] - b[0]) % n, (-a[1] - b[1]) % n)
        T2 = (a, b, c)
        if any(x in S1 for x in T2):
            continue
        if stabilizer_set(T2, n) & S1 != {(0, 0)}:
            continue
        key = canonical_beauville(T1, T2, n)
        if key not in found:
            found[key] = BeauvilleDatum(n, T1, tuple(key))
    witnesses = [found[k] for k in sorted(found)]
    return BeauvilleResult(n, witnesses, count)


# ---------------------------------------------------------------------------
# Cayley tables and sphere packings


class CayleyTableError(ValueError):
    pass


@dataclass(frozen=True)
class CayleyTable:
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        N = len(t)
        if N == 0 or any(len(row) != N for row in t):
            raise CayleyTableError("table must be square and nonempty")
        full = set(range(N))
        for i, row in enumerate(t):
            if set(row) != full:
                raise CayleyTableError(f"row {i} is not a permutation")
        for j in range(N):
            if {t[i][j] for i in range(N)} != full:
                raise CayleyTableError(f"column {j} is not a permutation")
        ident = [e for e in range(N) if all(t[e][j] == j and t[j][e] == j for j in range(N))]
        if not ident:
            raise CayleyTableError("no identity element")
        # associativity: full check when cheap, otherwise on a deterministic sample
        triples = itertools.product(range(N), repeat=3) if N <= 64 else _sample_triples(N)
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise CayleyTableError(f"not associative at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        t = self.table
        return next(e for e in range(self.order) if t[e][0] == 0 and all(t[e][j] == j for j in range(self.order)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        e = self.identity
        return self.table[a].index(e)


def _sample_triples(N):
    rng = np.random.default_rng(0)
    return rng.integers(0, N, size=(20000, 3)).tolist()


def cyclic_table(n: int) -> CayleyTable:
    return CayleyTable(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def abelian_table(G: FiniteAbelianGroup) -> tuple[CayleyTable, list]:
    elems = list(G.elements())
    index = {x: i for i, x in enumerate(elems)}
    return CayleyTable(tuple(tuple(index[x + y] for y in elems) for x in elems)), elems


def dihedral_table(n: int) -> CayleyTable:
    """Elements ``r^k`` (index ``k``) and ``s r^k`` (index ``n + k``)."""

    def mul(a, b):
        fa, ka = divmod(a, n)
        fb, kb = divmod(b, n)
        # s r^k s = r^{-k}
        k = ((-ka if fb else ka) + kb) % n
        return ((fa + fb) % 2) * n + k

    return CayleyTable(tuple(tuple(mul(a, b) for b in range(2 * n)) for a in range(2 * n)))


def symmetric_table(k: int) -> tuple[CayleyTable, list]:
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    t = tuple(tuple(index[tuple(p[q[x]] for x in range(k))] for q in perms) for p in perms)
    return CayleyTable(t), perms


def direct_product_table(A: CayleyTable, B: CayleyTable) -> CayleyTable:
    na, nb = A.order, B.order
    t = tuple(
        tuple(A.table[i // nb][j // nb] * nb + B.table[i % nb][j % nb] for j in range(na * nb))
        for i in range(na * nb)
    )
    return CayleyTable(t)


def validate_stabilizers(G: CayleyTable, S) -> list[str]:
    S = set(S)
    problems = []
    bad = sorted(x for x in S if not 0 <= x < G.order)
    if bad:
        return [f"indices out of range: {bad}"]
    for x in sorted(S):
        if G.inverse(x) not in S:
            problems.append(f"{x} is in the set but its inverse {G.inverse(x)} is not")
    for x in sorted(S):
        for g in range(G.order):
            y = G.mul(G.mul(g, x), G.inverse(g))
            if y not in S:
                problems.append(f"conjugate {y} of {x} is missing")
                break
    return problems


@dataclass(frozen=True)
class PackingResult:
    r: int
    elements: tuple[int, ...]
    mode: str


def _compatible(G: CayleyTable, S: set, g: int, h: int) -> bool:
    return G.mul(G.inverse(g), h) not in S


def packing_graph(G: CayleyTable, S) -> nx.Graph:
    S = set(S)
    gr = nx.Graph()
    gr.add_nodes_from(range(G.order))
    inv = [G.inverse(g) for g in range(G.order)]
    for g in range(G.order):
        for h in range(g + 1, G.order):
            if G.mul(inv[g], h) not in S:
                gr.add_edge(g, h)
    return gr


def sphere_packing(G: CayleyTable, S, mode: str = "exact") -> PackingResult:
    """Largest set of elements whose pairwise quotients ``g_i^{-1} g_j`` avoid ``S``."""
    S = set(S)
    problems = validate_stabilizers(G, S)
    if problems:
        raise CayleyTableError("; ".join(problems))
    if mode == "exact":
        if G.order > 5000:
            raise ValueError("exact packing is limited to groups of order <= 5000")
        clique, _ = nx.max_weight_clique(packing_graph(G, S), weight=None)
        chosen = tuple(sorted(clique))
    elif mode == "greedy":
        picked = []
        for g in range(G.order):
            if all(_compatible(G, S, h, g) and _compatible(G, S, g, h) for h in picked):
                picked.append(g)
        chosen = tuple(picked)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for g, h in itertools.permutations(chosen, 2):
        assert _compatible(G, S, g, h)
    return PackingResult(len(chosen), chosen, mode)


@dataclass(frozen=True)
class EmbeddingReport:
    embeds: bool
    H1_free: bool
    H2_free: bool
    witnesses: tuple[tuple[int, int], ...]  # (h2, h1) with h2 h1 in S


def _is_subgroup(G: CayleyTable, H) -> bool:
    H = set(H)
    return G.identity in H and all(G.mul(a, b) in H for a in H for b in H)


def embedding_check(G: CayleyTable, H1, H2, S) -> EmbeddingReport:
    """Whether ``H2 (H1 - {1})`` misses ``S``; also reports freeness of each ``H_i``."""
    for name, H in (("H1", H1), ("H2", H2)):
        if not _is_subgroup(G, H):
            raise CayleyTableError(f"{name} is not a subgroup")
    S, e = set(S), G.identity
    wit = tuple(
        (h2, h1) for h2 in sorted(set(H2)) for h1 in sorted(set(H1)) if h1 != e and G.mul(h2, h1) in S
    )
    free1 = not (set(H1) - {e}) & S
    free2 = not (set(H2) - {e}) & S
    return EmbeddingReport(not wit, free1, free2, wit)


# ---------------------------------------------------------------------------
# polygonal groups


@dataclass(frozen=True)
class PolygonalType:
    orders: tuple[int, ...]
    hyperbolic: bool
    curvature: Fraction  # -2 + sum(1 - 1/n_i)
    group_order: int | None
    base_genus: int | None
    hurwitz_bound_ok: bool | None


def polygonal_type(orders: Sequence[int], group_order: int | None = None) -> PolygonalType:
    if len(orders) < 3 or any(m < 2 for m in orders):
        raise ValueError("need at least three orders, each >= 2")
    curv = -2 + sum(1 - Fraction(1, m) for m in orders)
    b = hur = None
    if group_order is not None:
        twice = group_order * curv  # 2(b - 1)
        if twice.denominator != 1 or twice.numerator % 2:
            raise ValueError(f"non-integral genus: 2(b-1) = {twice}")
        b = int(twice) // 2 + 1
        hur = group_order <= 84 * (b - 1) if b >= 2 else None
    return PolygonalType(tuple(orders), curv > 0, curv, group_order, b, hur)
