"""Independent brute-force oracles shared by the test modules."""

from fractions import Fraction
from math import comb

from kummerlab.zgroups import FiniteAbelianGroup, cyclic_span


def fermat_chern(n):
    """``(K^2, e)`` of a smooth degree-``n`` surface in P^3 from ``c(T) = (1+H)^4 / (1+nH)``."""
    # coefficients of H^0, H^1, H^2 in (1+H)^4 * sum (-nH)^k
    c = [sum(Fraction(comb(4, i)) * (-n) ** (k - i) for i in range(k + 1)) for k in range(3)]
    c1, c2 = c[1], c[2]
    return int(c1 * c1 * n), int(c2 * n)


def beauville_free(T1, T2, n):
    G = FiniteAbelianGroup((n, n))
    span = lambda T: set().union(*(cyclic_span(G(x)) for x in T))
    return span(T1) & span(T2) == {G.zero()}


def brute_packing(table, S):
    """Largest subset with no quotient ``g^-1 h`` in ``S``, by exhaustive include/exclude search."""
    N = table.order
    inv = [table.inverse(g) for g in range(N)]
    clash = [
        frozenset(h for h in range(N) if h != g and (table.mul(inv[g], h) in S or table.mul(inv[h], g) in S))
        for g in range(N)
    ]
    best = 0

    def grow(free, size):
        nonlocal best
        if size + len(free) <= best:
            return
        if not free:
            best = size
            return
        v = min(free)
        grow(free - clash[v] - {v}, size + 1)
        grow(free - {v}, size)

    grow(frozenset(range(N)), 0)
    return best


def conjugation_classes(table):
    """Conjugacy classes merged with their inverses, identity excluded."""
    e = table.identity
    N = table.order
    classes = []
    seen = set()
    for x in range(N):
        if x == e or x in seen:
            continue
        cl = {table.mul(table.mul(g, x), table.inverse(g)) for g in range(N)}
        cl |= {table.inverse(y) for y in cl}
        seen |= cl
        classes.append(cl)
    return classes
