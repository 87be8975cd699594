"""Named configurations and monodromy data shipped with the CLI."""

from __future__ import annotations

from . import configs
from .geometry import DP_PAIRS

# five points of an affine line in (Z/5)^2 missing the origin
PARDINI_AFFINE = ((0, 1), (1, 1), (2, 1), (3, 1), (4, 1))
PARDINI_SECOND = ((1, 0), (0, 1), (1, 1), (2, 4), (1, 4))

# Orbit representatives printed as values on the six quadrangle lines.  The
# line order is not recorded with them; QUADRANGLE_ORDER is one order under
# which the four tuples complete to admissible assignments in four
# different orbits.
U_TUPLES = {
    "U1": ((1, 0), (1, 0), (0, 1), (2, 1), (2, 1), (4, 2)),
    "U2": ((1, 0), (1, 0), (0, 1), (2, 1), (4, 2), (2, 1)),
    "U3": ((1, 0), (1, 0), (0, 1), (4, 1), (3, 2), (1, 1)),
    "U4": ((1, 0), (1, 0), (0, 1), (1, 1), (0, 3), (2, 0)),
}
U_AMBIGUOUS = True
# lines through P_p and P_q, in the order the six values are read
QUADRANGLE_ORDER = ((1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (2, 3))


def complete_quadrangle_tuple(six, n: int = 5, order=QUADRANGLE_ORDER) -> tuple[tuple[int, int], ...]:
    """Extend values on the six quadrangle lines to all ten lines of the del Pezzo surface.

    The line through ``P_p, P_q`` is ``E_{i,j}`` with ``{i,j}`` the
    complementary pair, and ``E_{i,5}`` gets the sum over the lines through
    ``P_i``.
    """
    vals = {}
    for (p, q), x in zip(order, six):
        vals[tuple(sorted({1, 2, 3, 4} - {p, q}))] = tuple(x)
    for P in range(1, 5):
        through = [x for (p, q), x in zip(order, six) if P in (p, q)]
        vals[(P, 5)] = (sum(x[0] for x in through) % n, sum(x[1] for x in through) % n)
    return tuple(vals[p] for p in DP_PAIRS)


def entries() -> dict[str, dict]:
    out = {}
    for name in ("complete_quadrangle", "fano_char2", "hesse", "dual_hesse"):
        c = configs.builtin(name)
        out[name] = {"kind": "configuration", "data": c.to_json()}
    out["general_position(r)"] = {"kind": "configuration", "data": "r lines, no multiple points"}
    out["pardini_affine"] = {
        "kind": "monodromy",
        "data": {"configuration": "general_position(5)", "group": {"orders": [5, 5]}, "monodromy": PARDINI_AFFINE},
    }
    out["pardini_second"] = {
        "kind": "monodromy",
        "data": {"configuration": "general_position(5)", "group": {"orders": [5, 5]}, "monodromy": PARDINI_SECOND},
    }
    for name, six in U_TUPLES.items():
        out[name] = {
            "kind": "delpezzo_tuple",
            "data": {
                "six": six,
                "line_order": QUADRANGLE_ORDER,
                "ambiguous_ordering": U_AMBIGUOUS,
                "assignment": {f"{i}{j}": v for (i, j), v in zip(DP_PAIRS, complete_quadrangle_tuple(six))},
            },
        }
    return out
