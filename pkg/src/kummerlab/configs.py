"""Line configurations in the plane, recorded combinatorially.

A configuration is ``r`` lines together with its points of valency at
least three.  Double points are never stored: their number follows from
``C(r,2) = sum C(v_i,2) + delta``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class MultiplePoint:
    valency: int
    lines: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "lines", frozenset(int(j) for j in self.lines))


@dataclass(frozen=True)
class LineConfiguration:
    r: int
    points: tuple[MultiplePoint, ...] = ()
    # 0 means realizable over C, p > 0 means only in characteristic p
    char: int = 0
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def realizability(self) -> str:
        return "complex" if self.char == 0 else f"only_char_p({self.char})"

    def incidence(self) -> list[list[int]]:
        """``a[j][i] = 1`` iff line ``j`` passes through multiple point ``i``."""
        return [[int(j in p.lines) for p in self.points] for j in range(self.r)]

    def residual_double_points(self) -> list[tuple[int, int]]:
        """Pairs of lines that do not meet at a recorded multiple point."""
        covered = set()
        for p in self.points:
            covered.update(itertools.combinations(sorted(p.lines), 2))
        return [pr for pr in itertools.combinations(range(self.r), 2) if pr not in covered]

    def to_json(self) -> dict:
        return {
            "lines": self.r,
            "points": [{"valency": p.valency, "lines": sorted(p.lines)} for p in self.points],
            "realizability": "complex" if self.char == 0 else {"char": self.char},
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "LineConfiguration":
        if not isinstance(data, dict):
            raise ValueError("configuration must be a JSON object")
        if "lines" not in data:
            raise ValueError("configuration: missing field 'lines'")
        r = data["lines"]
        if not isinstance(r, int):
            raise ValueError("configuration: field 'lines' must be an integer")
        pts = []
        for i, p in enumerate(data.get("points", [])):
            try:
                pts.append(MultiplePoint(int(p["valency"]), frozenset(p["lines"])))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"configuration: points[{i}] malformed ({exc!r})") from None
        real = data.get("realizability", "complex")
        if real == "complex":
            char = 0
        elif isinstance(real, dict) and isinstance(real.get("char"), int):
            char = real["char"]
        else:
            raise ValueError("configuration: realizability must be 'complex' or {'char': p}")
        return cls(r, tuple(pts), char, name or data.get("name", ""))


@dataclass(frozen=True)
class ConfigStats:
    r: int
    k: int
    v: int
    delta: int

    def as_tuple(self):
        return (self.r, self.k, self.v, self.delta)


def stats(c: LineConfiguration) -> ConfigStats:
    v = sum(p.valency for p in c.points)
    delta = comb(c.r, 2) - sum(comb(p.valency, 2) for p in c.points)
    return ConfigStats(c.r, c.k, v, delta)


def validate(c: LineConfiguration) -> list[str]:
    problems = []
    if c.r < 3:
        problems.append(f"need at least 3 lines, got {c.r}")
    for i, p in enumerate(c.points):
        if p.valency < 3:
            problems.append(f"point {i}: valency {p.valency} < 3 (only points of valency >= 3 are recorded)")
        if len(p.lines) != p.valency:
            problems.append(f"point {i}: valency {p.valency} but {len(p.lines)} incident lines")
        bad = sorted(j for j in p.lines if not 0 <= j < c.r)
        if bad:
            problems.append(f"point {i}: line indices out of range {bad}")
    for (i, p), (j, q) in itertools.combinations(enumerate(c.points), 2):
        common = p.lines & q.lines
        if len(common) > 1:
            problems.append(f"points {i} and {j} share lines {sorted(common)}")
    for line in range(c.r):
        # each point on a line consumes v-1 of the other r-1 lines
        through = [p for p in c.points if line in p.lines]
        used = sum(p.valency - 1 for p in through)
        if used > c.r - 1:
            problems.append(f"line {line}: point incidences need {used} > {c.r - 1} other lines")
    if stats(c).delta < 0:
        problems.append(f"negative double point count {stats(c).delta}")
    if c.char < 0:
        problems.append("characteristic must be 0 or a prime")
    return problems


# ---------------------------------------------------------------------------
# catalog


def general_position(r: int) -> LineConfiguration:
    return LineConfiguration(r, (), 0, f"general_position({r})")


def complete_quadrangle() -> LineConfiguration:
    """The six lines through pairs of four general points.

    Lines are numbered in the order L12, L13, L14, L23, L24, L34 and point
    ``i`` (0-based) is ``P_{i+1}``.
    """
    pairs = list(itertools.combinations(range(4), 2))
    pts = tuple(
        MultiplePoint(3, frozenset(j for j, pr in enumerate(pairs) if i in pr)) for i in range(4)
    )
    return LineConfiguration(6, pts, 0, "complete_quadrangle")


def fano_char2() -> LineConfiguration:
    # line j = {j, j+1, j+3} mod 7; point p lies on lines p, p-1, p-3
    pts = tuple(
        MultiplePoint(3, frozenset({p % 7, (p - 1) % 7, (p - 3) % 7})) for p in range(7)
    )
    return LineConfiguration(7, pts, 2, "fano_char2")


def _affine_lines_f3():
    pts = [(x, y) for x in range(3) for y in range(3)]
    lines = set()
    for a, b in itertools.combinations(pts, 2):
        d = ((b[0] - a[0]) % 3, (b[1] - a[1]) % 3)
        lines.add(frozenset(((a[0] + t * d[0]) % 3, (a[1] + t * d[1]) % 3) for t in range(3)))
    return pts, sorted(lines, key=lambda L: sorted(L))


def hesse() -> LineConfiguration:
    """Twelve lines through pairs of the nine flexes of a cubic.

    Only the nine 4-fold points are multiple; the remaining twelve
    intersections (vertices of the four triangles) are double points.
    """
    pts, lines = _affine_lines_f3()
    mp = tuple(
        MultiplePoint(4, frozenset(j for j, L in enumerate(lines) if p in L)) for p in pts
    )
    return LineConfiguration(12, mp, 0, "hesse")


def dual_hesse() -> LineConfiguration:
    pts, lines = _affine_lines_f3()
    index = {p: i for i, p in enumerate(pts)}
    mp = tuple(MultiplePoint(3, frozenset(index[p] for p in L)) for L in lines)
    return LineConfiguration(9, mp, 0, "dual_hesse")


_BUILTINS = {
    "complete_quadrangle": complete_quadrangle,
    "fano_char2": fano_char2,
    "hesse": hesse,
    "dual_hesse": dual_hesse,
}

BUILTIN_NAMES = ("general_position(r)",) + tuple(_BUILTINS)


def builtin(name: str) -> LineConfiguration:
    m = re.fullmatch(r"general_position\((\d+)\)|general_position[:_]?(\d+)", name.strip())
    if m:
        return general_position(int(m.group(1) or m.group(2)))
    try:
        return _BUILTINS[name.strip()]()
    except KeyError:
        raise KeyError(f"unknown configuration {name!r}; known: {', '.join(BUILTIN_NAMES)}") from None
