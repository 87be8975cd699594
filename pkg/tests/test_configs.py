import itertools
import json
from math import comb

import pytest

from kummerlab.configs import (
    LineConfiguration,
    MultiplePoint,
    builtin,
    complete_quadrangle,
    dual_hesse,
    fano_char2,
    general_position,
    hesse,
    stats,
    validate,
)

CATALOG = ["complete_quadrangle", "fano_char2", "hesse", "dual_hesse", "general_position(4)", "general_position(6)"]


def test_stats_examples():
    assert stats(general_position(6)).as_tuple() == (6, 0, 0, 15)
    assert stats(complete_quadrangle()).as_tuple() == (6, 4, 12, 3)
    assert stats(fano_char2()).as_tuple() == (7, 7, 21, 0)
    assert stats(builtin("general_position(4)")).as_tuple() == (4, 0, 0, 6)


def test_hesse_pair():
    dh = dual_hesse()
    assert (dh.r, dh.k, stats(dh).delta) == (9, 12, 0)
    assert all(p.valency == 3 for p in dh.points)
    h = hesse()
    assert (h.r, h.k) == (12, 9)
    assert all(p.valency == 4 for p in h.points)
    # the twelve triangle vertices are ordinary double points
    assert stats(h).delta == 12
    assert len(h.residual_double_points()) == 12


def test_fano_realizability_tag():
    assert fano_char2().char == 2
    assert fano_char2().realizability == "only_char_p(2)"
    assert complete_quadrangle().realizability == "complex"


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_valid_and_counts(name):
    c = builtin(name)
    assert validate(c) == []
    s = stats(c)
    assert sum(comb(p.valency, 2) for p in c.points) + s.delta == comb(c.r, 2)
    # each pair of lines meets exactly once
    seen = set(c.residual_double_points())
    for p in c.points:
        for pair in itertools.combinations(sorted(p.lines), 2):
            assert pair not in seen
            seen.add(pair)
    assert len(seen) == comb(c.r, 2)


def test_validate_catches_breaches():
    two_shared = LineConfiguration(5, (MultiplePoint(3, {0, 1, 2}), MultiplePoint(3, {0, 1, 3})))
    assert any("share lines" in m for m in validate(two_shared))
    double = LineConfiguration(4, (MultiplePoint(2, {0, 1}),))
    assert any("valency 2" in m for m in validate(double))
    wrong_size = LineConfiguration(4, (MultiplePoint(3, {0, 1}),))
    assert validate(wrong_size)
    out_of_range = LineConfiguration(4, (MultiplePoint(3, {0, 1, 7}),))
    assert any("out of range" in m for m in validate(out_of_range))
    assert validate(fano_char2()) == []


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin("pentagon")


def test_json_roundtrip():
    for name in CATALOG:
        c = builtin(name)
        back = LineConfiguration.from_json(json.loads(json.dumps(c.to_json())))
        assert back.r == c.r and back.char == c.char
        assert [sorted(p.lines) for p in back.points] == [sorted(p.lines) for p in c.points]


def test_json_errors():
    with pytest.raises(ValueError, match="lines"):
        LineConfiguration.from_json({"points": []})
    with pytest.raises(ValueError, match="realizability"):
        LineConfiguration.from_json({"lines": 4, "realizability": "real"})
    with pytest.raises(ValueError, match="points\\[0\\]"):
        LineConfiguration.from_json({"lines": 4, "points": [{"valency": 3}]})
