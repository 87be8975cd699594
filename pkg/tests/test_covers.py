from fractions import Fraction
from math import gcd

import pytest

from kummerlab.configs import (
    LineConfiguration,
    MultiplePoint,
    builtin,
    complete_quadrangle,
    fano_char2,
    general_position,
)
from kummerlab.covers import (
    CoverError,
    CoverSpec,
    UnsupportedCover,
    bcdh_invariants,
    delpezzo_spec,
    invariants_general,
    invariants_hk_delpezzo,
    invariants_kummer_plane,
    kummer_spec,
    maximal_cover,
    plane_spec,
    smoothness_check,
    spec_from_json,
    validate,
)
from kummerlab.zgroups import FiniteAbelianGroup

Z5x5 = FiniteAbelianGroup((5, 5))
PARDINI = [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]
BUILTINS = ["general_position(4)", "general_position(6)", "complete_quadrangle", "fano_char2", "hesse", "dual_hesse"]


def fermat_oracle(n):
    """Chern numbers of a smooth degree-n surface in P^3 from (1+H)^4 / (1+nH)."""
    top = [1, 4, 6]  # (1+H)^4 up to H^2
    inv = [1, -n, n * n]  # 1/(1+nH) up to H^2
    c1 = top[1] + inv[1]
    c2 = top[2] + top[1] * inv[1] + inv[2]
    return c1 * c1 * n, c2 * n


def test_smoothness_examples():
    s = plane_spec(general_position(5), Z5x5, PARDINI)
    assert smoothness_check(s).smooth
    bad = plane_spec(general_position(5), Z5x5, [(1, 0), (1, 0), (0, 1), (2, 1), (1, 3)])
    rep = smoothness_check(bad)
    assert not rep.smooth and (0, 1) in rep.failures
    assert smoothness_check(kummer_spec(complete_quadrangle(), 5)).smooth


def test_zero_monodromy_rejected():
    s = plane_spec(general_position(4), Z5x5, [(1, 0), (4, 0), (0, 1), (0, 4)])
    assert smoothness_check(s).failures == ((0, 1), (2, 3))
    with pytest.raises(UnsupportedCover):
        smoothness_check(plane_spec(general_position(3), Z5x5, [(1, 0), (4, 0), (0, 0)]))


def test_relations_checked():
    s = plane_spec(general_position(5), Z5x5, [(0, 1), (1, 1), (2, 1), (3, 1), (4, 2)])
    assert any("relation" in m for m in validate(s))
    G = kummer_spec(complete_quadrangle(), 5).group
    good = kummer_spec(complete_quadrangle(), 5)
    assert validate(good) == []
    mono = list(good.monodromy)
    mono[-1] = mono[-1] + mono[0]  # wrong exceptional monodromy
    assert validate(CoverSpec(good.geometry, G, tuple(mono)))


def test_maximal_cover_examples():
    for r in (3, 4, 5, 6):
        for n in (2, 3, 5):
            spec, hom = maximal_cover(kummer_spec(general_position(r), n))
            assert spec.group.order == n ** (r - 1)
    s = plane_spec(general_position(4), Z5x5, [(1, 0), (4, 0), (0, 1), (0, 4)])
    m, hom = maximal_cover(s)
    assert m.group.orders == (5, 5, 5)
    assert hom.is_surjective()
    for j in range(4):
        assert hom(m.monodromy[j]) == s.monodromy[j]
    again, _ = maximal_cover(m)
    assert again is m


def test_maximal_cover_of_pardini_dominates():
    s = plane_spec(general_position(5), Z5x5, PARDINI)
    m, hom = maximal_cover(s)
    assert m.group.order == 5**4
    assert all(hom(x) == y for x, y in zip(m.monodromy, s.monodromy))


def test_general_examples():
    inv = invariants_general(plane_spec(general_position(5), Z5x5, PARDINI))
    assert (inv.K2, inv.e, inv.chi) == (25, 35, 5)
    inv = invariants_general(kummer_spec(general_position(6), 2))
    assert (inv.K2, inv.e, inv.chi) == (0, 24, 2)


def test_bcdh_via_general_formula():
    from kummerlab.catalog import U_TUPLES, complete_quadrangle_tuple

    for six in U_TUPLES.values():
        spec = delpezzo_spec(complete_quadrangle_tuple(six))
        assert validate(spec) == []
        inv = invariants_general(spec)
        assert (inv.K2, inv.e, inv.chi) == (45, 15, 5)


@pytest.mark.parametrize("n", range(2, 13))
def test_fermat(n):
    inv = invariants_kummer_plane(general_position(4), n)
    assert (inv.K2, inv.e) == fermat_oracle(n) == (n * (n - 4) ** 2, n**3 - 4 * n * n + 6 * n)


def test_kummer_examples():
    q = invariants_kummer_plane(complete_quadrangle(), 5)
    assert (q.K2, q.e, q.nuC) == (5625, 1875, 3)
    assert q.flags["ball_quotient"]
    f = invariants_kummer_plane(fano_char2(), 5)
    assert f.nuC == 4 + Fraction(1, 13)
    assert f.flags["bmy_violated"] and f.realizability == "only_char_p(2)"


def test_kummer_rejects_pencil():
    pencil = LineConfiguration(3, (MultiplePoint(3, {0, 1, 2}),))
    with pytest.raises(CoverError):
        invariants_kummer_plane(pencil, 5)


@pytest.mark.parametrize("name", BUILTINS)
def test_kummer_closed_form_matches_general(name):
    c = builtin(name)
    for n in range(2, 10):
        spec, _ = maximal_cover(kummer_spec(c, n))
        assert validate(spec) == []
        assert invariants_general(spec) == invariants_kummer_plane(c, n)


def test_two_models_agree():
    for n in range(5, 14):
        if gcd(n, 6) == 1:
            assert invariants_hk_delpezzo(n) == invariants_kummer_plane(complete_quadrangle(), n)


def test_hk_delpezzo():
    assert invariants_hk_delpezzo(5).nuC == 3
    assert invariants_hk_delpezzo(2).K2 == 0
    slopes = [invariants_hk_delpezzo(n).nuC for n in range(5, 40)]
    assert all(a > b for a, b in zip(slopes, slopes[1:]))
    assert all(s > Fraction(5, 2) for s in slopes)
    for n in range(2, 20):
        assert invariants_hk_delpezzo(n).nuC == Fraction(5 * (n - 2) ** 2, 2 * n * n - 10 * n + 15)


def test_bcdh():
    rec = bcdh_invariants(5)
    assert (rec.invariants.K2, rec.invariants.e, rec.invariants.chi, rec.b, rec.g) == (45, 15, 5, 2, 4)
    assert rec.invariants.e - 4 * (rec.g - 1) * (rec.b - 1) == 3
    rec = bcdh_invariants(7)
    assert (rec.b, rec.g, rec.invariants.chi) == (3, 6, 14)
    with pytest.raises(CoverError):
        bcdh_invariants(9)


def test_identities_on_records():
    records = [invariants_hk_delpezzo(n) for n in range(2, 15)]
    records += [invariants_kummer_plane(builtin(b), n) for b in BUILTINS for n in range(2, 10)]
    for inv in records:
        assert inv.check_identities() == []
        assert 12 * inv.chi == inv.K2 + inv.e


def test_spec_from_json():
    s = spec_from_json({"configuration": "general_position(5)", "group": {"orders": [5, 5]}, "monodromy": PARDINI})
    assert invariants_general(s).K2 == 25
    d = spec_from_json({"surface": "delpezzo5", "assignment": {"12": [0, 1], "13": [0, 1], "14": [0, 1],
                        "15": [0, 2], "23": [1, 0], "24": [1, 0], "25": [3, 4], "34": [3, 2], "35": [1, 2],
                        "45": [1, 2]}})
    assert validate(d) == []
    with pytest.raises(CoverError):
        spec_from_json({"group": {"orders": [5]}, "monodromy": []})
    with pytest.raises(CoverError):
        spec_from_json({"configuration": "general_position(5)", "group": {"orders": [5, 5]}, "monodromy": [[1]]})
