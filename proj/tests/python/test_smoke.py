from fractions import Fraction

import pytest

import dpw


def test_counts():
    assert len(dpw.roots(6)) == 36
    assert len(dpw.lines(6)) == 27
    assert len(dpw.subsystems(7, "A3xA3")) == 630
    assert dpw.count_strata("a4") == 135
    assert dpw.eckardt_count() == 45


def test_walls():
    r = dpw.walls(3, threads=2)
    assert r["walls"] == [Fraction(2, 3), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 6)]
    assert dpw.classify_wall(3, "1/4") == "contraction"
    assert dpw.classify_wall(3, "1/2") == "isomorphism"
    assert dpw.walls(4)["walls"] == [Fraction(1, 2)]


def test_fiber_and_degree():
    f = dpw.fiber("a")
    assert len(f["components"]) == 8
    m = dpw.chamber_model("a", Fraction(2, 5))
    assert len(m["components"]) == 2
    c = Fraction(3, 10)
    assert dpw.total_degree(m, c) == 3 * (9 * c - 1) ** 2


def test_restrictions():
    roles = dict(dpw.restrictions("smooth3_eckardt"))
    assert roles["P2_eckardt"] == "(-2+3c)h"


def test_canonical_form_sees_the_contraction():
    import json

    a2 = json.dumps(dpw.chamber_model("a2", "1/5"))
    aa2 = json.dumps(dpw.chamber_model("aa2", "1/5"))
    assert dpw.canonical_form(a2) == dpw.canonical_form(aa2)


def test_errors():
    with pytest.raises(ValueError):
        dpw.chamber_model("a", "1/10")
    with pytest.raises(ValueError):
        dpw.fiber("a", "0.5")
    with pytest.raises(TypeError):
        dpw.fiber("a", 0.5)
    with pytest.raises(ValueError):
        dpw.fiber("nope")
