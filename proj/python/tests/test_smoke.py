from fractions import Fraction

import pytest

import bilgrow


def test_linear_order_levels():
    sys = bilgrow.example("linear-order")
    table = bilgrow.enumerate(sys, 20, strategy="majorized")
    assert table.depth == 20
    for n in range(1, 21):
        assert table.level(n) == [(Fraction(n), Fraction(1))]
        assert table.g(n) == n


def test_aho_sloane_values_and_bounds():
    sys = bilgrow.example("aho-sloane")
    table = bilgrow.enumerate(sys, 10, strategy="none", count_shapes=True)
    assert [table.g(n) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 16, 26, 36, 56]
    assert table.shape_count(10) == 4862
    b = bilgrow.sandwich(sys, depth=24, pattern_budget=32, width="5/100")
    assert b["lower"] <= Fraction(1502836802, 10**9)
    assert b["upper"] >= Fraction(1502836801, 10**9)
    assert b["upper_kind"] == "hull-certificate"
    assert bilgrow.check_certificate(b["certificate"], sys) is None


def test_certificate_and_escape():
    sys = bilgrow.example("linear-order")
    ok = bilgrow.certify_upper(sys, Fraction(3, 2))
    assert ok["certified"]
    assert bilgrow.check_certificate(ok["certificate"], sys) is None
    assert bilgrow.check_certificate(ok["certificate"], bilgrow.example("aho-sloane")) is not None
    bad = bilgrow.certify_upper(sys, 1, max_level=8)
    assert not bad["certified"]
    assert len(bad["escaping"]) == 2


def test_system_text_and_star():
    sys = bilgrow.parse_system("dim 2\nseed 1 1\ncoef 1 1 1 1\ncoef 1 2 2 1\ncoef 2 2 2 1\n")
    assert sys.dim == 2
    assert sys.star([2, 1], [3, 1]) == [7, 1]
    assert bilgrow.parse_system(sys.to_text()).terms == sys.terms
    assert bilgrow.crude_upper(sys) == 2


def test_components():
    comps = bilgrow.components(bilgrow.example("quartic-order"))
    assert [c["vertices"] for c in comps] == [[1], [2], [3], [4]]
    assert comps[0]["half_self_dependent"]


def test_errors():
    with pytest.raises(ValueError, match="line 3"):
        bilgrow.parse_system("dim 2\nseed 1 1\ncoef 3 1 1 1\n")
    with pytest.raises(ValueError):
        bilgrow.example("nope")
    with pytest.raises(bilgrow.BudgetError):
        bilgrow.enumerate(bilgrow.example("quadratic-order"), 10, strategy="none", budget=3)
