from fractions import Fraction

import pytest

import umfb


def test_mixed_second_derivative():
    formula = umfb.expand((1, 1), n=2)
    assert len(formula) == 6
    assert formula.coefficients()["f[1,1]*g1[0,1]*g2[1,0]"] == 1
    assert formula == umfb.chain_rule((1, 1), n=2)
    assert umfb.Formula.from_json(formula.render("json")) == formula


def test_partitions():
    parts = umfb.partitions((2, 1))
    assert len(parts) == 4
    assert [((2, 1), 1)] in parts
    assert [((0, 1), 1), ((1, 0), 2)] in parts
    assert umfb.count_partitions((2, 2)) == 9
    with pytest.raises(ValueError):
        umfb.partitions((0, 0))


def test_threads_do_not_change_the_result():
    one = umfb.expand((4, 3), n=2, threads=1)
    many = umfb.expand((4, 3), n=2, threads=4)
    assert str(one) == str(many)
    assert umfb.predicted_term_count((4, 3), n=2) == len(one)


def test_bell_numbers_from_shared_inner_mode():
    bell = umfb.generalized_bell((2,))
    assert str(bell) == "g1[1]^2*x1^2 + g1[2]*x1"


def test_cumulants_round_trip():
    moments = {(1, 0): 2, (0, 1): 1, (1, 1): 5, (2, 0): Fraction(1, 3), (0, 2): "7/2"}
    assert umfb.cumulant(moments, (1, 1)) == 3
    cumulants = umfb.cumulants(moments)
    assert umfb.moments(cumulants) == {k: Fraction(v) for k, v in moments.items()}
    with pytest.raises(ValueError):
        umfb.cumulant({(1,): 0.5}, (1,))


def test_compound_poisson():
    alpha = {(1,): 1, (2,): 1}
    mu = {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert umfb.compound_poisson_moment(alpha, mu, (1, 1)) == 2


def test_hermite():
    assert umfb.hermite((3,), [[1]], [2]) == 2
    assert umfb.hermite((3,), [[1]], [2], route="bell") == 2
    sigma = [[2, 1], [1, 2]]
    for i in [(1, 1), (2, 1), (0, 3)]:
        exact = umfb.hermite(i, sigma, [1, Fraction(1, 2)], scaled=True)
        assert umfb.hermite(i, sigma, [1, Fraction(1, 2)], scaled=True, route="bell") == exact
        approx = umfb.hermite_float(i, [[2.0, 1.0], [1.0, 2.0]], [1.0, 0.5], scaled=True)
        assert approx == pytest.approx(float(exact), rel=1e-9, abs=1e-12)
    with pytest.raises(umfb.SingularSigma):
        umfb.hermite((1, 1), [[1, 2], [2, 4]], [1, 1])
