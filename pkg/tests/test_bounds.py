from fractions import Fraction

import pytest

from richlines.bounds import bound_terms, ratios

F = Fraction


def test_planar_terms():
    report = bound_terms(100, 5, 2)
    assert report.terms["n2_r3"] == 80
    assert report.terms["n_r"] == 20
    assert report.formulas["planar_rich_lines"] == 100


def test_conjectured_term_high_dimension():
    report = bound_terms(81, 3, 4)
    assert report.terms["n2_rd1"] == F(81 * 81, 3**5)
    assert report.terms["n2_rd1"] == 27


def test_flat_statistics_terms():
    report = bound_terms(50, 4, 3, {2: 10})
    assert report.terms["ns2_r3"] == F(50 * 10, 64)
    assert "threespace_rich_lines" in report.formulas
    assert report.formulas["threespace_rich_lines"] == (
        F(2500, 256) + F(500, 64) + F(50, 4)
    )


def test_fourspace_formula_needs_both_statistics():
    partial = bound_terms(50, 4, 4, {2: 10})
    assert "fourspace_rich_lines" not in partial.formulas
    full = bound_terms(50, 4, 4, {2: 10, 3: 20})
    assert "fourspace_rich_lines" in full.formulas


def test_hyperplane_formula():
    report = bound_terms(30, 3, 3, {2: 12})
    assert report.formulas["hyperplane_rich_lines"] == F(900, 27) + F(30 * 12, 9)


def test_flatwise_sum():
    report = bound_terms(60, 3, 4, {2: 9, 3: 15})
    expected = F(60 * 9, 27) + F(60 * 15, 81)
    assert report.terms["flat_sum"] == expected


def test_ratios_are_exact():
    report = bound_terms(100, 5, 2)
    out = ratios(200, report)
    assert out["planar_rich_lines"] == 2


def test_rejects_tiny_r():
    with pytest.raises(ValueError):
        bound_terms(10, 1, 2)
