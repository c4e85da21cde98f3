from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyckzeta.series import (
    InexactDivision,
    Polynomial,
    PowerSeries,
    SeriesError,
    counts_from_zeta,
    det_poly_matrix,
    identity_minus_adjacency_z,
    matmul_poly,
    zeta_from_counts,
)


def ps(*coeffs, order=None):
    return PowerSeries.from_coeffs(coeffs, order=order)


def test_product_of_conjugates():
    one_plus = ps(1, 1, order=4)
    one_minus = ps(1, -1, order=4)
    assert one_plus * one_minus == ps(1, 0, -1, order=4)


def test_mul_by_one_is_identity():
    a = ps(3, 1, 4, 1, 5)
    assert a * PowerSeries.one(4) == a


def test_geometric_series_identity():
    geo = ps(*([1] * 9))
    assert geo * ps(1, -1, order=8) == PowerSeries.one(8)


def test_division_geometric():
    got = PowerSeries.one(6) / ps(1, -1, order=6)
    assert got == ps(*([1] * 7))


def test_division_fibonacci():
    got = PowerSeries.one(6) / ps(1, -1, -1, order=6)
    assert got == ps(1, 1, 2, 3, 5, 8, 13)
    assert got * ps(1, -1, -1, order=6) == PowerSeries.one(6)


def test_division_self_is_one():
    a = ps(2, 5, -1, 7)
    assert a / a == PowerSeries.one(3)


def test_division_needs_unit_constant():
    with pytest.raises(SeriesError):
        PowerSeries.one(3) / ps(0, 1, order=3)


def test_sqrt_of_one():
    assert PowerSeries.one(5).sqrt() == PowerSeries.one(5)


def test_sqrt_known_expansion():
    a = ps(1, 0, -8, order=8)
    s = a.sqrt()
    assert [s.coef(i) for i in range(0, 8, 2)] == [1, -4, -8, -32]
    assert s * s == a


def test_sqrt_of_perfect_square():
    sq = ps(1, 1, order=5) * ps(1, 1, order=5)
    assert sq.sqrt() == ps(1, 1, order=5)


def test_sqrt_needs_unit_constant():
    with pytest.raises(SeriesError):
        ps(4, 1, order=3).sqrt()


def test_exp_of_zero():
    assert PowerSeries.zero(5).exp() == PowerSeries.one(5)


def test_log_of_geometric_is_harmonic():
    lg = (PowerSeries.one(5) / ps(1, -1, order=5)).log()
    assert lg == ps(0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5))
    assert lg.exp() == PowerSeries.one(5) / ps(1, -1, order=5)


def test_exp_log_inverse_on_simple_input():
    a = ps(1, 1, order=6)
    assert a.log().exp() == a


def test_exp_log_preconditions():
    with pytest.raises(SeriesError):
        ps(1, 1).exp()
    with pytest.raises(SeriesError):
        ps(0, 1).log()


def poly(*coeffs):
    return Polynomial.from_coeffs(coeffs)


def test_det_of_transfer_matrix():
    m = identity_minus_adjacency_z([[1, 1], [1, 0]])
    assert det_poly_matrix(m) == poly(1, -1, -1)


def test_det_of_empty_matrix_is_one():
    assert det_poly_matrix([]) == poly(1)


def test_det_all_ones():
    m = identity_minus_adjacency_z([[1, 1], [1, 1]])
    assert det_poly_matrix(m) == poly(1, -2)


def test_det_three_letter_exchange():
    m = identity_minus_adjacency_z([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    expected = poly(1, -2) * poly(1, 1) * poly(1, 1)
    assert det_poly_matrix(m) == expected


def test_zeta_from_single_fixed_point():
    assert zeta_from_counts([1] * 6, 6) == PowerSeries.one(6) / ps(1, -1, order=6)


def test_zeta_from_powers_is_geometric():
    counts = [3**n for n in range(1, 7)]
    assert zeta_from_counts(counts, 6) == PowerSeries.one(6) / ps(1, -3, order=6)


def test_zeta_of_empty_system():
    assert zeta_from_counts([0] * 5, 5) == PowerSeries.one(5)


def test_counts_from_geometric_zeta():
    z = PowerSeries.one(6) / ps(1, -3, order=6)
    assert counts_from_zeta(z) == [3**n for n in range(1, 7)]


def test_counts_from_hand_expanded_series():
    z = ps(1, 4, 14)
    assert counts_from_zeta(z) == [4, 12]


def test_counts_of_constant_one():
    assert counts_from_zeta(PowerSeries.one(4)) == [0, 0, 0, 0]


def test_counts_needs_unit_constant():
    with pytest.raises(SeriesError):
        counts_from_zeta(ps(2, 1))


def test_polynomial_exact_division_and_remainder_error():
    p = poly(1, -1) * poly(1, 2, 3)
    assert p.divexact(poly(1, -1)) == poly(1, 2, 3)
    try:
        poly(1, 1, 1).divexact(poly(1, -1))
    except InexactDivision as exc:
        assert not exc.remainder.is_zero
    else:
        pytest.fail("expected a remainder error")


def test_polynomial_compose_scaled():
    p = poly(1, 2, 3)  # 1 + 2z + 3z^2
    q = p.compose_scaled(2, 2)  # z -> 2 z^2
    assert q == poly(1, 0, 4, 0, 12)


small_fracs = st.fractions(
    min_value=-3, max_value=3, max_denominator=3
)


@st.composite
def unit_series(draw):
    order = draw(st.integers(min_value=1, max_value=8))
    rest = draw(st.lists(small_fracs, min_size=order, max_size=order))
    return PowerSeries.from_coeffs([Fraction(1)] + rest)


@given(unit_series())
@settings(max_examples=120)
def test_sqrt_squares_back(a):
    s = a.sqrt()
    assert s * s == a


@given(unit_series())
@settings(max_examples=120)
def test_exp_log_roundtrip(a):
    assert a.log().exp() == a


@given(unit_series())
@settings(max_examples=120)
def test_reciprocal_multiplies_to_one(a):
    assert a * (PowerSeries.one(a.order) / a) == PowerSeries.one(a.order)


@given(st.lists(st.integers(min_value=0, max_value=50), min_size=1, max_size=10))
@settings(max_examples=120)
def test_counts_roundtrip_exactly(counts):
    order = len(counts)
    z = zeta_from_counts(counts, order)
    assert counts_from_zeta(z) == [Fraction(c) for c in counts]


small_polys = st.builds(
    lambda a, b: Polynomial.from_coeffs([a, b]),
    st.integers(min_value=-2, max_value=2),
    st.integers(min_value=-2, max_value=2),
)


@given(
    st.lists(small_polys, min_size=9, max_size=9),
    st.lists(small_polys, min_size=9, max_size=9),
)
@settings(max_examples=60, deadline=None)
def test_det_is_multiplicative(flat_a, flat_b):
    a = [flat_a[0:3], flat_a[3:6], flat_a[6:9]]
    b = [flat_b[0:3], flat_b[3:6], flat_b[6:9]]
    lhs = det_poly_matrix(matmul_poly(a, b))
    rhs = det_poly_matrix(a) * det_poly_matrix(b)
    assert lhs == rhs
