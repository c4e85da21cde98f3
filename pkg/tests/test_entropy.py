import math

import pytest

from dyckzeta.entropy import (
    RootError,
    _scan_sign_change,
    entropy_bouquet,
    entropy_closed,
    entropy_graph_brackets,
    entropy_growth_check,
)
from dyckzeta.formulas import dyck_graph_spec
from dyckzeta.graphs import build_bouquet, build_even_automaton
from dyckzeta.series import Polynomial
from dyckzeta.shifts import Dyck, GraphBrackets, TripleExclusion

ONES2 = (1, 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_plain_bracket_entropy_root(n):
    res = entropy_graph_brackets(dyck_graph_spec(n))
    assert abs(res.root - 1 / (n + 1)) < 1e-12
    assert abs(res.value - math.log(n + 1)) < 1e-10
    assert res.method == "root-equation"


def test_root_invariants():
    res = entropy_graph_brackets(dyck_graph_spec(3))
    assert res.residual is not None and res.residual <= 1e-12
    lo, hi = res.bracket
    assert hi - lo <= 1e-14


def test_single_loop_rosette_is_linear_equation():
    for n in (2, 3, 4):
        res = entropy_bouquet(n, 1, 1)
        assert abs(res.root - 1 / (n + 2)) < 1e-12
        assert abs(res.value - math.log(n + 2)) < 1e-10


def test_two_step_rosette_closed_form():
    res = entropy_bouquet(2, 1, 2)
    assert abs(res.value - 1.1947632172871094) < 1e-10
    closed = entropy_closed("bouquet_1_2", 2)
    assert abs(res.value - closed.value) < 1e-10


def test_rosette_root_increases_with_circle_length():
    roots = [entropy_bouquet(2, 1, q).root for q in range(1, 11)]
    for a, b in zip(roots, roots[1:]):
        assert a < b
    assert all(r < 1 / 3 for r in roots)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("circles", [1, 2, 3])
@pytest.mark.parametrize("circle_len", [1, 2, 3])
def test_assembled_root_equation_matches_direct_polynomial(n, circles, circle_len):
    ones = (1,) * n
    spec = GraphBrackets(n, build_bouquet(circles, circle_len), ones, ones)
    a = entropy_graph_brackets(spec).value
    b = entropy_bouquet(n, circles, circle_len).value
    assert abs(a - b) < 1e-10


def test_even_carrier_closed_forms_match_root_equations():
    sch = entropy_graph_brackets(GraphBrackets(2, build_even_automaton(False), ONES2, ONES2))
    assert abs(sch.value - entropy_closed("schroeder", 2).value) < 1e-10
    assert abs(sch.value - 1.4436354751788099) < 1e-9
    odd = entropy_graph_brackets(GraphBrackets(2, build_even_automaton(True), ONES2, ONES2))
    assert abs(odd.value - entropy_closed("even_odd", 2).value) < 1e-10
    assert abs(odd.value - 1.2279471772995159) < 1e-9


def test_uniform_rule_closed_form_value():
    res = entropy_closed("psi_uniform", 2, 1)
    assert abs(res.value - math.log((math.sqrt(41) + 5) / 4)) < 1e-12
    assert res.residual <= 1e-12


def test_uniform_rule_at_full_size_falls_back():
    res = entropy_closed("psi_uniform", 3, 3)
    assert abs(res.value - math.log(4)) < 1e-12
    assert res.note


def test_closed_form_requires_known_name():
    with pytest.raises(ValueError):
        entropy_closed("nope", 2)
    with pytest.raises(ValueError):
        entropy_closed("psi_uniform", 2)


@pytest.mark.parametrize(
    "name", ["bouquet_1_2", "schroeder", "even_odd"]
)
def test_entropy_grows_with_alphabet(name):
    values = [entropy_closed(name, n).value for n in range(2, 6)]
    for a, b in zip(values, values[1:]):
        assert a < b


def test_bracket_families_grow_with_alphabet():
    values = [entropy_graph_brackets(dyck_graph_spec(n)).value for n in range(2, 6)]
    for a, b in zip(values, values[1:]):
        assert a < b
    values = [entropy_closed("psi_uniform", n, 1).value for n in range(2, 6)]
    for a, b in zip(values, values[1:]):
        assert a < b


def test_growth_check_results():
    res = entropy_growth_check(Dyck(2), 10)
    assert abs(res.value - math.log(3)) < 0.15
    assert res.method == "growth-estimate"
    assert res.sequence is not None and len(res.sequence) == 10
    res = entropy_growth_check(TripleExclusion(2), 8)
    assert res.value < entropy_growth_check(Dyck(2), 8).value


def test_swapped_sides_give_the_same_entropy():
    # reflection symmetry: exchanging the two loop families preserves entropy
    spec_a = GraphBrackets(2, build_bouquet(1, 2), (2, 1), (1, 1))
    spec_b = GraphBrackets(2, build_bouquet(1, 2), (1, 1), (2, 1))
    a = entropy_graph_brackets(spec_a).value
    b = entropy_graph_brackets(spec_b).value
    assert abs(a - b) < 1e-12


def test_scan_requires_a_sign_change():
    with pytest.raises(RootError):
        _scan_sign_change(Polynomial.from_coeffs([1, 1]), 0.0, 1.0)
