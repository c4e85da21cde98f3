import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyckzeta.graphs import build_bouquet, build_even_automaton
from dyckzeta.monoid import MINUS, PLUS
from dyckzeta.shifts import (
    Br,
    Dyck,
    GraphBrackets,
    Motzkin,
    MotzkinRestricted,
    NEUTRAL,
    PsiExclusion,
    SpecError,
    TripleExclusion,
    XiExclusion,
    alphabet,
    as_subset_map,
    count_periodic,
    count_words,
    entropy_estimate,
    forbidden_words,
    is_admissible,
    is_periodic_point,
    small_alphabet_override,
    word_counts_upto,
)

ONES2 = (1, 1)


def bracket_spec(n=2):
    return Dyck(n)


def psi_identity():
    return PsiExclusion(2, (frozenset({1}), frozenset({2})))


def xi_simple():
    return XiExclusion(
        2,
        1,
        as_subset_map({1: {1}}, 1, 1),
        as_subset_map({1: {1}, 2: {1}}, 2, 1),
    )


def test_alphabet_sizes():
    assert len(alphabet(Dyck(2))) == 4
    assert len(alphabet(Motzkin(2))) == 5
    spec = GraphBrackets(2, build_bouquet(2, 1), ONES2, ONES2)
    assert len(alphabet(spec)) == 6
    assert len(alphabet(XiExclusion(2, 2, as_subset_map({1: {2}, 2: {1}}, 2, 2),
                                    as_subset_map({1: {1, 2}, 2: {1, 2}}, 2, 2)))) == 6


def test_alphabet_is_deterministic():
    assert alphabet(Dyck(2)) == alphabet(Dyck(2))
    assert alphabet(Dyck(2)) == [Br(MINUS, 1), Br(MINUS, 2), Br(PLUS, 1), Br(PLUS, 2)]


def test_forbidden_pairs_for_identity_rule():
    got = set(forbidden_words(psi_identity()))
    assert got == {(Br(PLUS, 2), Br(PLUS, 1)), (Br(PLUS, 1), Br(PLUS, 2))}


def test_forbidden_triples_have_distinct_outer_letters():
    got = forbidden_words(TripleExclusion(2))
    assert len(got) == 4
    for w in got:
        assert w[0].letter != w[2].letter
        assert all(s.sign == PLUS for s in w)


def test_forbidden_words_of_neutral_family():
    got = set(forbidden_words(MotzkinRestricted(2)))
    assert (NEUTRAL, NEUTRAL, Br(PLUS, 1)) in got
    assert (Br(MINUS, 1), NEUTRAL, Br(PLUS, 1)) in got
    assert (Br(PLUS, 1), Br(MINUS, 2)) in got
    assert (Br(PLUS, 1), Br(PLUS, 2)) in got


def test_base_families_have_no_forbidden_words():
    assert forbidden_words(Dyck(2)) == []
    assert forbidden_words(Motzkin(3)) == []


def test_admissibility_examples():
    assert not is_admissible(Dyck(2), (Br(MINUS, 1), Br(PLUS, 2)))
    assert is_admissible(Motzkin(2), (Br(MINUS, 1), NEUTRAL, Br(PLUS, 1)))
    assert not is_admissible(MotzkinRestricted(2), (Br(MINUS, 1), NEUTRAL, Br(PLUS, 1)))


def test_admissibility_rejects_foreign_symbols():
    with pytest.raises(SpecError):
        is_admissible(Dyck(2), (NEUTRAL,))


def test_word_counts():
    assert count_words(Dyck(2), 1) == 4
    assert count_words(Dyck(2), 2) == 14
    assert count_words(Motzkin(2), 2) == 23


def test_word_counts_upto_matches_single_lengths():
    assert word_counts_upto(Motzkin(2), 5) == [count_words(Motzkin(2), n) for n in range(1, 6)]


def test_periodic_point_examples():
    assert is_periodic_point(Dyck(2), (Br(MINUS, 1),))
    assert not is_periodic_point(Dyck(2), (Br(PLUS, 1), Br(MINUS, 2)))
    assert is_periodic_point(Dyck(2), (Br(PLUS, 2), Br(MINUS, 2)))


def test_periodic_counts():
    assert count_periodic(Dyck(2), 1) == 4
    assert count_periodic(Dyck(2), 2) == 12
    assert count_periodic(Motzkin(2), 1) == 5


def test_periodic_counts_carrier_graph():
    # even carrier with loops at the loop-bearing state: direct hand counts
    spec = GraphBrackets(2, build_even_automaton(False), ONES2, ONES2)
    assert count_periodic(spec, 1) == 6
    assert count_periodic(spec, 2) == 22
    other = GraphBrackets(2, build_even_automaton(True), ONES2, ONES2)
    assert count_periodic(other, 1) == 6
    assert count_periodic(other, 2) == 14


def test_exclusion_periodic_counts_small():
    # identity rule: single closings repeat freely, alternating pairs do not
    spec = psi_identity()
    assert count_periodic(spec, 1) == 4
    assert count_periodic(spec, 2) == 10
    swap = PsiExclusion(2, (frozenset({2}), frozenset({1})))
    assert count_periodic(swap, 1) == 2
    assert count_periodic(swap, 2) == 10


@pytest.mark.parametrize(
    "spec",
    [
        Dyck(2),
        Motzkin(2),
        psi_identity(),
        TripleExclusion(2),
        MotzkinRestricted(2),
        xi_simple(),
        GraphBrackets(2, build_even_automaton(False), ONES2, ONES2),
    ],
    ids=lambda s: type(s).__name__,
)
def test_admissible_words_are_factor_closed(spec):
    syms = alphabet(spec)
    rng_words = st.lists(st.sampled_from(syms), min_size=1, max_size=8)

    @given(rng_words)
    @settings(max_examples=60, deadline=None)
    def check(word):
        w = tuple(word)
        if is_admissible(spec, w):
            for i in range(len(w)):
                for j in range(i + 1, len(w) + 1):
                    assert is_admissible(spec, w[i:j])

    check()


@pytest.mark.parametrize(
    "spec",
    [Dyck(2), Motzkin(2), psi_identity(), MotzkinRestricted(2), xi_simple()],
    ids=lambda s: type(s).__name__,
)
def test_count_growth_is_bounded_by_alphabet(spec):
    size = len(alphabet(spec))
    counts = word_counts_upto(spec, 6)
    for prev, nxt in zip(counts, counts[1:]):
        assert nxt <= size * prev


@pytest.mark.parametrize(
    "spec",
    [Dyck(2), psi_identity(), TripleExclusion(2), MotzkinRestricted(2)],
    ids=lambda s: type(s).__name__,
)
def test_periodic_words_have_admissible_powers(spec):
    for n in (1, 2, 3):
        for w in product(alphabet(spec), repeat=n):
            if is_periodic_point(spec, w):
                for k in range(1, 5):
                    if n * k <= 12:
                        assert is_admissible(spec, w * k)


@pytest.mark.parametrize(
    "spec",
    [
        Dyck(2),
        MotzkinRestricted(2),
        TripleExclusion(2),
        xi_simple(),
        GraphBrackets(2, build_even_automaton(False), ONES2, ONES2),
    ],
    ids=lambda s: type(s).__name__,
)
def test_periodicity_is_rotation_invariant(spec):
    for n in (2, 3, 4):
        for w in product(alphabet(spec), repeat=n):
            value = is_periodic_point(spec, w)
            for r in range(1, n):
                assert is_periodic_point(spec, w[r:] + w[:r]) == value


def test_growth_estimates_near_known_limits():
    est = entropy_estimate(Dyck(2), 10)
    assert abs(est.value - math.log(3)) < 0.15
    est = entropy_estimate(Motzkin(2), 10)
    assert abs(est.value - math.log(4)) < 0.15


def test_excluding_words_shrinks_the_language():
    # the estimate converges from above, so compare counts directly
    full = word_counts_upto(Dyck(2), 8)
    cut = word_counts_upto(TripleExclusion(2), 8)
    assert all(c <= f for c, f in zip(cut, full))
    assert cut[7] < full[7]
    assert entropy_estimate(TripleExclusion(2), 8).value < entropy_estimate(Dyck(2), 8).value


def test_single_letter_alphabet_needs_override():
    with pytest.raises(SpecError):
        Dyck(1)
    with small_alphabet_override():
        tiny = Dyck(1)
        assert count_words(tiny, 2) == 4


def test_spec_validation_errors():
    with pytest.raises(SpecError):
        PsiExclusion(2, (frozenset(), frozenset({1})))
    with pytest.raises(SpecError):
        PsiExclusion(2, (frozenset({3}), frozenset({1})))
    with pytest.raises(SpecError):
        XiExclusion(2, 2, as_subset_map({1: {1}, 2: {1, 2}}, 2, 2),
                    as_subset_map({1: {1}, 2: {1}}, 2, 2))
    with pytest.raises(SpecError):
        # loop transitions 1->1, 2->2 split into two closed parts
        XiExclusion(2, 2, as_subset_map({1: {1}, 2: {2}}, 2, 2),
                    as_subset_map({1: {1}, 2: {1}}, 2, 2))
    with pytest.raises(SpecError):
        GraphBrackets(2, build_bouquet(1, 1), (1,), (1, 1))
    with pytest.raises(SpecError):
        GraphBrackets(2, build_bouquet(1, 1), (1, 0), (1, 1))


def test_subset_map_parsing():
    got = as_subset_map({1: {1, 2}, 2: {1}}, 2, 2)
    assert got == (frozenset({1, 2}), frozenset({1}))
    with pytest.raises(SpecError):
        as_subset_map({1: {1}}, 2, 2)
    with pytest.raises(SpecError):
        as_subset_map({1: {1}, 2: set()}, 2, 2)
