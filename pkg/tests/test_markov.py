import pytest
from hypothesis import given, strategies as st

from tdelpezzo.errors import MutationUndefined, NotWellFormed, TDPError
from tdelpezzo.markov import (
    CLASSICAL,
    COORDS,
    MARKOV_5,
    MarkovEquation,
    MarkovTriple,
    canonical,
    enumerate_solutions,
    fundamental_solutions,
    is_solution,
    mutate,
    neighbours,
    scan_solutions,
    triple_to_weights,
)

TREE_5 = enumerate_solutions(MARKOV_5, 10**4)


@pytest.mark.parametrize(
    "eq,t,expected",
    [(MARKOV_5, (1, 2, 1), True), (MARKOV_5, (1, 1, 1), False), (CLASSICAL, (1, 1, 1), True), (MARKOV_5, (29, 3, 2), True)],
)
def test_is_solution(eq, t, expected):
    assert is_solution(eq, t) is expected


def test_mutate_examples():
    assert mutate(MARKOV_5, (1, 2, 1), "x") == (9, 2, 1)
    assert canonical(MARKOV_5, mutate(MARKOV_5, (1, 2, 1), "y")) == (1, 3, 1)
    assert mutate(MARKOV_5, (1, 3, 1), "z") == (1, 3, 2)


def test_mutate_undefined():
    # z-jump 1*1 - 1 = 0 is non-positive
    with pytest.raises(MutationUndefined):
        mutate(MARKOV_5, (1, 1, 1), "z")
    with pytest.raises(ValueError):
        mutate(CLASSICAL, (1, 1, 1), "w")


@pytest.mark.parametrize("k,m", [(2, 3), (1, 2), (0, 5), (3, 5)])
def test_unsupported_equations(k, m):
    with pytest.raises(TDPError):
        MarkovEquation(k, m)


def test_canonical_form():
    assert canonical(MARKOV_5, (3, 1, 2)) == (1, 3, 2)
    assert canonical(CLASSICAL, (5, 1, 2)) == (1, 2, 5)


@given(st.sampled_from(TREE_5), st.sampled_from(COORDS))
def test_mutation_involution(t, coord):
    try:
        u = mutate(MARKOV_5, t, coord)
    except MutationUndefined:
        return
    assert is_solution(MARKOV_5, u)
    assert mutate(MARKOV_5, u, coord) == t


def test_enumerate_examples():
    small = enumerate_solutions(MARKOV_5, 10)
    assert {(1, 2, 1), (1, 3, 1), (2, 9, 1), (1, 3, 2)} <= set(small)
    assert enumerate_solutions(CLASSICAL, 5) == [(1, 1, 1), (1, 1, 2), (1, 2, 5)]
    assert (3, 29, 2) in enumerate_solutions(MARKOV_5, 30)


def test_enumerate_sorted_and_valid():
    assert TREE_5 == sorted(TREE_5)
    assert all(isinstance(t, MarkovTriple) and is_solution(MARKOV_5, t) for t in TREE_5)
    assert all(canonical(MARKOV_5, t) == t for t in TREE_5)


def test_enumerate_closed_under_mutation():
    s = set(TREE_5)
    for t in TREE_5:
        for u in neighbours(MARKOV_5, t):
            if max(u) <= 10**4:
                assert u in s


@pytest.mark.parametrize("eq,bound", [(MARKOV_5, 1000), (CLASSICAL, 1000)])
def test_enumerate_matches_exhaustive_scan(eq, bound):
    assert enumerate_solutions(eq, bound) == scan_solutions(eq, bound)


def test_fundamental_solutions():
    assert fundamental_solutions(MARKOV_5, 50) == [(1, 2, 1)]
    assert fundamental_solutions(CLASSICAL, 50) == [(1, 1, 1)]
    assert fundamental_solutions(MARKOV_5, 1) == []


def test_classical_markov_numbers():
    nums = sorted({x for t in enumerate_solutions(CLASSICAL, 999) for x in t})
    assert nums == [1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985]


def test_enumerate_rejects_bad_bound():
    with pytest.raises(ValueError):
        enumerate_solutions(MARKOV_5, 0)


@pytest.mark.parametrize(
    "t,w", [((1, 2, 1), (1, 4, 5)), ((1, 3, 2), (1, 9, 20)), ((29, 3, 2), (841, 9, 20))]
)
def test_triple_to_weights(t, w):
    assert triple_to_weights(MARKOV_5, t) == w


def test_triple_to_weights_not_well_formed():
    with pytest.raises(NotWellFormed, match="gcd"):
        triple_to_weights(MARKOV_5, (2, 4, 1))
