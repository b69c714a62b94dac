from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from friezes.band import check_band
from friezes.cluster import (
    NumericSeed,
    enumerate_clusters,
    exchange_matrix,
    is_skew_symmetrizable,
    mutate,
    mutate_matrix,
    seed_symmetrizer,
    unitary_bounds,
    unitary_friezes,
)
from friezes.dynkin import DynkinType, coxeter_number, default_orientation

EXPONENTS = {
    "A": lambda n: range(1, n + 1),
    "B": lambda n: range(1, 2 * n, 2),
    "C": lambda n: range(1, 2 * n, 2),
    "D": lambda n: list(range(1, 2 * n - 2, 2)) + [n - 1],
    "E": lambda n: {6: (1, 4, 5, 7, 8, 11), 7: (1, 5, 7, 9, 11, 13, 17), 8: (1, 7, 11, 13, 17, 19, 23, 29)}[n],
    "F": lambda n: (1, 5, 7, 11),
    "G": lambda n: (1, 5),
}


def catalan_of_type(t: DynkinType) -> int:
    h = coxeter_number(t)
    e = list(EXPONENTS[t.family](t.rank))
    num, den = prod(h + x + 1 for x in e), prod(x + 1 for x in e)
    assert num % den == 0
    return num // den


TYPES = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "D5", "D6", "G2", "F4", "E6"]


@pytest.mark.parametrize("t", TYPES)
def test_cluster_count_matches_type_catalan(t):
    tt = DynkinType.parse(t)
    assert enumerate_clusters(default_orientation(tt)).count == catalan_of_type(tt)


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_unitary_friezes_one_per_cluster(t):
    d = default_orientation(DynkinType.parse(t))
    us = unitary_friezes(d)
    assert len(us) == enumerate_clusters(d).count
    assert all(check_band(b) == [] for b in us)


def test_unitary_bounds_small():
    assert unitary_bounds(default_orientation(DynkinType("A", 2))) == (3, 3)
    assert unitary_bounds(default_orientation(DynkinType("D", 4))) == (6, 6, 14, 6)
    assert unitary_bounds(default_orientation(DynkinType("G", 2))) == (14, 5)


def test_exchange_matrix_g2():
    d = default_orientation(DynkinType("G", 2))
    assert exchange_matrix(d) == ((0, 1), (-3, 0))
    assert is_skew_symmetrizable(exchange_matrix(d), seed_symmetrizer(d))


def test_b_and_c_mutation_classes_are_transposes():
    # the B_n and C_n exchange matrices are negative transposes of each other
    for n in (2, 3):
        b = enumerate_clusters(default_orientation(DynkinType("B", n))).exchange_matrices()
        c = enumerate_clusters(default_orientation(DynkinType("C", n))).exchange_matrices()
        assert {tuple(zip(*m)) for m in b} == {tuple(tuple(-x for x in r) for r in m) for m in c}


def test_a2_pentagon():
    s = NumericSeed.initial(default_orientation(DynkinType("A", 2)), (1, 1))
    vals = []
    for k in (0, 1, 0, 1, 0):
        s = s.mutate(k)
        vals.append(s.values)
    assert vals[-1] == (Fraction(1), Fraction(1))
    assert sorted({v for vv in vals for v in vv}) == [1, 2, 3]


def test_positive_values_required():
    with pytest.raises(ValueError):
        NumericSeed.initial(default_orientation(DynkinType("A", 2)), (1, 0))


def paths(n):
    return st.lists(st.integers(0, n - 1), max_size=12)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["A4", "B3", "C3", "D4", "G2", "F4"]), st.data())
def test_mutation_is_an_involution(t, data):
    d = default_orientation(DynkinType.parse(t))
    start = NumericSeed.initial(d, (2, 3, 5, 7)[: d.n] + (11,) * max(0, d.n - 4))
    s = start.mutate_path(data.draw(paths(d.n)))
    k = data.draw(st.integers(0, d.n - 1))
    assert mutate(mutate(s, k), k) == s


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["B4", "C4", "F4", "G2", "E6"]), st.data())
def test_matrix_mutation_keeps_symmetrizer(t, data):
    d = default_orientation(DynkinType.parse(t))
    sym = seed_symmetrizer(d)
    b = exchange_matrix(d)
    for k in data.draw(paths(d.n)):
        b = mutate_matrix(b, k)
        assert is_skew_symmetrizable(b, sym)
        assert all(b[i][i] == 0 for i in range(d.n))
