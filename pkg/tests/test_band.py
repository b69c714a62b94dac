import itertools
import json
import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from friezes.band import (
    FriezeBand,
    InvalidSeed,
    NonIntegral,
    band_from_json,
    check_band,
    enumerate_friezes,
    enumerate_seeds,
    is_frieze_seed,
    next_slice,
    render_band,
    saturated,
    validate_seed,
)
from friezes.cluster import unitary_bounds
from friezes.dynkin import DynkinType, OrientedDiagram, cartan_matrix, coxeter_number, default_orientation


def D(s):
    return default_orientation(DynkinType.parse(s))


def naive_is_frieze(d: OrientedDiagram, seed) -> bool:
    """Independent oracle: iterate the mesh relation with Fractions for two periods."""
    n = d.n
    c = cartan_matrix(d.dynkin_type) if d.cartan is None else d.cartan
    col = [Fraction(x) for x in seed]
    for _ in range(2 * (coxeter_number(d.dynkin_type) + 2)):
        new = [None] * n
        pending = set(range(n))
        while pending:
            for j in sorted(pending):
                ins = [i for i, k in d.edges if k == j]
                if any(new[i] is None for i in ins):
                    continue
                rhs = Fraction(1)
                for i, k in d.edges:
                    if i == j:
                        rhs *= col[k] ** -c[k][j]
                    if k == j:
                        rhs *= new[i] ** -c[i][j]
                new[j] = (1 + rhs) / col[j]
                pending.discard(j)
        if any(x.denominator != 1 or x <= 0 for x in new):
            return False
        col = new
    return True


def naive_seeds(d, bound):
    return [s for s in itertools.product(*(range(1, b + 1) for b in bound)) if naive_is_frieze(d, s)]


@pytest.mark.parametrize("t,bound", [("A3", (4, 4, 4)), ("G2", (14, 5)), ("B3", (3, 6, 10)), ("C3", (6, 6, 6)), ("D4", (6, 6, 14, 6))])
def test_search_matches_naive_oracle(t, bound):
    d = D(t)
    assert enumerate_seeds(d, bound) == naive_seeds(d, bound)


def test_search_other_orientation_matches_oracle():
    d = OrientedDiagram.from_edge_list(DynkinType("D", 4), [(3, 1), (3, 2), (3, 4)])
    bound = unitary_bounds(d)
    assert enumerate_seeds(d, bound) == naive_seeds(d, bound)


def test_a2_band():
    b = validate_seed(D("A2"), (1, 1))
    assert b.columns == ((1, 1), (2, 3), (2, 1), (1, 2), (3, 2))
    assert b.period == 5
    assert render_band(b) == "1 2 2 1 3\n1 3 1 2 2"


def test_next_slice():
    assert next_slice(D("A2"), (1, 1)) == (2, 3)
    with pytest.raises(NonIntegral) as e:
        next_slice(D("A2"), (2, 2))
    assert e.value.node == 0


@pytest.mark.parametrize("seed,reason", [((2, 2), "NonIntegral"), ((0, 1), "NonPositive"), ((1, -3), "NonPositive")])
def test_invalid_seeds(seed, reason):
    with pytest.raises(InvalidSeed) as e:
        validate_seed(D("A2"), seed)
    assert e.value.reason == reason
    assert not is_frieze_seed(D("A2"), seed)


def test_seed_length_checked():
    with pytest.raises(ValueError):
        validate_seed(D("A2"), (1, 1, 1))


@pytest.mark.parametrize("t", ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"])
def test_enumerated_bands_are_valid(t):
    d = D(t)
    h = coxeter_number(d.dynkin_type)
    bands = enumerate_friezes(d)
    assert [b.seed for b in bands] == sorted(b.seed for b in bands)
    for b in bands:
        assert check_band(b) == []
        assert b.period <= h + 2
        # every column of the band is itself a frieze seed in the list
        assert all(validate_seed(d, col).seed == col for col in b.columns)


@pytest.mark.parametrize("t", ["A3", "D4", "G2", "B3"])
def test_translates_are_distinct_friezes(t):
    d = D(t)
    seeds = {b.seed for b in enumerate_friezes(d)}
    for b in enumerate_friezes(d):
        assert set(b.columns) <= seeds


def test_d4_count_independent_of_orientation():
    t = DynkinType("D", 4)
    a = default_orientation(t)
    b = OrientedDiagram.from_edge_list(t, [(3, 1), (3, 2), (4, 3)])
    assert len(enumerate_friezes(a)) == len(enumerate_friezes(b)) == 51


def test_g2_with_transposed_cartan():
    t = DynkinType("G", 2)
    ct = tuple(zip(*cartan_matrix(t)))
    d = OrientedDiagram(t, default_orientation(t).edges, ct)
    assert len(enumerate_friezes(d)) == 9


def test_check_band_reports_corruption():
    b = validate_seed(D("A3"), (1, 1, 1))
    cols = [list(c) for c in b.columns]
    cols[1][1] += 1
    bad = FriezeBand(b.diagram, tuple(map(tuple, cols)))
    assert check_band(bad)


def test_shifted_is_a_translate():
    b = validate_seed(D("D4"), (1, 1, 1, 1))
    s = b.shifted(2)
    assert s.seed == b.columns[2]
    assert check_band(s) == []
    assert validate_seed(b.diagram, s.seed) == s


def test_json_round_trip():
    b = validate_seed(D("B3"), enumerate_seeds(D("B3"), (3, 6, 10))[5])
    data = json.loads(json.dumps(b.to_json()))
    assert set(data) == {"type", "orientation", "seed", "period", "columns"}
    assert band_from_json(data) == b


def test_saturation_warning(caplog):
    d = D("A2")
    with caplog.at_level(logging.WARNING):
        bands = enumerate_friezes(d, bound=(2, 2))
    assert [b.seed for b in bands] == [(1, 1), (1, 2), (2, 1)]
    assert saturated(bands, (2, 2))
    assert "bound" in caplog.text


def test_default_bound_no_warning(caplog):
    with caplog.at_level(logging.WARNING):
        enumerate_friezes(D("D4"))
    assert caplog.text == ""


def test_threads_do_not_change_result():
    d = D("D5")
    assert enumerate_seeds(d, unitary_bounds(d), threads=2) == enumerate_seeds(d, unitary_bounds(d), threads=1)


def test_checkpoint_resume(tmp_path):
    d = D("D4")
    bound = unitary_bounds(d)
    ck = tmp_path / "ck.json"
    first = enumerate_seeds(d, bound, checkpoint=ck)
    assert ck.exists()
    data = json.loads(ck.read_text())
    assert data["done"]
    assert enumerate_seeds(d, bound, checkpoint=ck) == first
    # a checkpoint for another bound is not reused
    assert enumerate_seeds(d, (2, 2, 3, 2), checkpoint=ck) == naive_seeds(d, (2, 2, 3, 2))


@settings(max_examples=60, deadline=None)
@given(st.tuples(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6)))
def test_validate_agrees_with_oracle(seed):
    d = D("A3")
    assert is_frieze_seed(d, seed) == naive_is_frieze(d, seed)
