import pytest

from friezes.band import enumerate_friezes, validate_seed
from friezes.counting import frieze_count
from friezes.dynkin import DynkinType, automorphism, cartan_matrix, default_orientation, symmetric_orientation
from friezes.folding import FoldingError, count_invariant, descend, fold, invariant_friezes, is_invariant, lift

CASES = [
    ("D4", "rotation", "G2", 9),
    ("A3", "mirror", "C2", 6),
    ("D4", "arm-swap", "B3", 21),
    ("D5", "arm-swap", "B4", 75),
    ("D3", "arm-swap", "B2", 6),
    ("A5", "mirror", "C3", 20),
    ("D6", "arm-swap", "B5", 273),
    ("E6", "mirror", "F4", 112),
]


def setup(src, name):
    t = DynkinType.parse(src)
    return symmetric_orientation(t), automorphism(t, name)


@pytest.mark.parametrize("src,name,target,count", CASES)
def test_fold_target_and_count(src, name, target, count):
    d, g = setup(src, name)
    f = fold(d, g)
    assert str(f.target.dynkin_type) == target
    assert f.target.cartan == cartan_matrix(f.target.dynkin_type)
    assert count_invariant(d, g) == count == frieze_count(f.target.dynkin_type).count


@pytest.mark.parametrize("src,name,target,count", CASES[:6])
def test_round_trips(src, name, target, count):
    d, g = setup(src, name)
    f = fold(d, g)
    inv = invariant_friezes(d, g)
    down = [descend(b, f) for b in inv]
    assert [lift(b, f) for b in down] == inv
    assert sorted(b.seed for b in down) == [b.seed for b in enumerate_friezes(f.target)]


def test_fibers_are_orbits():
    d, g = setup("E6", "mirror")
    f = fold(d, g)
    assert sorted(f.fiber(k) for k in range(4)) == sorted(g.orbits())


def test_orientation_must_be_stable():
    t = DynkinType("A", 3)
    with pytest.raises(FoldingError):
        fold(default_orientation(t), automorphism(t, "mirror"))


def test_descend_rejects_non_invariant():
    d, g = setup("D4", "arm-swap")
    f = fold(d, g)
    b = next(b for b in enumerate_friezes(d) if not is_invariant(b, g))
    with pytest.raises(FoldingError):
        descend(b, f)
    with pytest.raises(FoldingError):
        lift(validate_seed(d, (1, 1, 1, 1)), f)
