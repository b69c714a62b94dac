import pytest
from hypothesis import given, strategies as st

from friezes.dynkin import (
    DiagramAutomorphism,
    DynkinType,
    OrientedDiagram,
    automorphism,
    automorphisms,
    cartan_matrix,
    coxeter_number,
    default_orientation,
    symmetric_orientation,
    symmetrizer,
)

ALL_SMALL = [DynkinType(f, n) for f in "ABCD" for n in range(1, 8) if (f, n) not in {("B", 1), ("C", 1), ("D", 1), ("D", 2)}]
ALL_SMALL += [DynkinType("E", n) for n in (6, 7, 8)] + [DynkinType("F", 4), DynkinType("G", 2)]


@pytest.mark.parametrize("text,want", [("D5", ("D", 5)), ("e8", ("E", 8)), (" G_2 ", ("G", 2))])
def test_parse(text, want):
    t = DynkinType.parse(text)
    assert (t.family, t.rank) == want
    assert str(t) == f"{want[0]}{want[1]}"


def test_parse_family_with_rank():
    assert DynkinType.parse("D", 5) == DynkinType("D", 5)


@pytest.mark.parametrize("text,rank", [("X3", None), ("D", None), ("D2", None), ("E9", None), ("F5", None), ("D5", 6), ("", None)])
def test_parse_rejects(text, rank):
    with pytest.raises(ValueError):
        DynkinType.parse(text, rank)


def test_b3_and_c3_are_transposes():
    b, c = cartan_matrix(DynkinType("B", 3)), cartan_matrix(DynkinType("C", 3))
    assert b == ((2, -1, 0), (-1, 2, -1), (0, -2, 2))
    assert c == tuple(zip(*b))


def test_exceptional_cartan():
    assert cartan_matrix(DynkinType("G", 2)) == ((2, -1), (-3, 2))
    assert cartan_matrix(DynkinType("F", 4)) == ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -2, 2, -1), (0, 0, -1, 2))


def test_d4_branch_node():
    c = cartan_matrix(DynkinType("D", 4))
    assert [j for j in range(4) if c[2][j] == -1] == [0, 1, 3]


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_cartan_symmetrizable(t):
    c = cartan_matrix(t)
    d = symmetrizer(c)
    n = t.rank
    assert all(x > 0 for x in d)
    assert all(d[i] * c[i][j] == d[j] * c[j][i] for i in range(n) for j in range(n))


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_coxeter_number_from_roots(t):
    # h = 2 * (number of positive roots) / rank, roots counted by reflecting simple roots
    c = cartan_matrix(t)
    n = t.rank
    roots = {tuple(int(i == k) for i in range(n)) for k in range(n)}
    frontier = list(roots)
    while frontier:
        new = []
        for r in frontier:
            for k in range(n):
                pair = sum(r[i] * c[i][k] for i in range(n))
                s = tuple(r[i] - (pair if i == k else 0) for i in range(n))
                if all(x >= 0 for x in s) and any(s) and s not in roots:
                    roots.add(s)
                    new.append(s)
        frontier = new
    assert coxeter_number(t) == 2 * len(roots) // n


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_orientations_are_acyclic_trees(t):
    for d in (default_orientation(t), symmetric_orientation(t)):
        assert len(d.edges) == t.rank - 1
        order = d.topological_order
        pos = {v: k for k, v in enumerate(order)}
        assert all(pos[i] < pos[j] for i, j in d.edges)


def test_d4_default_points_into_center():
    d = default_orientation(DynkinType("D", 4))
    assert d.edge_list() == [[1, 3], [2, 3], [4, 3]]


def test_default_a3_is_linear():
    assert default_orientation(DynkinType("A", 3)).edge_list() == [[1, 2], [2, 3]]


def test_edge_list_round_trip():
    d = default_orientation(DynkinType("E", 7))
    assert OrientedDiagram.from_edge_list(d.dynkin_type, d.edge_list()) == d


@pytest.mark.parametrize(
    "pairs",
    [[(1, 2)], [(1, 2), (2, 3), (3, 1)], [(1, 3), (2, 3)], [(1, 2), (2, 1)]],
)
def test_bad_orientations(pairs):
    with pytest.raises(ValueError):
        OrientedDiagram.from_edge_list(DynkinType("A", 3), pairs)


def test_exponent_reads_cartan():
    d = default_orientation(DynkinType("G", 2))
    assert d.exponent(1, 0) == 3 and d.exponent(0, 1) == 1


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_automorphisms_preserve_symmetric_orientation(t):
    d = symmetric_orientation(t)
    for g in automorphisms(t):
        assert g.preserves(d)
        assert sorted(g.perm) == list(range(t.rank))


def test_automorphism_lookup():
    g = automorphism(DynkinType("D", 4), "rotation")
    assert g.order == 3
    assert g.orbits() == [(0, 1, 3), (2,)]
    with pytest.raises(ValueError):
        automorphism(DynkinType("A", 4), "mirror")


def test_linear_a3_is_not_mirror_stable():
    g = automorphism(DynkinType("A", 3), "mirror")
    assert not g.preserves(default_orientation(DynkinType("A", 3)))


@given(st.permutations(range(6)))
def test_orbits_partition(perm):
    g = DiagramAutomorphism(tuple(perm))
    orbits = g.orbits()
    assert sorted(x for o in orbits for x in o) == list(range(6))
    p = tuple(range(6))
    for _ in range(g.order):
        p = tuple(g(x) for x in p)
    assert p == tuple(range(6))
