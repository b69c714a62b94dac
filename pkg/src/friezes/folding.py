"""Folding simply-laced diagrams by an automorphism.

A band on the folded diagram lifts by copying each orbit's row to every node
of the orbit; an invariant band descends by reading one row per orbit.  The
four supported foldings are D_{n+1} -> B_n, A_{2n-1} -> C_n, D_4 -> G_2 and
E_6 -> F_4.
"""

from __future__ import annotations

from dataclasses import dataclass

from .band import FriezeBand, InvalidSeed, enumerate_friezes, validate_seed
from .counting import frieze_count
from .dynkin import (
    DiagramAutomorphism,
    DynkinType,
    OrientedDiagram,
    cartan_matrix,
)


class FoldingError(ValueError):
    pass


@dataclass(frozen=True)
class Folding:
    source: OrientedDiagram
    auto: DiagramAutomorphism
    target: OrientedDiagram
    node_map: tuple[int, ...]

    def fiber(self, k: int) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.node_map) if x == k)


def _target_layout(t: DynkinType, g: DiagramAutomorphism) -> tuple[DynkinType, list[int]]:
    n = t.rank
    if t.family == "D" and g.perm[:2] == (1, 0) and g.order == 2:
        # arms 0,1 -> short node n-2; branch and long arm run back down the B chain
        return DynkinType("B", n - 1), [n - 2, n - 2] + [n - k for k in range(3, n + 1)]
    if t.family == "D" and n == 4 and g.order == 3:
        return DynkinType("G", 2), [1, 1, 0, 1]
    if t.family == "A" and n % 2 == 1 and n >= 3 and g.perm == tuple(range(n - 1, -1, -1)):
        half = (n + 1) // 2
        return DynkinType("C", half), [min(i, n - 1 - i) for i in range(n)]
    if t.family == "E" and n == 6 and g.order == 2:
        return DynkinType("F", 4), [3, 0, 2, 1, 2, 3]
    raise FoldingError(f"unsupported folding of {t} by {g.name or g.perm}")


def fold(d: OrientedDiagram, g: DiagramAutomorphism) -> Folding:
    if not g.preserves(d):
        raise FoldingError(f"{g.name or g.perm} does not preserve the orientation of {d.dynkin_type}")
    target_type, node_map = _target_layout(d.dynkin_type, g)
    for orbit in g.orbits():
        if len({node_map[i] for i in orbit}) != 1:
            raise AssertionError("node map is not constant on orbits")
    k = target_type.rank
    reps = [node_map.index(x) for x in range(k)]
    cartan = [[2 if a == b else 0 for b in range(k)] for a in range(k)]
    for a in range(k):
        for b in range(k):
            if a != b:
                # power of orbit a in the relation of a node of orbit b
                cartan[a][b] = sum(d.cartan[i][reps[b]] for i in range(d.n) if node_map[i] == a)
    if tuple(map(tuple, cartan)) != cartan_matrix(target_type):
        raise AssertionError(f"folded Cartan matrix {cartan} is not that of {target_type}")
    edges = frozenset((node_map[i], node_map[j]) for i, j in d.edges)
    target = OrientedDiagram(target_type, edges)
    return Folding(d, g, target, tuple(node_map))


def is_invariant(b: FriezeBand, g: DiagramAutomorphism) -> bool:
    return all(col[g(j)] == col[j] for col in b.columns for j in range(len(col)))


def descend(b: FriezeBand, f: Folding) -> FriezeBand:
    if b.diagram != f.source:
        raise FoldingError("band is not on the folding's source diagram")
    if not is_invariant(b, f.auto):
        raise FoldingError("band is not invariant under the automorphism")
    k = f.target.n
    reps = [f.fiber(x)[0] for x in range(k)]
    cols = tuple(tuple(col[r] for r in reps) for col in b.columns)
    out = validate_seed(f.target, cols[0])
    if out.columns != cols:
        raise AssertionError("descended band disagrees with the folded recurrence")
    return out


def lift(b: FriezeBand, f: Folding) -> FriezeBand:
    if b.diagram != f.target:
        raise FoldingError("band is not on the folding's target diagram")
    cols = tuple(tuple(col[f.node_map[i]] for i in range(f.source.n)) for col in b.columns)
    try:
        out = validate_seed(f.source, cols[0])
    except InvalidSeed as e:
        raise AssertionError(f"lifted seed {cols[0]} is not a frieze: {e}") from e
    if out.columns != cols:
        raise AssertionError("lifted band disagrees with the source recurrence")
    return out


def invariant_friezes(d: OrientedDiagram, g: DiagramAutomorphism, bound=None, threads=1) -> list[FriezeBand]:
    return [b for b in enumerate_friezes(d, bound, threads=threads) if is_invariant(b, g)]


def count_invariant(d: OrientedDiagram, g: DiagramAutomorphism, bound=None, threads=1) -> int:
    return len(invariant_friezes(d, g, bound, threads))


def folded_count(f: Folding):
    """Closed-form count for the folded type."""
    return frieze_count(f.target.dynkin_type)
