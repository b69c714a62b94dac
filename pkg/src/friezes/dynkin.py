"""Dynkin types, Cartan matrices, orientations and diagram automorphisms.

Nodes are 0-based internally.  The numbering follows Bourbaki/Kac for the
chains and E-series; type D puts its two short arms at nodes 0 and 1 and the
branch node at 2, with the long arm continuing 2-3-...-(n-1).  Cartan entries
follow the Kac convention ``C[i][j] = <alpha_i^vee, alpha_j>``, which is the
convention under which the folding D_{n+1} -> B_n and A_{2n-1} -> C_n produce
the recurrence exponents of B_n and C_n respectively.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

FAMILIES = "ABCDEFG"

_COXETER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 12,
    "G": lambda n: 6,
}


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in FAMILIES:
            raise ValueError(f"unknown Dynkin family {f!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not ok:
            raise ValueError(f"invalid rank {n} for family {f}")

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "DynkinType":
        """Parse ``"D5"``, ``"e8"`` or a bare family letter plus ``rank``."""
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d*)\s*", text)
        if m is None:
            raise ValueError(f"cannot parse Dynkin type {text!r}")
        family = m.group(1).upper()
        if m.group(2):
            n = int(m.group(2))
            if rank is not None and rank != n:
                raise ValueError(f"rank {rank} conflicts with type {text!r}")
        elif rank is not None:
            n = rank
        else:
            raise ValueError(f"type {text!r} has no rank")
        return cls(family, n)

    def __str__(self):
        return f"{self.family}{self.rank}"


def _undirected_edges(t: DynkinType) -> list[tuple[int, int]]:
    n = t.rank
    if t.family in "ABCFG":
        return [(i, i + 1) for i in range(n - 1)]
    if t.family == "D":
        return [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 1)]
    # E: 1-3-4-5-..., 2-4 in Bourbaki labels
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]


@lru_cache(maxsize=None)
def cartan_matrix(t: DynkinType) -> tuple[tuple[int, ...], ...]:
    n = t.rank
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
    for i, j in _undirected_edges(t):
        c[i][j] = c[j][i] = -1
    if t.family == "B":
        c[n - 1][n - 2] = -2
    elif t.family == "C":
        c[n - 2][n - 1] = -2
    elif t.family == "F":
        c[2][1] = -2
    elif t.family == "G":
        c[1][0] = -3
    return tuple(tuple(row) for row in c)


def coxeter_number(t: DynkinType) -> int:
    return _COXETER[t.family](t.rank)


def symmetrizer(cartan) -> tuple[int, ...]:
    """Positive integers d with d[i]*C[i][j] == d[j]*C[j][i]."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and cartan[i][j] and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    stack.append(j)
    den = 1
    for x in d:
        den = den * x.denominator // _gcd(den, x.denominator)
    return tuple(int(x * den) for x in d)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class OrientedDiagram:
    """A Dynkin diagram together with an acyclic orientation of its edges.

    ``edges`` holds directed pairs ``(i, j)`` meaning ``i -> j``.  ``cartan``
    defaults to the standard matrix of ``dynkin_type`` but can be overridden,
    e.g. to test a transposed convention.
    """

    dynkin_type: DynkinType
    edges: frozenset
    cartan: tuple = None

    def __post_init__(self):
        if self.cartan is None:
            object.__setattr__(self, "cartan", cartan_matrix(self.dynkin_type))
        n = self.n
        c = self.cartan
        if len(c) != n or any(len(row) != n for row in c):
            raise ValueError("Cartan matrix has the wrong shape")
        undirected = {frozenset(e) for e in self.edges}
        if len(undirected) != len(self.edges):
            raise ValueError("edge oriented both ways")
        for i in range(n):
            if c[i][i] != 2:
                raise ValueError("Cartan diagonal must be 2")
            for j in range(n):
                if i == j:
                    continue
                if c[i][j] not in (0, -1, -2, -3):
                    raise ValueError(f"bad Cartan entry C[{i}][{j}]={c[i][j]}")
                if (c[i][j] != 0) != (frozenset((i, j)) in undirected):
                    raise ValueError(f"edges do not match Cartan at ({i},{j})")
        self.topological_order  # raises on cycles

    @property
    def n(self) -> int:
        return self.dynkin_type.rank

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            out[i].append(j)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        inn = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            inn[j].append(i)
        return tuple(tuple(x) for x in inn)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Nodes ordered so that ``i -> j`` implies ``i`` comes first."""
        indeg = [len(x) for x in self.in_neighbors]
        ready = sorted(i for i in range(self.n) if indeg[i] == 0)
        order = []
        while ready:
            i = ready.pop(0)
            order.append(i)
            for j in self.out_neighbors[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
            ready.sort()
        if len(order) != self.n:
            raise ValueError("orientation has a cycle")
        return tuple(order)

    def exponent(self, i: int, j: int) -> int:
        """Power of neighbour ``i`` in the exchange relation of node ``j``."""
        return -self.cartan[i][j]

    def edge_list(self) -> list[list[int]]:
        """Edges as sorted 1-based pairs, the form used in JSON."""
        return [[i + 1, j + 1] for i, j in sorted(self.edges)]

    @classmethod
    def from_edge_list(cls, t: DynkinType, pairs, cartan=None) -> "OrientedDiagram":
        return cls(t, frozenset((int(i) - 1, int(j) - 1) for i, j in pairs), cartan)


def default_orientation(t: DynkinType) -> OrientedDiagram:
    """Chains point 1->2->...; D and E arms all point toward the branch node."""
    n = t.rank
    if t.family in "ABCFG":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif t.family == "D":
        edges = [(0, 2), (1, 2)] + [(i + 1, i) for i in range(2, n - 1)]
    else:
        edges = [(0, 2), (2, 3), (1, 3)] + [(i + 1, i) for i in range(3, n - 1)]
    return OrientedDiagram(t, frozenset(edges))


def symmetric_orientation(t: DynkinType) -> OrientedDiagram:
    """An orientation stabilised by every automorphism in :func:`automorphisms`.

    Only type A differs from :func:`default_orientation`: odd chains are
    oriented toward the middle node so that the mirror preserves them.
    """
    if t.family == "A" and t.rank % 2 == 1 and t.rank >= 3:
        mid = t.rank // 2
        edges = [(i, i + 1) for i in range(mid)] + [(i + 1, i) for i in range(mid, t.rank - 1)]
        return OrientedDiagram(t, frozenset(edges))
    return default_orientation(t)


@dataclass(frozen=True)
class DiagramAutomorphism:
    perm: tuple[int, ...]
    name: str = ""

    def __call__(self, i: int) -> int:
        return self.perm[i]

    @property
    def order(self) -> int:
        k, p = 1, self.perm
        while any(p[i] != i for i in range(len(p))):
            p = tuple(self.perm[x] for x in p)
            k += 1
        return k

    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.perm)):
            if i in seen:
                continue
            orbit, j = [], i
            while j not in seen:
                seen.add(j)
                orbit.append(j)
                j = self.perm[j]
            out.append(tuple(sorted(orbit)))
        return out

    def preserves(self, d: OrientedDiagram) -> bool:
        g = self.perm
        if len(g) != d.n:
            return False
        c = d.cartan
        for i, j in d.edges:
            if (g[i], g[j]) not in d.edges:
                return False
        return all(c[g[i]][g[j]] == c[i][j] for i in range(d.n) for j in range(d.n))


def automorphisms(t: DynkinType) -> list[DiagramAutomorphism]:
    """Folding generators: D arm swap, D4 rotation, odd-A mirror, E6 mirror."""
    n = t.rank
    if t.family == "A" and n % 2 == 1 and n >= 3:
        return [DiagramAutomorphism(tuple(range(n - 1, -1, -1)), "mirror")]
    if t.family == "D":
        swap = DiagramAutomorphism((1, 0) + tuple(range(2, n)), "arm-swap")
        if n == 4:
            return [swap, DiagramAutomorphism((1, 3, 2, 0), "rotation")]
        return [swap]
    if t.family == "E" and n == 6:
        return [DiagramAutomorphism((5, 1, 4, 3, 2, 0), "mirror")]
    return []


def automorphism(t: DynkinType, name: str) -> DiagramAutomorphism:
    for g in automorphisms(t):
        if g.name == name:
            return g
    raise ValueError(f"{t} has no automorphism named {name!r}")
