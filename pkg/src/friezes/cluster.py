"""Numeric cluster mutation for finite types.

Seeds carry exact positive rationals instead of cluster variables.  Clusters
are told apart by a generic numeric shadow: the initial cluster is set to
distinct primes, so two different cluster variables almost surely take
different values.  Any coincidence that would merge two different seeds is
detected and the search is repeated with other primes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .band import FriezeBand, InvalidSeed, validate_seed
from .dynkin import OrientedDiagram, symmetrizer

MAX_CLUSTERS = 200_000

_PRIMES = (
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277,
)


class ClusterCollision(RuntimeError):
    pass


def exchange_matrix(d: OrientedDiagram) -> tuple[tuple[int, ...], ...]:
    """``B[i][j] = |C[i][j]|`` for an arrow ``i -> j`` and ``-|C[i][j]|`` for ``j -> i``."""
    n = d.n
    b = [[0] * n for _ in range(n)]
    for i, j in d.edges:
        b[i][j] = -d.cartan[i][j]
        b[j][i] = d.cartan[j][i]
    return tuple(tuple(r) for r in b)


def mutate_matrix(b, k: int) -> tuple[tuple[int, ...], ...]:
    n = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                bik, bkj = b[i][k], b[k][j]
                row.append(b[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(row))
    return tuple(out)


def is_skew_symmetrizable(b, d: Sequence[int]) -> bool:
    n = len(b)
    return all(d[i] * b[i][j] == -d[j] * b[j][i] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class NumericSeed:
    exchange: tuple[tuple[int, ...], ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if any(v <= 0 for v in self.values):
            raise ValueError("seed values must be positive")

    @classmethod
    def initial(cls, d: OrientedDiagram, values: Sequence) -> "NumericSeed":
        return cls(exchange_matrix(d), tuple(Fraction(v) for v in values))

    def mutate(self, k: int) -> "NumericSeed":
        b, v = self.exchange, self.values
        pos = neg = Fraction(1)
        for i in range(len(v)):
            e = b[i][k]
            if e > 0:
                pos *= v[i] ** e
            elif e < 0:
                neg *= v[i] ** -e
        new = list(v)
        new[k] = (pos + neg) / v[k]
        return NumericSeed(mutate_matrix(b, k), tuple(new))

    def mutate_path(self, path: Sequence[int]) -> "NumericSeed":
        s = self
        for k in path:
            s = s.mutate(k)
        return s


def mutate(s: NumericSeed, k: int) -> NumericSeed:
    return s.mutate(k)


@dataclass(frozen=True)
class ClusterSet:
    """Result of :func:`enumerate_clusters`: one seed and its mutation path per cluster."""

    diagram: OrientedDiagram
    paths: tuple[tuple[int, ...], ...]
    seeds: tuple[NumericSeed, ...]

    @property
    def count(self) -> int:
        return len(self.paths)

    def exchange_matrices(self) -> set:
        return {s.exchange for s in self.seeds}


def _bfs(d: OrientedDiagram, markers: Sequence[int], ceiling: int) -> ClusterSet:
    start = NumericSeed.initial(d, markers)
    seen = {frozenset(start.values): (start, ())}
    queue = deque([(start, ())])
    order = [frozenset(start.values)]
    while queue:
        seed, path = queue.popleft()
        for k in range(d.n):
            if path and path[-1] == k:
                continue
            nxt = seed.mutate(k)
            key = frozenset(nxt.values)
            if key in seen:
                other = seen[key][0]
                pos = {v: i for i, v in enumerate(other.values)}
                if len(pos) != d.n:
                    raise ClusterCollision("repeated value inside one cluster")
                p = [pos[v] for v in nxt.values]
                n = d.n
                if any(nxt.exchange[i][j] != other.exchange[p[i]][p[j]] for i in range(n) for j in range(n)):
                    raise ClusterCollision("same values, different exchange matrix")
                continue
            if len(seen) >= ceiling:
                raise RuntimeError(f"more than {ceiling} clusters for {d.dynkin_type}; not of finite type?")
            seen[key] = (nxt, path + (k,))
            order.append(key)
            queue.append((nxt, path + (k,)))
    return ClusterSet(d, tuple(seen[k][1] for k in order), tuple(seen[k][0] for k in order))


@lru_cache(maxsize=None)
def enumerate_clusters(d: OrientedDiagram, ceiling: int = MAX_CLUSTERS) -> ClusterSet:
    """Breadth-first closure of the initial seed under mutation."""
    for attempt in range(4):
        markers = _PRIMES[attempt * d.n : (attempt + 1) * d.n]
        if len(markers) < d.n:
            break
        try:
            return _bfs(d, markers, ceiling)
        except ClusterCollision:
            continue
    raise RuntimeError(f"could not separate the clusters of {d.dynkin_type}")


@lru_cache(maxsize=None)
def unitary_friezes(d: OrientedDiagram) -> tuple[FriezeBand, ...]:
    """The friezes sending some cluster to all 1's, sorted by seed.

    For each cluster, all-ones is placed on its seed and the mutation path is
    walked backwards to the initial exchange matrix, giving the seed column.
    """
    clusters = enumerate_clusters(d)
    bands = {}
    for seed, path in zip(clusters.seeds, clusters.paths):
        ones = NumericSeed(seed.exchange, (Fraction(1),) * d.n)
        back = ones.mutate_path(reversed(path))
        if any(v.denominator != 1 for v in back.values):
            raise AssertionError(f"unitary evaluation not integral along {path}")
        column = tuple(int(v) for v in back.values)
        try:
            bands[column] = validate_seed(d, column)
        except InvalidSeed as e:
            raise AssertionError(f"unitary seed {column} is not a frieze: {e}") from e
    return tuple(bands[k] for k in sorted(bands))


def unitary_bounds(d: OrientedDiagram) -> tuple[int, ...]:
    """Per-node maximum over all entries of all unitary friezes."""
    best = [1] * d.n
    for b in unitary_friezes(d):
        for col in b.columns:
            for j, x in enumerate(col):
                if x > best[j]:
                    best[j] = x
    return tuple(best)


def seed_symmetrizer(d: OrientedDiagram) -> tuple[int, ...]:
    return symmetrizer(d.cartan)
