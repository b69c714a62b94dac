"""Frieze bands: the positive-integer solutions of the mesh recurrence.

A band is stored by its seed column ``a(., 0)`` together with the columns
``a(., 0) ... a(., p-1)`` of one period.  Column ``m+1`` is obtained from
column ``m`` by

    a(j,m) a(j,m+1) = 1 + prod_{j->i} a(i,m)^|C_ij| * prod_{i->j} a(i,m+1)^|C_ij|

evaluated in a topological order of the orientation.  A band is a function of
``(j, m)``, so two seeds that are columns of the same periodic array give two
different friezes (they are translates, not equal).
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .dynkin import DynkinType, OrientedDiagram, coxeter_number

log = logging.getLogger(__name__)


class NonIntegral(ArithmeticError):
    """A division in the recurrence was inexact."""

    def __init__(self, node: int, column: int = 1):
        super().__init__(f"non-integral value at node {node + 1}, column {column}")
        self.node = node
        self.column = column


class InvalidSeed(ValueError):
    """Raised by :func:`validate_seed`; ``reason`` is NonIntegral, NonPositive or NoRecurrence."""

    def __init__(self, reason: str, column: int, detail: str = ""):
        super().__init__(f"{reason} at column {column}" + (f": {detail}" if detail else ""))
        self.reason = reason
        self.column = column


@dataclass(frozen=True)
class FriezeBand:
    diagram: OrientedDiagram
    columns: tuple[tuple[int, ...], ...]

    @property
    def seed(self) -> tuple[int, ...]:
        return self.columns[0]

    @property
    def period(self) -> int:
        return len(self.columns)

    def value(self, j: int, m: int) -> int:
        return self.columns[m % self.period][j]

    def row(self, j: int) -> tuple[int, ...]:
        return tuple(col[j] for col in self.columns)

    def entries(self) -> Iterable[int]:
        for col in self.columns:
            yield from col

    def shifted(self, k: int) -> "FriezeBand":
        """The translate whose seed is column ``k``."""
        k %= self.period
        return FriezeBand(self.diagram, self.columns[k:] + self.columns[:k])

    def to_json(self) -> dict:
        return {
            "type": str(self.diagram.dynkin_type),
            "orientation": self.diagram.edge_list(),
            "seed": list(self.seed),
            "period": self.period,
            "columns": [list(c) for c in self.columns],
        }


def next_slice(d: OrientedDiagram, s: Sequence[int], column: int = 1) -> tuple[int, ...]:
    """One step of the recurrence; raises :class:`NonIntegral` on an inexact division."""
    new = [0] * d.n
    outs, ins, cartan = d.out_neighbors, d.in_neighbors, d.cartan
    for j in d.topological_order:
        p = 1
        for i in outs[j]:
            p *= s[i] ** -cartan[i][j]
        for i in ins[j]:
            p *= new[i] ** -cartan[i][j]
        q, r = divmod(p + 1, s[j])
        if r:
            raise NonIntegral(j, column)
        new[j] = q
    return tuple(new)


def validate_seed(d: OrientedDiagram, seed: Sequence[int]) -> FriezeBand:
    """Propagate ``seed`` until it recurs; at most ``h + 2`` steps."""
    seed = tuple(int(x) for x in seed)
    if len(seed) != d.n:
        raise ValueError(f"seed has {len(seed)} entries, diagram has {d.n} nodes")
    if any(x < 1 for x in seed):
        raise InvalidSeed("NonPositive", 0)
    horizon = coxeter_number(d.dynkin_type) + 2
    columns = [seed]
    for m in range(1, horizon + 1):
        try:
            col = next_slice(d, columns[-1], m)
        except NonIntegral as e:
            raise InvalidSeed("NonIntegral", m, str(e)) from None
        if any(x < 1 for x in col):
            raise InvalidSeed("NonPositive", m)
        if col == seed:
            return FriezeBand(d, tuple(columns))
        columns.append(col)
    log.warning("seed %s on %s did not recur within %d steps", seed, d.dynkin_type, horizon)
    raise InvalidSeed("NoRecurrence", horizon)


def is_frieze_seed(d: OrientedDiagram, seed: Sequence[int]) -> bool:
    try:
        validate_seed(d, seed)
    except InvalidSeed:
        return False
    return True


def period(b: FriezeBand) -> int:
    return b.period


def check_band(b: FriezeBand) -> list[str]:
    """Every violated instance of the recurrence in ``b`` (empty when valid)."""
    d = b.diagram
    bad = []
    for m in range(b.period):
        for j in range(d.n):
            lhs = b.value(j, m) * b.value(j, m + 1) - 1
            rhs = 1
            for i in d.out_neighbors[j]:
                rhs *= b.value(i, m) ** d.exponent(i, j)
            for i in d.in_neighbors[j]:
                rhs *= b.value(i, m + 1) ** d.exponent(i, j)
            if lhs != rhs:
                bad.append(f"node {j + 1}, column {m}: {lhs + 1} != 1 + {rhs}")
            if b.value(j, m) < 1:
                bad.append(f"node {j + 1}, column {m}: non-positive entry")
    return bad


def render_band(b: FriezeBand, columns: int | None = None) -> str:
    """Rows in node order, columns repeated cyclically, right-aligned."""
    k = b.period if columns is None else columns
    rows = [[b.value(j, m) for m in range(k)] for j in range(b.diagram.n)]
    width = max((len(str(x)) for row in rows for x in row), default=1)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in rows)


def band_from_json(data: dict, cartan=None) -> FriezeBand:
    t = DynkinType.parse(data["type"])
    d = OrientedDiagram.from_edge_list(t, data["orientation"], cartan)
    cols = tuple(tuple(int(x) for x in c) for c in data["columns"])
    return FriezeBand(d, cols)


# -- exhaustive search -------------------------------------------------------


class _Plan:
    """Seed assignment order and the recurrence checks enabled at each depth.

    Entry ``(j, c)`` of column ``c`` depends on a set of seed nodes; once all
    of them are assigned the entry is computed and its divisibility checked.
    Most seeds die in the first one or two columns.
    """

    def __init__(self, d: OrientedDiagram, bound: Sequence[int], depth: int = 3):
        self.d = d
        n = d.n
        deps = [[frozenset([j]) for j in range(n)]]
        for c in range(1, depth + 1):
            cur = [None] * n
            for j in d.topological_order:
                s = set(deps[c - 1][j])
                for i in d.out_neighbors[j]:
                    s |= deps[c - 1][i]
                for i in d.in_neighbors[j]:
                    s |= cur[i]
                cur[j] = frozenset(s)
            deps.append(cur)
        self.depth = depth
        checks = [(c, j) for c in range(1, depth + 1) for j in d.topological_order]
        assigned: set[int] = set()
        order = []
        done: set = set()
        self.schedule: list[list[tuple[int, int]]] = []
        while len(order) < n:
            best, best_key = None, None
            for v in range(n):
                if v in assigned:
                    continue
                trial = assigned | {v}
                gained = sum(1 for (c, j) in checks if (c, j) not in done and deps[c][j] <= trial)
                near = sum(
                    len(deps[c][j] & trial) / len(deps[c][j])
                    for (c, j) in checks
                    if c == 1 and (c, j) not in done
                )
                key = (gained, near, -bound[v], -v)
                if best_key is None or key > best_key:
                    best, best_key = v, key
            assigned.add(best)
            order.append(best)
            newly = [(c, j) for (c, j) in checks if (c, j) not in done and deps[c][j] <= assigned]
            done.update(newly)
            self.schedule.append(newly)
        self.order = tuple(order)


def _search_chunk(d: OrientedDiagram, bound: tuple[int, ...], first_value: int) -> list[tuple[int, ...]]:
    """All valid seeds whose first assigned node takes ``first_value``."""
    plan = _Plan(d, bound)
    n = d.n
    order, schedule = plan.order, plan.schedule
    outs, ins, cartan = d.out_neighbors, d.in_neighbors, d.cartan
    steps = [
        [(c, j, tuple((i, -cartan[i][j]) for i in outs[j]), tuple((i, -cartan[i][j]) for i in ins[j])) for (c, j) in sched]
        for sched in schedule
    ]
    horizon = coxeter_number(d.dynkin_type) + 2
    cols = [[0] * n for _ in range(plan.depth + 1)]
    seed = cols[0]
    found = []

    def finish():
        s = tuple(seed)
        computed = [tuple(c) for c in cols]
        for m in range(1, plan.depth + 1):
            if computed[m] == s:
                found.append(s)
                return
        prev = computed[-1]
        for m in range(plan.depth + 1, horizon + 1):
            try:
                prev = next_slice(d, prev, m)
            except NonIntegral:
                return
            if prev == s:
                found.append(s)
                return
        log.warning("seed %s on %s passed integrality but did not recur", s, d.dynkin_type)

    def go(k):
        v = order[k]
        lo, hi = (first_value, first_value) if k == 0 else (1, bound[v])
        last = k == n - 1
        for x in range(lo, hi + 1):
            seed[v] = x
            ok = True
            for c, j, out_e, in_e in steps[k]:
                prev, cur = cols[c - 1], cols[c]
                p = 1
                for i, e in out_e:
                    p *= prev[i] ** e if e != 1 else prev[i]
                for i, e in in_e:
                    p *= cur[i] ** e if e != 1 else cur[i]
                q, r = divmod(p + 1, prev[j])
                if r:
                    ok = False
                    break
                cur[j] = q
            if not ok:
                continue
            if last:
                finish()
            else:
                go(k + 1)

    go(0)
    return found


def _resolve_threads(threads: int | None) -> int:
    if threads is None or threads <= 0:
        return os.cpu_count() or 1
    return threads


def enumerate_seeds(
    d: OrientedDiagram,
    bound: Sequence[int],
    threads: int | None = 1,
    checkpoint: str | os.PathLike | None = None,
) -> list[tuple[int, ...]]:
    """All frieze seeds inside the box ``1 <= seed[j] <= bound[j]``, sorted.

    The box is split on the value of the first node in the search order; the
    chunks are independent and can run in a process pool.  With
    ``checkpoint`` the finished chunks are persisted as JSON and skipped on a
    rerun with the same diagram and bound.
    """
    bound = tuple(int(b) for b in bound)
    if len(bound) != d.n or any(b < 1 for b in bound):
        raise ValueError("bound must have one positive entry per node")
    first = _Plan(d, bound).order[0]
    values = list(range(1, bound[first] + 1))

    state_key = {"type": str(d.dynkin_type), "orientation": d.edge_list(), "bound": list(bound)}
    done: dict[int, list] = {}
    path = Path(checkpoint) if checkpoint else None
    if path and path.exists():
        saved = json.loads(path.read_text())
        if saved.get("key") == state_key:
            done = {int(k): [tuple(s) for s in v] for k, v in saved["done"].items()}
            log.info("resuming from %s: %d/%d chunks done", path, len(done), len(values))

    def save():
        if path:
            tmp = path.with_suffix(path.suffix + ".tmp")
            payload = {"key": state_key, "done": {str(k): [list(s) for s in v] for k, v in sorted(done.items())}}
            tmp.write_text(json.dumps(payload))
            tmp.replace(path)

    todo = [v for v in values if v not in done]
    workers = _resolve_threads(threads)
    if workers == 1 or len(todo) <= 1:
        for v in todo:
            done[v] = _search_chunk(d, bound, v)
            save()
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(todo))) as pool:
            futures = {v: pool.submit(_search_chunk, d, bound, v) for v in todo}
            for v in todo:
                done[v] = futures[v].result()
                save()
    return sorted(s for v in values for s in done[v])


def enumerate_friezes(
    d: OrientedDiagram,
    bound: Sequence[int] | None = None,
    threads: int | None = 1,
    checkpoint: str | os.PathLike | None = None,
) -> list[FriezeBand]:
    """Every frieze of ``d`` whose seed lies in the bound box, sorted by seed.

    Without ``bound`` the per-node maxima over unitary friezes are used.  A
    warning is logged when a frieze touches the bound; with the default bound
    the unitary friezes themselves are exempt since they attain it by
    construction.
    """
    expected: set[tuple[int, ...]] = set()
    if bound is None:
        from .cluster import unitary_bounds, unitary_friezes

        bound = unitary_bounds(d)
        expected = {b.seed for b in unitary_friezes(d)}
    bound = tuple(bound)
    bands = [validate_seed(d, s) for s in enumerate_seeds(d, bound, threads, checkpoint)]
    touching = saturated(bands, bound, exclude=expected)
    if touching:
        log.warning(
            "%d frieze(s) of %s reach the search bound %s; the bound may be too small",
            len(touching),
            d.dynkin_type,
            bound,
        )
    return bands


def saturated(bands: Iterable[FriezeBand], bound: Sequence[int], exclude=()) -> list[FriezeBand]:
    """Bands (outside ``exclude`` seeds) with some entry equal to its node's bound."""
    exclude = set(exclude)
    out = []
    for b in bands:
        if b.seed in exclude:
            continue
        if any(col[j] >= bound[j] for col in b.columns for j in range(len(bound))):
            out.append(b)
    return out
