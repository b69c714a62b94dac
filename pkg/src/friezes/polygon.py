"""Tagged arcs of the once-punctured n-gon and type-D friezes as arc weights.

Vertices are numbered 1..n clockwise.  ``Boundary(s, t)`` is the arc from
``s`` to ``t`` whose clockwise side ``s, s+1, ..., t`` does not contain the
puncture; lifting it to the integer interval ``[s, t]`` (``t`` shifted by
``n`` when ``t < s``) turns crossing questions into interval arithmetic.
``Spoke(v, notched)`` joins ``v`` to the puncture.

Exchange relations come in three shapes:

* Ptolemy on a quadrilateral: ``xy = ac + bd``.  A side may be a boundary
  edge (weight 1), and a side that winds once around the puncture from ``v``
  back to ``v`` stands for the product of the two spokes at ``v``.  A
  quadrilateral may also have the puncture as a corner, with spokes as sides.
* Two spokes with different tags at different vertices: ``xy = a + b`` where
  ``a`` and ``b`` bound the punctured digon between them.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Mapping

from .counting import divisors


@dataclass(frozen=True, slots=True)
class Spoke:
    vertex: int
    notched: bool = False

    def __str__(self):
        return f"S{'-' if self.notched else '+'}{self.vertex}"


@dataclass(frozen=True, slots=True)
class Boundary:
    s: int
    t: int

    def __str__(self):
        return f"B {self.s} {self.t}"


TaggedArc = Spoke | Boundary


def arc_key(a: TaggedArc):
    if isinstance(a, Spoke):
        return (0, a.notched, a.vertex)
    return (1, a.s, a.t)


def parse_arc(text: str) -> TaggedArc:
    text = text.strip()
    if text.startswith("S"):
        sign, v = text[1], int(text[2:])
        if sign not in "+-":
            raise ValueError(f"bad spoke {text!r}")
        return Spoke(v, sign == "-")
    parts = text.split()
    if len(parts) == 3 and parts[0] == "B":
        return Boundary(int(parts[1]), int(parts[2]))
    raise ValueError(f"cannot parse arc {text!r}")


def _norm(v: int, n: int) -> int:
    return (v - 1) % n + 1


def _lift(a: Boundary, n: int) -> tuple[int, int]:
    return (a.s, a.t if a.t > a.s else a.t + n)


def _above(v: int, lo: int, n: int) -> int:
    """Least translate ``v + kn`` strictly greater than ``lo``."""
    return lo + (v - lo - 1) % n + 1


def check_arc(a: TaggedArc, n: int) -> None:
    if isinstance(a, Spoke):
        if not 1 <= a.vertex <= n:
            raise ValueError(f"{a} is not an arc of the {n}-gon")
    elif not (1 <= a.s <= n and 1 <= a.t <= n) or a.t in (a.s, _norm(a.s + 1, n)):
        raise ValueError(f"{a} is not an arc of the {n}-gon")


def all_arcs(n: int) -> list[TaggedArc]:
    """The n**2 tagged arcs: 2n spokes and n(n-2) boundary arcs."""
    if n < 3:
        raise ValueError("the punctured polygon needs n >= 3")
    arcs: list[TaggedArc] = [Spoke(v, tag) for tag in (False, True) for v in range(1, n + 1)]
    for s in range(1, n + 1):
        for k in range(2, n):
            arcs.append(Boundary(s, _norm(s + k, n)))
    return arcs


def _crossing_translates(a: Boundary, b: Boundary, n: int) -> list[tuple[int, int]]:
    """Translates of ``b``'s interval that strictly interleave ``a``'s."""
    a0, a1 = _lift(a, n)
    b0, b1 = _lift(b, n)
    out = []
    x = _above(b0, a0, n)
    if x < a1 and x + (b1 - b0) > a1:
        out.append((x, x + b1 - b0))
    y = _above(b1, a0, n)
    if y < a1 and y - (b1 - b0) < a0:
        out.append((y - (b1 - b0), y))
    return out


def incompatible(a: TaggedArc, b: TaggedArc, n: int) -> bool:
    check_arc(a, n)
    check_arc(b, n)
    if isinstance(a, Spoke) and isinstance(b, Spoke):
        return a.notched != b.notched and a.vertex != b.vertex
    if isinstance(a, Spoke):
        a, b = b, a
    if isinstance(b, Spoke):
        lo, hi = _lift(a, n)
        return _above(b.vertex, lo, n) < hi
    return bool(_crossing_translates(a, b, n))


@dataclass(frozen=True)
class Triangulation:
    n: int
    arcs: frozenset

    @property
    def spokes(self) -> list[Spoke]:
        return sorted((a for a in self.arcs if isinstance(a, Spoke)), key=arc_key)

    @property
    def plain_spokes(self) -> list[Spoke]:
        return [a for a in self.spokes if not a.notched]

    @property
    def boundary_arcs(self) -> list[Boundary]:
        return sorted((a for a in self.arcs if isinstance(a, Boundary)), key=arc_key)

    def sorted_arcs(self) -> list[TaggedArc]:
        return sorted(self.arcs, key=arc_key)

    def key(self):
        return tuple(arc_key(a) for a in self.sorted_arcs())


def is_triangulation(n: int, arcs: Iterable[TaggedArc]) -> bool:
    arcs = set(arcs)
    if any(incompatible(a, b, n) for a in arcs for b in arcs):
        return False
    return all(a in arcs or any(incompatible(a, b, n) for b in arcs) for a in all_arcs(n))


@lru_cache(maxsize=None)
def _compat_masks(n: int):
    arcs = all_arcs(n)
    masks = []
    for i, a in enumerate(arcs):
        m = 0
        for j, b in enumerate(arcs):
            if i != j and not incompatible(a, b, n):
                m |= 1 << j
        masks.append(m)
    return arcs, masks


def _maximal_cliques(masks: list[int]) -> Iterable[int]:
    # Bron-Kerbosch with pivoting on bitsets.
    def bits(x):
        while x:
            low = x & -x
            yield low.bit_length() - 1
            x ^= low

    def rec(r, p, x):
        if not p and not x:
            yield r
            return
        pivot = max(bits(p | x), key=lambda u: (p & masks[u]).bit_count())
        for v in list(bits(p & ~masks[pivot])):
            yield from rec(r | (1 << v), p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    yield from rec(0, (1 << len(masks)) - 1, 0)


@lru_cache(maxsize=None)
def enumerate_triangulations(n: int) -> tuple[Triangulation, ...]:
    """All tagged triangulations, as maximal sets of pairwise compatible arcs."""
    arcs, masks = _compat_masks(n)
    out = []
    for clique in _maximal_cliques(masks):
        chosen = frozenset(arcs[i] for i in range(len(arcs)) if clique >> i & 1)
        if len(chosen) != n:
            raise AssertionError(f"maximal compatible set of size {len(chosen)} for n={n}")
        out.append(Triangulation(n, chosen))
    return tuple(sorted(out, key=Triangulation.key))


def triangulations_with_spokes(n: int, m: int) -> list[Triangulation]:
    """Triangulations with exactly ``m`` plain spokes and no notched spoke.

    For ``m == 1`` the plain spoke comes with its notched companion at the
    same vertex.
    """
    if not 1 <= m <= n:
        raise ValueError(f"spoke count {m} outside 1..{n}")
    out = []
    for t in enumerate_triangulations(n):
        plain = t.plain_spokes
        notched = len(t.spokes) - len(plain)
        if len(plain) == m and (notched == 0 if m >= 2 else notched == 1):
            out.append(t)
    return out


# -- exchange relations ------------------------------------------------------


@dataclass(frozen=True)
class ExchangeRelation:
    """``w(x) * w(y) == prod(w(left)) + prod(w(right))``; boundary edges are omitted."""

    x: TaggedArc
    y: TaggedArc
    left: tuple
    right: tuple

    def sides(self) -> set:
        return set(self.left) | set(self.right)

    def other(self, a: TaggedArc) -> TaggedArc:
        return self.y if a == self.x else self.x


def _chord(i: int, j: int, n: int) -> tuple:
    """Monomial for the side from lifted vertex ``i`` to ``j`` (``i < j <= i + n``)."""
    d = j - i
    if d == 1:
        return ()
    if d == n:
        v = _norm(i, n)
        return (Spoke(v, False), Spoke(v, True))
    if 1 < d < n:
        return (Boundary(_norm(i, n), _norm(j, n)),)
    raise ValueError(f"no side from {i} to {j}")


def _relation(a: TaggedArc, b: TaggedArc, n: int) -> ExchangeRelation | None:
    if isinstance(a, Spoke) and isinstance(b, Spoke):
        if a.notched == b.notched or a.vertex == b.vertex:
            return None
        u = a.vertex
        v = _above(b.vertex, u, n)
        return ExchangeRelation(a, b, _chord(u, v, n), _chord(v, u + n, n))
    if isinstance(a, Spoke) or isinstance(b, Spoke):
        spoke, arc = (a, b) if isinstance(a, Spoke) else (b, a)
        u, w = _lift(arc, n)
        v = _above(spoke.vertex, u, n)
        if v >= w:
            return None
        tag = spoke.notched
        return ExchangeRelation(
            a,
            b,
            _chord(u, v, n) + (Spoke(_norm(w, n), tag),),
            _chord(v, w, n) + (Spoke(u, tag),),
        )
    translates = _crossing_translates(a, b, n)
    if len(translates) != 1:
        return None
    v1, v2, v3, v4 = sorted(_lift(a, n) + translates[0])
    if v4 - v1 > n:
        return None
    return ExchangeRelation(a, b, _chord(v1, v2, n) + _chord(v3, v4, n), _chord(v2, v3, n) + _chord(v1, v4, n))


@lru_cache(maxsize=None)
def exchange_relations(n: int) -> dict:
    """Map ``frozenset({x, y})`` to the relation for every exchangeable pair.

    A crossing pair is exchangeable when its quadrilateral's sides are
    compatible with each other and with both diagonals, so that the sides
    plus either diagonal extend to a triangulation.
    """
    arcs = all_arcs(n)
    out = {}
    for i, a in enumerate(arcs):
        for b in arcs[i + 1 :]:
            if not incompatible(a, b, n):
                continue
            rel = _relation(a, b, n)
            if rel is None:
                continue
            sides = rel.sides()
            if any(incompatible(s, t, n) for s in sides for t in sides | {a, b} if s != t):
                continue
            out[frozenset((a, b))] = rel
    return out


class NonIntegralWeight(ArithmeticError):
    pass


class PropagationConflict(RuntimeError):
    pass


def _apply(rel: ExchangeRelation, w: Mapping, known: TaggedArc) -> int:
    num = prod(w[s] for s in rel.left) + prod(w[s] for s in rel.right)
    q, r = divmod(num, w[known])
    if r:
        raise NonIntegralWeight(f"{num} not divisible by w({known})={w[known]} in {rel}")
    return q


def flip(t: Triangulation, a: TaggedArc, w: Mapping) -> tuple[Triangulation, TaggedArc, int]:
    """Replace ``a`` by the other arc completing ``t - a``, with its weight."""
    if a not in t.arcs:
        raise ValueError(f"{a} is not in the triangulation")
    n = t.n
    rest = t.arcs - {a}
    cands = [b for b in all_arcs(n) if b != a and b not in rest and not any(incompatible(b, c, n) for c in rest)]
    if len(cands) != 1:
        raise AssertionError(f"flip of {a} has {len(cands)} candidates")
    b = cands[0]
    rel = exchange_relations(n).get(frozenset((a, b)))
    if rel is None:
        raise AssertionError(f"no exchange relation for {a} / {b}")
    return Triangulation(n, rest | {b}), b, _apply(rel, w, a)


@dataclass(frozen=True)
class FriezeDescriptor:
    """A triangulation whose spokes are plain, plus a divisor of its spoke count."""

    triangulation: Triangulation
    divisor: int

    def __post_init__(self):
        m = self.m
        if m < 1 or self.divisor < 1 or m % self.divisor:
            raise ValueError(f"divisor {self.divisor} does not divide spoke count {m}")
        notched = len(self.triangulation.spokes) - m
        if notched != (1 if m == 1 else 0):
            raise ValueError("descriptor triangulation must have plain spokes only")

    @property
    def m(self) -> int:
        return len(self.triangulation.plain_spokes)

    def to_json(self) -> dict:
        t = self.triangulation
        return {
            "spokes": [str(s) for s in t.spokes],
            "boundary": [str(b) for b in t.boundary_arcs],
            "divisor": self.divisor,
        }


def _relations_by_arc(n: int):
    rels = list(exchange_relations(n).values())
    touching = defaultdict(list)
    for r in rels:
        for arc in {r.x, r.y} | r.sides():
            touching[arc].append(r)
    return rels, touching


def weights_from_descriptor(n: int, d: FriezeDescriptor, rng: random.Random | None = None) -> dict:
    """Weights 1 on boundary arcs of T, x on its plain spokes, closed by exchange relations.

    ``rng`` shuffles the propagation order; the result must not depend on it.
    """
    t = d.triangulation
    if t.n != n:
        raise ValueError("descriptor is for a different polygon")
    w: dict = {}
    for arc in t.arcs:
        if isinstance(arc, Boundary):
            w[arc] = 1
        elif arc.notched:
            w[arc] = d.m // d.divisor
        else:
            w[arc] = d.divisor
    rels, touching = _relations_by_arc(n)
    queue = deque(rels)
    if rng is not None:
        rng.shuffle(queue)
    while queue:
        r = queue.popleft()
        if not all(s in w for s in r.left) or not all(s in w for s in r.right):
            continue
        if r.x in w and r.y in w:
            if w[r.x] * w[r.y] != prod(w[s] for s in r.left) + prod(w[s] for s in r.right):
                raise PropagationConflict(f"{r} violated while propagating {d}")
            continue
        if r.x not in w and r.y not in w:
            continue
        known = r.x if r.x in w else r.y
        new = r.other(known)
        w[new] = _apply(r, w, known)
        nxt = touching[new]
        if rng is not None:
            nxt = list(nxt)
            rng.shuffle(nxt)
        queue.extend(nxt)
    missing = [a for a in all_arcs(n) if a not in w]
    if missing:
        raise AssertionError(f"propagation did not reach {missing[:3]}")
    ok, bad = check_weights(n, w)
    if not ok:
        raise PropagationConflict(bad[0])
    return {a: w[a] for a in sorted(w, key=arc_key)}


def check_weights(n: int, w: Mapping) -> tuple[bool, list[str]]:
    """Check totality, positivity and every exchange relation."""
    bad = []
    for a in all_arcs(n):
        if a not in w:
            bad.append(f"{a}: missing")
        elif w[a] < 1:
            bad.append(f"{a}: non-positive weight {w[a]}")
    if bad:
        return False, bad
    for r in exchange_relations(n).values():
        lhs = w[r.x] * w[r.y]
        rhs = prod(w[s] for s in r.left) + prod(w[s] for s in r.right)
        if lhs != rhs:
            bad.append(f"w({r.x})*w({r.y}) = {lhs} != {rhs}")
    return not bad, bad


def descriptor_from_weights(n: int, w: Mapping) -> FriezeDescriptor:
    """Recover (T_0, x): the weight-1 arcs, then every plain spoke that fits.

    Weight-1 notched spokes are kept only beside a weight-1 plain spoke at
    the same vertex (the m = 1 pair); otherwise T_0 would be the notched
    triangulation and its spokes are replaced by plain ones of weight m.
    """
    ok, bad = check_weights(n, w)
    if not ok:
        raise ValueError(f"not a frieze: {bad[0]}")
    core = {a for a, x in w.items() if x == 1}
    if not any(isinstance(a, Spoke) and not a.notched for a in core):
        core = {a for a in core if not isinstance(a, Spoke)}
    for v in range(1, n + 1):
        s = Spoke(v)
        if s not in core and not any(incompatible(s, b, n) for b in core):
            core.add(s)
    plain = [a for a in core if isinstance(a, Spoke) and not a.notched]
    if len(plain) == 1:
        core.add(Spoke(plain[0].vertex, True))
    if len(core) != n or not is_triangulation(n, core):
        raise AssertionError(f"extracted arcs {sorted(map(str, core))} do not form a triangulation")
    weights = {w[s] for s in plain}
    if len(weights) != 1:
        raise AssertionError(f"spokes of T_0 carry different weights {weights}")
    return FriezeDescriptor(Triangulation(n, frozenset(core)), weights.pop())


def descriptors(n: int) -> list[FriezeDescriptor]:
    out = []
    for m in range(1, n + 1):
        for t in triangulations_with_spokes(n, m):
            for x in divisors(m):
                out.append(FriezeDescriptor(t, x))
    return out


def enumerate_friezes_geometric(n: int) -> list[dict]:
    maps = [weights_from_descriptor(n, d) for d in descriptors(n)]
    seen = {tuple(sorted((arc_key(a), x) for a, x in m.items())) for m in maps}
    if len(seen) != len(maps):
        raise AssertionError("two descriptors produced the same frieze")
    return maps


# -- structural checks -------------------------------------------------------


def weight_one_arcs(w: Mapping) -> set:
    return {a for a, x in w.items() if x == 1}


def crossing_ones(n: int, w: Mapping) -> list[tuple]:
    ones = sorted(weight_one_arcs(w), key=arc_key)
    return [(a, b) for i, a in enumerate(ones) for b in ones[i + 1 :] if incompatible(a, b, n)]


def cut_spoke_weights(n: int, w: Mapping) -> tuple[set, set, int]:
    """Plain and notched weights at the spokes of T_0, and its spoke count m."""
    d = descriptor_from_weights(n, w)
    vs = [s.vertex for s in d.triangulation.plain_spokes]
    return {w[Spoke(v)] for v in vs}, {w[Spoke(v, True)] for v in vs}, len(vs)


def frieze_to_json(n: int, w: Mapping, descriptor: FriezeDescriptor | None = None) -> dict:
    descriptor = descriptor or descriptor_from_weights(n, w)
    return {
        "rank": n,
        "descriptor": descriptor.to_json(),
        "weights": [{"arc": str(a), "w": w[a]} for a in sorted(w, key=arc_key)],
    }


def frieze_from_json(data: dict) -> tuple[int, dict]:
    return int(data["rank"]), {parse_arc(r["arc"]): int(r["w"]) for r in data["weights"]}
