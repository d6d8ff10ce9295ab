"""Exact finite versions of absorption and reachability.

The absorbing family built here is a deterministic greedy stand-in for the
random selection used in the existence argument; its output is labelled as
such.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .hypergraph import Hypergraph3, spans_C
from .solver import SAT, Tiling, enumerate_spanning_foursets, find_perfect_tiling

REACH_GUARD = 2  # orders >= this need allow_expensive=True


def _has_factor(H: Hypergraph3, vertices: Iterable[int]) -> bool:
    return find_perfect_tiling(H, vertices).verdict == SAT


def absorption_witness(H: Hypergraph3, A_set: Iterable[int], B_set: Iterable[int]) -> tuple[Tiling, Tiling] | None:
    """C-factors of H[A] and H[A + B] when A absorbs B, else None."""
    A, B = set(A_set), set(B_set)
    if A & B:
        return None
    if len(A) % 4 or len(A | B) % 4:
        raise ValueError(f"|A| = {len(A)} and |A + B| = {len(A | B)} must both be multiples of 4")
    inner = find_perfect_tiling(H, A)
    if inner.verdict != SAT:
        return None
    outer = find_perfect_tiling(H, A | B)
    if outer.verdict != SAT:
        return None
    return inner.tiling, outer.tiling  # type: ignore[return-value]


def absorbs(H: Hypergraph3, A_set: Iterable[int], B_set: Iterable[int]) -> bool:
    return absorption_witness(H, A_set, B_set) is not None


@dataclass
class ReachReport:
    u: int
    v: int
    i: int
    count: int
    total: int
    alpha_achieved: Fraction

    def to_json(self) -> dict:
        return {"schema": 1, "u": self.u, "v": self.v, "i": self.i, "count": self.count,
                "total": self.total, "alpha_achieved": str(self.alpha_achieved),
                "alpha_float": float(self.alpha_achieved)}


def _factor_8(H: Hypergraph3, vs: tuple[int, ...]) -> bool:
    # an 8-set has a C-factor iff the 4-set through its smallest vertex and its complement both span
    first, rest = vs[0], vs[1:]
    for trio in itertools.combinations(rest, 3):
        q = (first, *trio)
        if spans_C(H, q) and spans_C(H, [v for v in rest if v not in trio]):
            return True
    return False


def _has_factor_small(H: Hypergraph3, vs: tuple[int, ...]) -> bool:
    if len(vs) == 4:
        return spans_C(H, vs)
    if len(vs) == 8:
        return _factor_8(H, vs)
    return _has_factor(H, vs)


def reach_count(H: Hypergraph3, u: int, v: int, i: int = 1, *, allow_expensive: bool = False) -> ReachReport:
    """Count (4i-1)-sets W such that both {u} + W and {v} + W have C-factors."""
    if u == v:
        raise ValueError("reachability needs two distinct vertices")
    for x in (u, v):
        if not 0 <= x < H.n:
            raise ValueError(f"vertex {x} outside 0..{H.n - 1}")
    if i < 1:
        raise ValueError(f"reachability order must be positive, got {i}")
    if i >= REACH_GUARD and not allow_expensive:
        raise PermissionError(f"order {i} enumerates C({H.n - 2}, {4 * i - 1}) sets; "
                              "pass allow_expensive=True to proceed")
    size = 4 * i - 1
    others = [x for x in H.vertices if x not in (u, v)]
    count = 0
    for W in itertools.combinations(others, size):
        if _has_factor_small(H, tuple(sorted((u, *W)))) and _has_factor_small(H, tuple(sorted((v, *W)))):
            count += 1
    return ReachReport(u, v, i, count, comb(len(others), size), Fraction(count, H.n ** size))


@dataclass
class AbsorbingFamily:
    members: list[list[int]]
    set_size: int
    coverage: dict[tuple[int, ...], int] = field(default_factory=dict)
    method: str = "greedy (deterministic stand-in for random selection)"

    def uncovered(self) -> list[tuple[int, ...]]:
        return [s for s, c in self.coverage.items() if c == 0]


def _first_disjoint_block(rows: list[tuple[int, ...]], used: set[int], must: int | None = None):
    for q in rows:
        if used.isdisjoint(q) and (must is None or must in q):
            return q
    return None


def _anatomy_member(H: Hypergraph3, rows: list[tuple[int, ...]], used: set[int]) -> list[int] | None:
    """A 24-set {u2, u3, u4} + C2 + C3 + C4 with each {u_i} + C_i tiled by two copies of C.

    (u2, u3, u4) is the first free triple forming a path of length two in the
    link of some other free vertex, so the set can host an absorbed 4-set.
    """
    free = [x for x in H.vertices if x not in used]
    for u2, u3, u4 in itertools.permutations(free, 3):
        if u2 > u4:
            continue
        hosts = H.neighbours(u2, u3) & H.neighbours(u3, u4)
        if not any(h not in used and h not in (u2, u3, u4) for h in hosts):
            continue
        taken = used | {u2, u3, u4}
        blocks: list[int] = []
        for u in (u2, u3, u4):
            first = _first_disjoint_block(rows, taken - {u}, must=u)
            if first is None:
                break
            taken |= set(first)
            second = _first_disjoint_block(rows, taken)
            if second is None:
                break
            taken |= set(second)
            blocks.extend(first)
            blocks.extend(second)
        else:
            return sorted(set(blocks))
    return None


def _plain_member(rows: list[tuple[int, ...]], used: set[int], size: int) -> list[int] | None:
    taken = set(used)
    member: list[int] = []
    while len(member) < size:
        q = _first_disjoint_block(rows, taken)
        if q is None:
            return None
        taken |= set(q)
        member.extend(q)
    return sorted(member)


def greedy_absorbing_family(H: Hypergraph3, set_size: int = 24, target_size: int = 1,
                            *, coverage: bool = True) -> AbsorbingFamily:
    """Pairwise-disjoint vertex sets with C-factors, built greedily.

    ``set_size == 24`` follows the absorber anatomy; other multiples of 4 are
    plain unions of disjoint spanning 4-sets.  ``coverage`` maps each 4-set
    outside the family to the number of members absorbing it.
    """
    if set_size % 4 or set_size <= 0:
        raise ValueError(f"set_size must be a positive multiple of 4, got {set_size}")
    if H.n < set_size + 4:
        raise ValueError(f"need n >= set_size + 4 = {set_size + 4}, got n = {H.n}")
    rows = enumerate_spanning_foursets(H)
    used: set[int] = set()
    members: list[list[int]] = []
    while len(members) < target_size:
        member = _anatomy_member(H, rows, used) if set_size == 24 else _plain_member(rows, used, set_size)
        if member is None:
            break
        assert _has_factor(H, member)
        members.append(member)
        used |= set(member)
    family = AbsorbingFamily(members, set_size)
    if coverage and members:
        outside = [x for x in H.vertices if x not in used]
        cache: dict[tuple[int, ...], bool] = {}
        for S in itertools.combinations(outside, 4):
            if spans_C(H, S):
                # a member's own factor plus S itself
                family.coverage[S] = len(members)
                continue
            hits = 0
            for m in members:
                key = tuple(sorted((*m, *S)))
                if key not in cache:
                    cache[key] = _has_factor(H, key)
                hits += cache[key]
            family.coverage[S] = hits
    return family
