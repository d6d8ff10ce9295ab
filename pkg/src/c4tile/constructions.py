"""Steiner triple systems, the degree threshold, and the tightness constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .hypergraph import Edge, Hypergraph3, min_degree1


@dataclass(frozen=True)
class SteinerSystem:
    """An S(2,3,m): every pair of ``0..m-1`` lies in exactly one triple."""

    m: int
    triples: frozenset[Edge]

    def pair_coverage(self) -> dict[tuple[int, int], int]:
        cover = {p: 0 for p in itertools.combinations(range(self.m), 2)}
        for a, b, c in self.triples:
            for p in ((a, b), (a, c), (b, c)):
                cover[p] += 1
        return cover

    def is_valid(self) -> bool:
        if len(self.triples) != self.m * (self.m - 1) // 6:
            return False
        if any(len(set(t)) != 3 or max(t) >= self.m or min(t) < 0 for t in self.triples):
            return False
        return all(c == 1 for c in self.pair_coverage().values())

    def as_hypergraph(self) -> Hypergraph3:
        return Hypergraph3(self.m, self.triples)


@dataclass(frozen=True)
class ThresholdValue:
    n: int
    value: int
    parity_case: str  # "8N" or "4N\\8N"


@dataclass
class LabeledConstruction:
    hypergraph: Hypergraph3
    part_A: list[int]
    part_B: list[int]
    kind: str
    notes: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.hypergraph.n

    def sidecar(self) -> dict:
        n = self.n
        return {
            "schema": 1,
            "kind": self.kind,
            "n": n,
            "part_A": list(self.part_A),
            "part_B": list(self.part_B),
            "min_degree1": min_degree1(self.hypergraph) if n else None,
            "threshold": threshold(n).value if n >= 4 and n % 4 == 0 else None,
        }


def threshold(n: int) -> ThresholdValue:
    """Minimum vertex degree forcing a perfect C-tiling on ``n`` vertices.

    Evaluated as twice the value so that the half-integers ``3n/8`` and
    ``c(n) = -1/2`` never leave the integers.
    """
    if n < 4 or n % 4:
        raise ValueError(f"threshold requires n a positive multiple of 4, got {n}")
    twice_c = 2 if n % 8 == 0 else -1
    twice = 2 * comb(n - 1, 2) - 2 * comb(3 * n // 4, 2) + (3 * n) // 4 + twice_c
    assert twice % 2 == 0
    return ThresholdValue(n, twice // 2, "8N" if n % 8 == 0 else "4N\\8N")


# -- Steiner triple systems -------------------------------------------


def _bose(m: int) -> set[Edge]:
    # m = 6k+3 on Z_{2k+1} x Z_3, idempotent commutative quasigroup x.y = (x+y)/2
    order = m // 3
    half = (order + 1) // 2
    label = lambda x, i: x + order * i  # noqa: E731
    out: set[Edge] = set()
    for x in range(order):
        out.add((label(x, 0), label(x, 1), label(x, 2)))
    for x, y in itertools.combinations(range(order), 2):
        xy = ((x + y) * half) % order
        for i in range(3):
            out.add(tuple(sorted((label(x, i), label(y, i), label(xy, (i + 1) % 3)))))
    return out


def _skolem(m: int) -> set[Edge]:
    # m = 6k+1 on (Z_{2k} x Z_3) + {inf}, half-idempotent commutative quasigroup
    order = (m - 1) // 3
    k = order // 2
    inf = m - 1
    label = lambda x, i: x + order * i  # noqa: E731

    def op(x: int, y: int) -> int:
        s = (x + y) % order
        return s // 2 if s % 2 == 0 else k + s // 2

    out: set[Edge] = set()
    for x in range(k):
        out.add((label(x, 0), label(x, 1), label(x, 2)))
        for i in range(3):
            out.add(tuple(sorted((inf, label(x + k, i), label(x, (i + 1) % 3)))))
    for x, y in itertools.combinations(range(order), 2):
        xy = op(x, y)
        for i in range(3):
            out.add(tuple(sorted((label(x, i), label(y, i), label(xy, (i + 1) % 3)))))
    return out


def steiner(m: int) -> SteinerSystem:
    """Bose (m = 3 mod 6) or Skolem (m = 1 mod 6) Steiner triple system."""
    if m < 3 or m % 6 not in (1, 3):
        raise ValueError(f"an S(2,3,m) exists only for m = 1, 3 mod 6 (m >= 3), got {m}")
    triples = _bose(m) if m % 6 == 3 else _skolem(m)
    return SteinerSystem(m, frozenset(triples))


# -- extremal constructions -------------------------------------------


def _all_triples_meeting(n: int, A: set[int]) -> list[Edge]:
    return [e for e in itertools.combinations(range(n), 3) if A.intersection(e)]


def build_H0(n: int) -> LabeledConstruction:
    """Every triple meeting A (|A| = n/4 - 1) plus an S(2,3,3n/4+1) on B."""
    if n < 8 or n % 8:
        raise ValueError(f"H0 needs n a positive multiple of 8, got {n}")
    a = n // 4 - 1
    A, B = list(range(a)), list(range(a, n))
    system = steiner(len(B))
    edges = _all_triples_meeting(n, set(A))
    edges += [tuple(B[v] for v in t) for t in system.triples]
    return LabeledConstruction(Hypergraph3(n, edges), A, B, "H0")


def build_H1(n: int) -> LabeledConstruction:
    """Every triple meeting A plus an S(2,3,3n/4+4) with one triple's vertices deleted, on B.

    The deleted triple is the lexicographically first one of the generated system.
    """
    if n < 12 or n % 4 or n % 8 == 0:
        raise ValueError(f"H1 needs n = 4 mod 8 with n >= 12, got {n}")
    a = n // 4 - 1
    A, B = list(range(a)), list(range(a, n))
    system = steiner(3 * n // 4 + 4)
    removed = min(system.triples)
    keep = [v for v in range(system.m) if v not in removed]
    relabel = {v: B[i] for i, v in enumerate(keep)}
    edges = _all_triples_meeting(n, set(A))
    edges += [tuple(relabel[v] for v in t) for t in system.triples if not set(t) & set(removed)]
    return LabeledConstruction(Hypergraph3(n, edges), A, B, "H1", {"removed_triple": list(removed)})


def two_cliques(n: int) -> LabeledConstruction:
    if n < 8 or n % 2:
        raise ValueError(f"two_cliques needs an even n >= 8, got {n}")
    A, B = list(range(n // 2)), list(range(n // 2, n))
    edges = list(itertools.combinations(A, 3)) + list(itertools.combinations(B, 3))
    return LabeledConstruction(Hypergraph3(n, edges), A, B, "TwoCliques")


def extremal_construction(n: int) -> LabeledConstruction:
    """H0 for n divisible by 8, H1 otherwise."""
    return build_H0(n) if n % 8 == 0 else build_H1(n)
