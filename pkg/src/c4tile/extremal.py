"""Perfect C-tilings of near-extremal 3-graphs.

Given a large C-free set C, the vertices outside C split into A (seeing
almost every pair of C) and the rest B.  Four disjoint tilings are then
built in order:

* Q: a maximum tiling of H[B + C];
* R: one tile per uncovered B-vertex, from a cherry centred in A with ends in C;
* S: s tiles with two A-vertices and two C-vertices, to rebalance |C| = 3|A|;
* T: the X + Z tiling of :mod:`c4tile.lemma3` on what remains.

Every stage is greedy and deterministic; a stage that cannot proceed raises a
:class:`~c4tile.errors.PipelineError` carrying the partial trace.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Iterable
from dataclasses import dataclass, field
from math import comb

from .errors import (
    ExtremalityFailed,
    GreedyStuck,
    NegativeS,
    PipelineError,
    PreconditionFailed,
    VerificationFailed,
)
from .hypergraph import Hypergraph3, is_C_free
from .lemma3 import Claim, Lemma3Instance, solve_lemma3
from .solver import Tiling, max_C_free_set, max_tiling, verify_tiling

DEFAULT_ALPHA = 0.25
DEFAULT_RHO = 0.25
DEFAULT_EPSILON = 0.25
MAX_EXACT_C_FREE_N = 16


@dataclass
class AbcPartition:
    C_set: list[int]
    A_set: list[int]
    B_set: list[int]
    alpha: float
    epsilon: float
    claims: list[Claim] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"A": self.A_set, "B": self.B_set, "C": self.C_set, "alpha": self.alpha,
                "epsilon": self.epsilon, "claims": [c.to_json() for c in self.claims]}


@dataclass
class PipelineTrace:
    n: int
    partition: AbcPartition | None = None
    Q: Tiling = field(default_factory=Tiling)
    R: Tiling = field(default_factory=Tiling)
    S: Tiling = field(default_factory=Tiling)
    T: Tiling = field(default_factory=Tiling)
    q: int = 0
    B1: list[int] = field(default_factory=list)
    C1: list[int] = field(default_factory=list)
    A2: list[int] = field(default_factory=list)
    C2: list[int] = field(default_factory=list)
    A3: list[int] = field(default_factory=list)
    C3: list[int] = field(default_factory=list)
    s: int | None = None
    claims: list[Claim] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    stages_done: list[str] = field(default_factory=list)
    lemma3: Lemma3Instance | None = None
    error: str | None = None

    def claim(self, name: str, holds: bool, lhs: float, rhs: float) -> None:
        self.claims.append(Claim(name, bool(holds), lhs, rhs))

    def tiling(self) -> Tiling:
        return self.Q + self.R + self.S + self.T

    def to_json(self) -> dict:
        tiles = {k: getattr(self, k).to_json() for k in "QRST"}
        return {
            "schema": 1,
            "n": self.n,
            "partition": self.partition.to_json() if self.partition else None,
            "tilings": tiles,
            "q": self.q,
            "s": self.s,
            "B1": self.B1, "C1": self.C1, "A2": self.A2, "C2": self.C2,
            "A3": self.A3, "C3": self.C3,
            "claims": [c.to_json() for c in self.claims],
            "timings_ms": {k: round(v * 1000.0, 3) for k, v in self.timings.items()},
            "stages_done": self.stages_done,
            "lemma3": self.lemma3.to_json() if self.lemma3 else None,
            "error": self.error,
        }


def _deg_into(H: Hypergraph3, x: int, S: set[int]) -> int:
    return sum(1 for a, b in H.link_pairs(x) if a in S and b in S)


def partition_ABC(H: Hypergraph3, C_set: Iterable[int], alpha: float = DEFAULT_ALPHA,
                  epsilon: float = DEFAULT_EPSILON) -> AbcPartition:
    C = sorted(set(C_set))
    Cs = set(C)
    if not is_C_free(H, Cs):
        raise PreconditionFailed("partition", "the given C set spans a copy of C")
    full = comb(len(C), 2)
    A, B = [], []
    for x in H.vertices:
        if x in Cs:
            continue
        (A if _deg_into(H, x, Cs) >= (1 - alpha) * full else B).append(x)
    n = H.n
    part = AbcPartition(C, A, B, alpha, epsilon)
    part.claims = [
        Claim("|A| > n/4 (1 - 4 alpha^2)", len(A) > n / 4 * (1 - 4 * alpha ** 2),
              len(A), n / 4 * (1 - 4 * alpha ** 2)),
        Claim("|B| < alpha^2 n", len(B) < alpha ** 2 * n, len(B), alpha ** 2 * n),
        Claim("|C| >= (1 - eps) 3n/4", len(C) >= (1 - epsilon) * 3 * n / 4,
              len(C), (1 - epsilon) * 3 * n / 4),
        Claim("|C| <= 3n/4", 4 * len(C) <= 3 * n, len(C), 3 * n / 4),
    ]
    return part


def build_Q(H: Hypergraph3, part: AbcPartition, trace: PipelineTrace | None = None) -> Tiling:
    cert = max_tiling(H, set(part.B_set) | set(part.C_set))
    Q = cert.tiling or Tiling()
    if trace is not None:
        b = len(part.B_set)
        trace.Q, trace.q = Q, len(Q)
        if b:
            trace.claim("|B|/4 <= q", b <= 4 * len(Q), len(Q), b / 4)
            trace.claim("q <= |B|", len(Q) <= b, len(Q), b)
        trace.claim("q + |A| >= n/4", 4 * (len(Q) + len(part.A_set)) >= H.n,
                    len(Q) + len(part.A_set), H.n / 4)
        covered = Q.vertices()
        trace.B1 = [v for v in part.B_set if v not in covered]
        trace.C1 = [v for v in part.C_set if v not in covered]
    return Q


def build_R(H: Hypergraph3, trace: PipelineTrace) -> Tiling:
    """Cover each leftover B-vertex v by {v, a, c, c'} with va c and va c' edges, a in A."""
    assert trace.partition is not None
    free_A = list(trace.partition.A_set)
    free_C = list(trace.C1)
    elements = []
    for v in trace.B1:
        pick = None
        for a in free_A:
            ends = sorted(H.neighbours(v, a).intersection(free_C))
            if len(ends) >= 2:
                pick = (a, ends[0], ends[1])
                break
        if pick is None:
            raise GreedyStuck("R", v, f"no free cherry centred in A with ends in C1 for vertex {v}", trace)
        a, c1, c2 = pick
        free_A.remove(a)
        free_C.remove(c1)
        free_C.remove(c2)
        elements.append((v, a, c1, c2))
    R = Tiling.from_elements(H, elements)
    trace.R = R
    trace.A2 = free_A
    trace.C2 = free_C
    return R


def build_S(H: Hypergraph3, trace: PipelineTrace) -> Tiling:
    """s tiles {a1, a2, c1, c2} where c1c2 is a common link pair of a1 and a2."""
    part = trace.partition
    assert part is not None
    s = trace.q + len(part.A_set) - H.n // 4
    trace.s = s
    if s < 0:
        raise NegativeS("S", f"s = q + |A| - n/4 = {s} is negative", trace)
    free_A = list(trace.A2)
    free_C = list(trace.C2)
    elements = []
    for _ in range(s):
        pick = None
        for a1, a2 in itertools.combinations(free_A, 2):
            for c1, c2 in itertools.combinations(free_C, 2):
                common = H.neighbours(c1, c2)
                if a1 in common and a2 in common:
                    pick = (a1, a2, c1, c2)
                    break
            if pick:
                break
        if pick is None:
            raise GreedyStuck("S", None, f"no pair in A2 with a free common link pair in C2 "
                                         f"after {len(elements)} of {s} tiles", trace)
        for v in pick[:2]:
            free_A.remove(v)
        for v in pick[2:]:
            free_C.remove(v)
        elements.append(pick)
    S = Tiling.from_elements(H, elements)
    trace.S = S
    trace.A3 = free_A
    trace.C3 = free_C
    return S


def _composition(T: Tiling, *parts: Iterable[int]) -> list[tuple[int, ...]]:
    sets = [set(p) for p in parts]
    return [tuple(len(set(q) & s) for s in sets) for q in T.elements]


def _record_identities(H: Hypergraph3, trace: PipelineTrace) -> None:
    part = trace.partition
    assert part is not None
    A, B, C, q = part.A_set, part.B_set, part.C_set, trace.q
    trace.claim("|A2| = |A| - |B1|", len(trace.A2) == len(A) - len(trace.B1),
                len(trace.A2), len(A) - len(trace.B1))
    trace.claim("|C2| = |B| + |C| - 4q - 3|B1|",
                len(trace.C2) == len(B) + len(C) - 4 * q - 3 * len(trace.B1),
                len(trace.C2), len(B) + len(C) - 4 * q - 3 * len(trace.B1))
    if trace.s is not None:
        trace.claim("4s = 3|A2| - |C2|", 4 * trace.s == 3 * len(trace.A2) - len(trace.C2),
                    4 * trace.s, 3 * len(trace.A2) - len(trace.C2))
        trace.claim("s = q + |A| - n/4", 4 * trace.s == 4 * q + 4 * len(A) - H.n,
                    trace.s, q + len(A) - H.n / 4)


def extremal_tiling(H: Hypergraph3, epsilon: float = DEFAULT_EPSILON, alpha: float = DEFAULT_ALPHA,
                    rho: float = DEFAULT_RHO, C_hint: Iterable[int] | None = None,
                    *, selection: str = "greedy", seed: int = 0) -> tuple[Tiling, PipelineTrace]:
    """Run Q, R, S, T and return a verified perfect tiling with its trace."""
    n = H.n
    trace = PipelineTrace(n)
    clock = time.perf_counter

    def stage(name: str, t0: float) -> None:
        trace.timings[name] = clock() - t0
        trace.stages_done.append(name)

    try:
        if n % 4:
            raise PreconditionFailed("input", f"n = {n} is not a multiple of 4", trace)
        t0 = clock()
        if C_hint is None:
            if n > MAX_EXACT_C_FREE_N:
                raise PreconditionFailed("C", f"n = {n} > {MAX_EXACT_C_FREE_N}: a C hint is required",
                                         trace)
            C = max_C_free_set(H)
        else:
            C = sorted(set(C_hint))
            if any(not 0 <= v < n for v in C):
                raise PreconditionFailed("C", "C hint has vertices outside the hypergraph", trace)
            if not is_C_free(H, C):
                raise PreconditionFailed("C", "C hint spans a copy of C", trace)
        if len(C) < (1 - epsilon) * 3 * n / 4:
            raise ExtremalityFailed("C", f"|C| = {len(C)} < (1 - eps) 3n/4 = {(1 - epsilon) * 3 * n / 4}",
                                    trace)
        stage("C", t0)

        t0 = clock()
        trace.partition = partition_ABC(H, C, alpha, epsilon)
        trace.claims.extend(trace.partition.claims)
        stage("partition", t0)

        t0 = clock()
        build_Q(H, trace.partition, trace)
        stage("Q", t0)

        t0 = clock()
        build_R(H, trace)
        for comp in _composition(trace.R, trace.partition.A_set, trace.B1, trace.C1):
            trace.claim("R element meets (A, B1, C1) in (1, 1, 2)", comp == (1, 1, 2), 0, 0)
        stage("R", t0)

        t0 = clock()
        try:
            build_S(H, trace)
        finally:
            _record_identities(H, trace)
        for comp in _composition(trace.S, trace.A2, trace.C2):
            trace.claim("S element meets (A2, C2) in (2, 2)", comp == (2, 2), 0, 0)
        trace.claim("|C3| = 3|A3|", len(trace.C3) == 3 * len(trace.A3), len(trace.C3), 3 * len(trace.A3))
        stage("S", t0)

        t0 = clock()
        try:
            trace.lemma3 = solve_lemma3(H, trace.A3, trace.C3, rho, selection=selection, seed=seed)
        except PipelineError as exc:
            trace.lemma3 = exc.trace
            exc.trace = trace
            raise
        assert trace.lemma3.tiling is not None
        trace.T = trace.lemma3.tiling
        for comp in _composition(trace.T, trace.A3, trace.C3):
            trace.claim("T element meets (A3, C3) in (1, 3)", comp == (1, 3), 0, 0)
        stage("T", t0)

        result = trace.tiling()
        if not verify_tiling(H, result, require_perfect=True):
            raise VerificationFailed("verify", "union of Q, R, S, T is not a perfect tiling", trace)
        return result, trace
    except PipelineError as exc:
        exc.trace = trace
        trace.error = f"{exc.code}: {exc}"
        raise
