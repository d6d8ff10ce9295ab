"""Exact search for C-tilings: perfect tilings, maximum tilings, maximum C-free sets.

Perfect tilings are an exact cover problem (universe = vertices, rows =
spanning 4-sets).  Both searches share one pruning rule on top of the
counting bound: if some vertex set T meets every still-available spanning
4-set, then disjoint tiles each use a distinct vertex of T, so at most |T|
more tiles fit.  A greedy T is cheap and often decisive on the extremal
constructions, where the small part A meets every spanning 4-set.
"""

from __future__ import annotations

import itertools
import json
import time
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

from .hypergraph import Edge, FourSet, Hypergraph3, witness_edges

SAT = "SAT"
UNSAT = "UNSAT"
BOUND = "BOUND"


@dataclass
class Tiling:
    """Vertex-disjoint spanning 4-sets, each with two witness edges."""

    elements: list[FourSet] = field(default_factory=list)
    witness: list[tuple[Edge, Edge]] = field(default_factory=list)

    @classmethod
    def from_elements(cls, H: Hypergraph3, elements: Iterable[Iterable[int]]) -> Tiling:
        els, wit = [], []
        for q in elements:
            q = tuple(sorted(q))
            w = witness_edges(H, q)
            if w is None:
                raise ValueError(f"4-set {q} does not span a copy of C")
            els.append(q)
            wit.append(w)
        return cls(els, wit)

    def __len__(self) -> int:
        return len(self.elements)

    def vertices(self) -> set[int]:
        return {v for q in self.elements for v in q}

    def __add__(self, other: Tiling) -> Tiling:
        return Tiling(self.elements + other.elements, self.witness + other.witness)

    def to_json(self) -> dict:
        return {
            "elements": [list(q) for q in self.elements],
            "witnesses": [[list(a), list(b)] for a, b in self.witness],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Tiling:
        elements = [tuple(q) for q in obj.get("elements", [])]
        witness = [(tuple(a), tuple(b)) for a, b in obj.get("witnesses", [])]
        return cls(elements, witness)  # type: ignore[arg-type]


@dataclass
class Certificate:
    verdict: str
    k: int
    tiling: Tiling | None
    nodes_explored: int
    elapsed: float
    n: int = 0

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "verdict": self.verdict,
            "k": self.k,
            "n": self.n,
            "elements": [],
            "witnesses": [],
            "nodes": self.nodes_explored,
            "millis": round(self.elapsed * 1000.0, 3),
        }
        if self.tiling is not None:
            out.update(self.tiling.to_json())
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Certificate:
        tiling = Tiling.from_json(obj) if obj.get("elements") else None
        if tiling is None and obj["verdict"] != UNSAT:
            tiling = Tiling()
        return cls(obj["verdict"], int(obj["k"]), tiling, int(obj["nodes"]),
                   float(obj["millis"]) / 1000.0, int(obj.get("n", 0)))

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> Certificate:
        return cls.from_json(json.loads(Path(path).read_text()))


# -- spanning 4-sets ---------------------------------------------------


def enumerate_spanning_foursets(H: Hypergraph3, vertices: Iterable[int] | None = None) -> list[FourSet]:
    """All 4-sets inducing at least two edges, in lexicographic order.

    Generated from pairs of edges sharing two vertices, so the cost tracks
    the density of H rather than C(n, 4).
    """
    allowed = set(H.vertices) if vertices is None else set(vertices)
    found: set[FourSet] = set()
    for (a, b), ws in H.pair_index.items():
        if a not in allowed or b not in allowed:
            continue
        ws_in = sorted(w for w in ws if w in allowed)
        for w1, w2 in itertools.combinations(ws_in, 2):
            found.add(tuple(sorted((a, b, w1, w2))))  # type: ignore[arg-type]
    return sorted(found)


def _greedy_hitting_set(rows: Iterable[FourSet]) -> int:
    """Size of a greedily built vertex set meeting every row."""
    remaining = list(rows)
    size = 0
    while remaining:
        counts: dict[int, int] = {}
        for q in remaining:
            for v in q:
                counts[v] = counts.get(v, 0) + 1
        best = min(counts, key=lambda v: (-counts[v], v))
        remaining = [q for q in remaining if best not in q]
        size += 1
    return size


def _components(vertices: set[int], rows: list[FourSet]) -> list[set[int]]:
    parent = {v: v for v in vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for q in rows:
        r = find(q[0])
        for v in q[1:]:
            s = find(v)
            if s != r:
                parent[s] = r
    comps: dict[int, set[int]] = {}
    for v in vertices:
        comps.setdefault(find(v), set()).add(v)
    return sorted(comps.values(), key=min)


# -- perfect tiling (exact cover) -------------------------------------


class _ExactCover:
    def __init__(self, universe: set[int], rows: list[FourSet]):
        self.rows = rows
        self.cols: dict[int, set[int]] = {v: set() for v in universe}
        for r, q in enumerate(rows):
            for v in q:
                self.cols[v].add(r)
        self.nodes = 0
        self.solution: list[int] = []

    def _select(self, r: int) -> list[set[int]]:
        removed = []
        for v in self.rows[r]:
            for other in self.cols[v]:
                for u in self.rows[other]:
                    if u != v:
                        self.cols[u].discard(other)
            removed.append(self.cols.pop(v))
        return removed

    def _deselect(self, r: int, removed: list[set[int]]) -> None:
        for v in reversed(self.rows[r]):
            self.cols[v] = removed.pop()
            for other in self.cols[v]:
                for u in self.rows[other]:
                    if u != v:
                        self.cols[u].add(other)

    def _alive_rows(self) -> set[int]:
        alive: set[int] = set()
        for rs in self.cols.values():
            alive |= rs
        return alive

    def search(self) -> bool:
        self.nodes += 1
        if not self.cols:
            return True
        col = min(self.cols, key=lambda v: (len(self.cols[v]), v))
        if not self.cols[col]:
            return False
        need = len(self.cols) // 4
        if _greedy_hitting_set(self.rows[r] for r in self._alive_rows()) < need:
            return False
        for r in sorted(self.cols[col]):
            self.solution.append(r)
            removed = self._select(r)
            if self.search():
                return True
            self._deselect(r, removed)
            self.solution.pop()
        return False


def find_perfect_tiling(H: Hypergraph3, vertices: Iterable[int] | None = None) -> Certificate:
    """Decide whether H (or H induced on ``vertices``) has a perfect C-tiling."""
    start = time.perf_counter()
    universe = set(H.vertices) if vertices is None else set(vertices)
    n = len(universe)
    if n % 4:
        return Certificate(UNSAT, 0, None, 0, time.perf_counter() - start, n)
    if n == 0:
        return Certificate(SAT, 0, Tiling(), 1, time.perf_counter() - start, n)
    rows = enumerate_spanning_foursets(H, universe)
    comps = _components(universe, rows)
    if any(len(c) % 4 for c in comps):
        return Certificate(UNSAT, 0, None, 1, time.perf_counter() - start, n)
    solver = _ExactCover(universe, rows)
    if solver.search():
        tiling = Tiling.from_elements(H, sorted(rows[r] for r in solver.solution))
        return Certificate(SAT, len(tiling), tiling, solver.nodes, time.perf_counter() - start, n)
    return Certificate(UNSAT, 0, None, solver.nodes, time.perf_counter() - start, n)


# -- maximum tiling (branch and bound) --------------------------------


class _MaxTiling:
    def __init__(self, rows: list[FourSet]):
        self.rows = rows
        self.nodes = 0
        self.best: list[FourSet] = []

    def search(self, alive: list[FourSet], chosen: list[FourSet]) -> None:
        self.nodes += 1
        if len(chosen) > len(self.best):
            self.best = list(chosen)
        if not alive:
            return
        active = {v for q in alive for v in q}
        ub = min(len(active) // 4, _greedy_hitting_set(alive))
        if len(chosen) + ub <= len(self.best):
            return
        counts: dict[int, int] = {}
        for q in alive:
            for v in q:
                counts[v] = counts.get(v, 0) + 1
        pivot = min(counts, key=lambda v: (counts[v], v))
        for q in alive:
            if pivot not in q:
                continue
            rest = [r for r in alive if not set(r) & set(q)]
            chosen.append(q)
            self.search(rest, chosen)
            chosen.pop()
        # the pivot stays uncovered
        self.search([r for r in alive if pivot not in r], chosen)


def max_tiling(H: Hypergraph3, vertices: Iterable[int] | None = None) -> Certificate:
    """Largest C-tiling, as BOUND(k) (or SAT when it is perfect)."""
    start = time.perf_counter()
    universe = set(H.vertices) if vertices is None else set(vertices)
    rows = enumerate_spanning_foursets(H, universe)
    nodes = 0
    best: list[FourSet] = []
    for comp in _components(universe, rows):
        comp_rows = [q for q in rows if q[0] in comp]
        if not comp_rows:
            continue
        search = _MaxTiling(comp_rows)
        search.search(comp_rows, [])
        nodes += search.nodes
        best.extend(search.best)
    tiling = Tiling.from_elements(H, sorted(best))
    n = len(universe)
    verdict = SAT if n % 4 == 0 and 4 * len(tiling) == n else BOUND
    return Certificate(verdict, len(tiling), tiling, nodes, time.perf_counter() - start, n)


# -- verification ------------------------------------------------------


def verify_tiling(H: Hypergraph3, T: Tiling, require_perfect: bool = False,
                  vertices: Iterable[int] | None = None) -> bool:
    universe = set(H.vertices) if vertices is None else set(vertices)
    if len(T.witness) != len(T.elements):
        return False
    seen: set[int] = set()
    for q, (e1, e2) in zip(T.elements, T.witness):
        qs = set(q)
        if len(q) != 4 or len(qs) != 4 or not qs <= universe or qs & seen:
            return False
        seen |= qs
        e1, e2 = tuple(sorted(e1)), tuple(sorted(e2))
        if e1 == e2 or e1 not in H.edges or e2 not in H.edges:
            return False
        if not (set(e1) <= qs and set(e2) <= qs) or len(set(e1) & set(e2)) != 2:
            return False
    if require_perfect and seen != universe:
        return False
    return True


def verify_certificate(H: Hypergraph3, cert: Certificate) -> bool:
    """Check the parts of a certificate that are checkable without re-searching."""
    if cert.verdict == UNSAT:
        return cert.tiling is None or len(cert.tiling) == 0
    if cert.tiling is None or len(cert.tiling) != cert.k:
        return False
    return verify_tiling(H, cert.tiling, require_perfect=cert.verdict == SAT)


# -- maximum C-free set ------------------------------------------------


def max_C_free_set(H: Hypergraph3) -> list[int]:
    """Largest vertex set inducing no copy of C; ties go to the lexicographically smallest.

    Include-first depth-first search over vertices in id order, keeping
    within-set co-degrees at most one.  Practical for n up to about 16.
    """
    n = H.n
    links = [sorted(H.link_pairs(v)) for v in range(n)]
    inside = [False] * n
    codeg: dict[tuple[int, int], int] = {}
    best: list[int] = []
    chosen: list[int] = []

    def try_add(v: int) -> list[tuple[int, int]] | None:
        bumped: list[tuple[int, int]] = []
        for a, b in links[v]:
            if inside[a] and inside[b]:
                for p in ((a, b), (min(a, v), max(a, v)), (min(b, v), max(b, v))):
                    c = codeg.get(p, 0) + 1
                    codeg[p] = c
                    bumped.append(p)
                    if c > 1:
                        undo(bumped)
                        return None
        return bumped

    def undo(bumped: list[tuple[int, int]]) -> None:
        for p in bumped:
            codeg[p] -= 1

    def dfs(i: int) -> None:
        nonlocal best
        if len(chosen) + (n - i) <= len(best):
            return
        if i == n:
            best = list(chosen)
            return
        bumped = try_add(i)
        if bumped is not None:
            inside[i] = True
            chosen.append(i)
            dfs(i + 1)
            chosen.pop()
            inside[i] = False
            undo(bumped)
        dfs(i + 1)

    dfs(0)
    return best
