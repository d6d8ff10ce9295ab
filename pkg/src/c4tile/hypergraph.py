"""3-uniform hypergraphs: canonical storage, degrees, link graphs and C-detection.

The tiled 3-graph ``C`` has four vertices and two edges.  Any two distinct
triples inside a 4-set share exactly two vertices, so a 4-set spans a copy of
``C`` precisely when it induces at least two edges.  Everything here leans on
that observation.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass
from math import comb
from pathlib import Path

Edge = tuple[int, int, int]
Pair = tuple[int, int]
FourSet = tuple[int, int, int, int]


def _pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


class Hypergraph3:
    """An immutable 3-graph on vertices ``0..n-1``.

    Edges are stored as sorted triples.  ``pair_index`` maps every unordered
    pair with positive co-degree to the frozenset of vertices completing it to
    an edge.
    """

    __slots__ = ("n", "edges", "pair_index", "_links")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = (), *, allow_duplicates: bool = True):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        canon: set[Edge] = set()
        for raw in edges:
            e = tuple(sorted(int(v) for v in raw))
            if len(e) != 3 or len(set(e)) != 3:
                raise ValueError(f"edge {tuple(raw)!r} is not a set of 3 distinct vertices")
            if e[0] < 0 or e[2] >= n:
                raise ValueError(f"edge {e} has a vertex outside 0..{n - 1}")
            if e in canon and not allow_duplicates:
                raise ValueError(f"duplicate edge {e}")
            canon.add(e)  # type: ignore[arg-type]
        self.n = n
        self.edges: frozenset[Edge] = frozenset(canon)
        self.pair_index: dict[Pair, frozenset[int]] = _build_pair_index(self.edges)
        self._links: dict[int, frozenset[Pair]] = {}

    # -- basic queries -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self.n}, |E|={len(self.edges)})"

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, a: int, b: int, c: int) -> bool:
        return tuple(sorted((a, b, c))) in self.edges

    def codegree(self, a: int, b: int) -> int:
        return len(self.pair_index.get(_pair(a, b), ()))

    def neighbours(self, a: int, b: int) -> frozenset[int]:
        """Vertices ``w`` with ``abw`` an edge."""
        return self.pair_index.get(_pair(a, b), frozenset())

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.link_pairs(v))

    def link_pairs(self, v: int) -> frozenset[Pair]:
        """Edge set of the link graph of ``v`` (cached)."""
        cached = self._links.get(v)
        if cached is None:
            self._check_vertex(v)
            pairs = set()
            for e in self.edges:
                if v in e:
                    a, b = (u for u in e if u != v)
                    pairs.add((a, b))
            cached = frozenset(pairs)
            self._links[v] = cached
        return cached

    def induced_edges(self, vertices: Iterable[int]) -> list[Edge]:
        vs = sorted(set(vertices))
        return [e for e in itertools.combinations(vs, 3) if e in self.edges]

    def induced(self, vertices: Iterable[int]) -> Hypergraph3:
        """Sub-hypergraph on ``vertices``, keeping the original vertex ids."""
        vs = set(vertices)
        return Hypergraph3(self.n, (e for e in self.edges if vs.issuperset(e)))

    def with_edges(self, extra: Iterable[Iterable[int]]) -> Hypergraph3:
        return Hypergraph3(self.n, itertools.chain(self.edges, extra))

    def check_pair_index(self) -> None:
        """Rebuild the pair index from scratch and compare (debug aid)."""
        rebuilt = _build_pair_index(self.edges)
        if rebuilt != self.pair_index:
            raise AssertionError("pair_index is out of sync with edges")

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} outside 0..{self.n - 1}")

    # -- constructors --------------------------------------------------

    @classmethod
    def complete(cls, n: int, vertices: Iterable[int] | None = None) -> Hypergraph3:
        vs = range(n) if vertices is None else sorted(vertices)
        return cls(n, itertools.combinations(vs, 3))

    @classmethod
    def empty(cls, n: int) -> Hypergraph3:
        return cls(n)


def _build_pair_index(edges: Iterable[Edge]) -> dict[Pair, frozenset[int]]:
    index: dict[Pair, set[int]] = {}
    for a, b, c in edges:
        index.setdefault((a, b), set()).add(c)
        index.setdefault((a, c), set()).add(b)
        index.setdefault((b, c), set()).add(a)
    return {p: frozenset(ws) for p, ws in index.items()}


@dataclass(frozen=True)
class LinkGraph:
    """Link graph of ``center``: pairs ``ab`` such that ``{center, a, b}`` is an edge."""

    center: int
    pairs: frozenset[Pair]
    n: int

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for a, b in self.pairs:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(self.n) if v != self.center}
        for a, b in self.pairs:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def __len__(self) -> int:
        return len(self.pairs)


# -- operations -------------------------------------------------------


def deg_set(H: Hypergraph3, S: Iterable[int]) -> int:
    """Number of edges containing the 1- or 2-set ``S``."""
    s = sorted(set(S))
    if len(s) not in (1, 2):
        raise ValueError(f"degree is defined for 1- or 2-sets, got {s}")
    for v in s:
        H._check_vertex(v)
    if len(s) == 1:
        return H.degree(s[0])
    return H.codegree(s[0], s[1])


def min_degree1(H: Hypergraph3) -> int:
    if H.n < 1:
        raise ValueError("minimum degree of an empty vertex set is undefined")
    return min(H.degree(v) for v in H.vertices)


def link_graph(H: Hypergraph3, v: int) -> LinkGraph:
    return LinkGraph(v, H.link_pairs(v), H.n)


def _fourset(Q: Iterable[int], n: int) -> FourSet:
    q = tuple(sorted(set(Q)))
    if len(q) != 4:
        raise ValueError(f"expected 4 distinct vertices, got {tuple(Q)!r}")
    if q[0] < 0 or q[3] >= n:
        raise ValueError(f"4-set {q} has a vertex outside 0..{n - 1}")
    return q  # type: ignore[return-value]


def count_induced(H: Hypergraph3, Q: Iterable[int]) -> int:
    return len(H.induced_edges(Q))


def spans_C(H: Hypergraph3, Q: Iterable[int]) -> bool:
    """True iff the 4-set ``Q`` induces at least two edges."""
    q = _fourset(Q, H.n)
    hits = 0
    for e in itertools.combinations(q, 3):
        if e in H.edges:
            hits += 1
            if hits == 2:
                return True
    return False


def count_C_copies(H: Hypergraph3, Q: Iterable[int]) -> int:
    """Number of copies of C on ``Q``: pairs of induced edges."""
    return comb(count_induced(H, _fourset(Q, H.n)), 2)


def witness_edges(H: Hypergraph3, Q: Iterable[int]) -> tuple[Edge, Edge] | None:
    """Lexicographically first two induced edges of ``Q``, or None."""
    found = H.induced_edges(_fourset(Q, H.n))
    if len(found) < 2:
        return None
    return found[0], found[1]


def count_cherries(L: LinkGraph, center_set: Iterable[int], end_set: Iterable[int]) -> int:
    """Paths of length two in ``L`` whose middle lies in ``center_set`` and ends in ``end_set``."""
    ends = set(end_set)
    adj = L.adjacency()
    total = 0
    for m in set(center_set):
        if m == L.center:
            continue
        total += comb(len(adj.get(m, set()) & ends), 2)
    return total


def is_C_free(H: Hypergraph3, S: Iterable[int] | None = None) -> bool:
    """True iff no 4-subset of ``S`` spans C (every pair has co-degree <= 1 inside S)."""
    s = set(H.vertices) if S is None else set(S)
    for (a, b), ws in H.pair_index.items():
        if a in s and b in s and len(ws & s) > 1:
            return False
    return True


# -- h3 text format ---------------------------------------------------


def dumps_h3(H: Hypergraph3) -> str:
    lines = [f"n {H.n}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in H.sorted_edges())
    return "\n".join(lines) + "\n"


def loads_h3(text: str) -> Hypergraph3:
    n: int | None = None
    edges: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <int>'")
            n = int(parts[1])
            continue
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected three vertex ids")
        edges.append(tuple(int(p) for p in parts))
    if n is None:
        raise ValueError("missing 'n <int>' header")
    return Hypergraph3(n, edges, allow_duplicates=False)


def read_h3(path: str | Path) -> Hypergraph3:
    return loads_h3(Path(path).read_text())


def write_h3(H: Hypergraph3, path: str | Path) -> None:
    Path(path).write_text(dumps_h3(H))
