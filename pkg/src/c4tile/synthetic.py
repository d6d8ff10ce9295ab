"""Seeded near-extremal 3-graphs for exercising the pipeline.

An instance on A + B + C has every triple meeting A (optionally thinned),
a C-free triple system inside C, and a few sparse edges touching B.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .constructions import steiner
from .hypergraph import Edge, Hypergraph3


@dataclass
class NearExtremal:
    hypergraph: Hypergraph3
    A: list[int]
    B: list[int]
    C: list[int]
    params: dict


def random_partial_steiner(vertices: list[int], rng: random.Random, fill: float = 1.0) -> list[Edge]:
    """Pair-disjoint triples on ``vertices``: greedy over a shuffled triple list."""
    triples = list(itertools.combinations(sorted(vertices), 3))
    rng.shuffle(triples)
    covered: set[tuple[int, int]] = set()
    out = []
    for t in triples:
        pairs = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
        if covered.isdisjoint(pairs) and rng.random() < fill:
            covered.update(pairs)
            out.append(t)
    return sorted(out)


def c_part(vertices: list[int], style: str, rng: random.Random) -> list[Edge]:
    if style == "empty":
        return []
    if style == "steiner":
        # largest Steiner system fitting inside, on a prefix of the vertices
        m = max((m for m in range(3, len(vertices) + 1) if m % 6 in (1, 3)), default=0)
        if not m:
            return []
        return [tuple(vertices[v] for v in t) for t in sorted(steiner(m).triples)]
    if style == "random":
        return random_partial_steiner(vertices, rng, fill=0.7)
    raise ValueError(f"unknown C style {style!r}")


def near_extremal(n: int, n_A: int, n_B: int = 0, *, c_style: str = "random",
                  b_density: float = 0.05, b_cherries: int = 0, drop: float = 0.0,
                  seed: int = 0) -> NearExtremal:
    """Build a near-extremal instance.

    ``b_density`` is the probability of each triple {b, c, c'} (b in B, c, c' in C);
    ``b_cherries`` plants that many cherries {b c1 c2, b c1 c3} per B-vertex so that
    B + C spans copies of C; ``drop`` removes that fraction of the triples meeting A.
    """
    if n_A + n_B > n:
        raise ValueError("parts larger than n")
    rng = random.Random(seed)
    A = list(range(n_A))
    B = list(range(n_A, n_A + n_B))
    C = list(range(n_A + n_B, n))
    Aset = set(A)
    edges: set[Edge] = set()
    for e in itertools.combinations(range(n), 3):
        if Aset.intersection(e) and rng.random() >= drop:
            edges.add(e)
    edges.update(c_part(C, c_style, rng))
    for b in B:
        for c1, c2 in itertools.combinations(C, 2):
            if rng.random() < b_density:
                edges.add((b, c1, c2))
        for _ in range(b_cherries):
            c1, c2, c3 = rng.sample(C, 3)
            edges.add(tuple(sorted((b, c1, c2))))
            edges.add(tuple(sorted((b, c1, c3))))
    params = dict(n=n, n_A=n_A, n_B=n_B, c_style=c_style, b_density=b_density,
                  b_cherries=b_cherries, drop=drop, seed=seed)
    return NearExtremal(Hypergraph3(n, edges), A, B, C, params)
