"""Perfect tiling of X + Z (|Z| = 3|X|) when X sees almost every pair of Z.

Each tile is one vertex of X plus a triple of Z.  The triples are built in
two batches: a small family F' of disjoint *good* triples reserved for the
vertices of X that are picky about the rest, and a chopping of a Hamilton
cycle through the heavy-pair graph on what is left.  Vertices are then
matched to triples in three steps.

The randomised choice of F' used in the existence argument is replaced by a
deterministic greedy scan (``selection="greedy"``); ``selection="random"``
shuffles the scan order with a seeded generator.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import AbsorberShortage, DiracFailed, HallFailed, PreconditionFailed
from .graphs import HamiltonError, augmenting_matching, hamilton_cycle, is_hamilton_cycle
from .hypergraph import Edge, Hypergraph3, Pair, spans_C
from .solver import Tiling, verify_tiling


@dataclass
class Claim:
    name: str
    holds: bool
    lhs: float
    rhs: float

    def to_json(self) -> dict:
        return {"name": self.name, "holds": bool(self.holds), "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class Lemma3Instance:
    X: list[int]
    Z: list[int]
    rho: float
    hypotheses: list[Claim] = field(default_factory=list)
    G: set[Pair] = field(default_factory=set)
    good_triples: int = 0
    F_prime: list[Edge] = field(default_factory=list)
    Z1: list[int] = field(default_factory=list)
    cycle: list[int] = field(default_factory=list)
    slots: list[Edge] = field(default_factory=list)
    gamma: dict[int, list[int]] = field(default_factory=dict)
    X0: list[int] = field(default_factory=list)
    matching: dict[int, int] = field(default_factory=dict)
    tiling: Tiling | None = None

    @property
    def q(self) -> int:
        return len(self.F_prime)

    def to_json(self) -> dict:
        return {
            "X": self.X,
            "Z": self.Z,
            "rho": self.rho,
            "hypotheses": [c.to_json() for c in self.hypotheses],
            "heavy_pairs": len(self.G),
            "good_triples": self.good_triples,
            "F_prime": [list(t) for t in self.F_prime],
            "Z1": self.Z1,
            "cycle": self.cycle,
            "slots": [list(t) for t in self.slots],
            "X0": self.X0,
            "matching": {str(x): i for x, i in sorted(self.matching.items())},
        }


def _suitable(H: Hypergraph3, x: int, t: Iterable[int]) -> bool:
    return spans_C(H, (x, *t))


def absorber_target(rho: float, size_X: int, size_Z: int) -> int:
    """How many reserved triples to collect.

    ceil(rho^(1/4)|Z|), capped at |X|//2 so the cycle part stays non-empty.
    Inside the regime the existence argument uses (rho <= 2e-6) the cap
    never binds.
    """
    return min(math.ceil(rho ** 0.25 * size_Z), size_X // 2)


def solve_lemma3(H: Hypergraph3, X: Iterable[int], Z: Iterable[int], rho: float,
                 *, selection: str = "greedy", seed: int = 0) -> Lemma3Instance:
    X = sorted(set(X))
    Z = sorted(set(Z))
    inst = Lemma3Instance(X, Z, rho)
    if set(X) & set(Z):
        raise PreconditionFailed("lemma3", "X and Z intersect", inst)
    if len(Z) != 3 * len(X):
        raise PreconditionFailed("lemma3", f"|Z| = {len(Z)} but 3|X| = {3 * len(X)}", inst)
    if not 0 < rho < 1:
        raise PreconditionFailed("lemma3", f"rho must lie in (0, 1), got {rho}", inst)
    if selection not in ("greedy", "random"):
        raise PreconditionFailed("lemma3", f"unknown selection mode {selection!r}", inst)
    if not X:
        inst.tiling = Tiling()
        return inst

    Xs, Zs = set(X), set(Z)
    nx, nz = len(X), len(Z)
    pairs_Z = math.comb(nz, 2)

    # degree hypotheses: reported, not enforced
    worst_x = max(pairs_Z - sum(1 for a, b in H.link_pairs(x) if a in Zs and b in Zs) for x in X)
    inst.hypotheses.append(Claim("antideg(x, Z) <= rho*C(|Z|,2)", worst_x <= rho * pairs_Z,
                                 worst_x, rho * pairs_Z))
    worst_z = 0
    for z in Z:
        seen = sum(1 for a, b in H.link_pairs(z)
                   if (a in Xs and b in Zs) or (b in Xs and a in Zs))
        worst_z = max(worst_z, nx * (nz - 1) - seen)
    inst.hypotheses.append(Claim("antideg(z, XZ) <= rho*|X||Z|", worst_z <= rho * nx * nz,
                                 worst_z, rho * nx * nz))

    # heavy pairs
    heavy = (1 - math.sqrt(rho)) * nx
    inst.G = {(u, v) for u, v in itertools.combinations(Z, 2)
              if len(H.neighbours(u, v) & Xs) >= heavy}
    G = inst.G

    def good(t: Edge) -> bool:
        a, b, c = t
        return ((a, b) in G) + ((a, c) in G) + ((b, c) in G) >= 2

    good_triples = [t for t in itertools.combinations(Z, 3) if good(t)]
    inst.good_triples = len(good_triples)

    # reserved family F'
    order = list(good_triples)
    if selection == "random":
        random.Random(seed).shuffle(order)
    target = absorber_target(rho, nx, nz)
    used: set[int] = set()
    for t in order:
        if len(inst.F_prime) >= target:
            break
        if used.isdisjoint(t):
            inst.F_prime.append(t)
            used.update(t)

    # Hamilton cycle through G on the leftover vertices
    inst.Z1 = [z for z in Z if z not in used]
    Z1s = set(inst.Z1)
    adj = {z: set() for z in inst.Z1}
    for u, v in G:
        if u in Z1s and v in Z1s:
            adj[u].add(v)
            adj[v].add(u)
    if inst.Z1:
        delta = min(len(nb) for nb in adj.values())
        if not delta > len(inst.Z1) / 2:
            raise DiracFailed("lemma3.dirac",
                              f"min degree {delta} of G' is not above |Z1|/2 = {len(inst.Z1) / 2}", inst)
        try:
            inst.cycle = hamilton_cycle(adj)
        except HamiltonError as exc:  # cannot happen above the Dirac bound
            raise DiracFailed("lemma3.dirac", str(exc), inst) from exc
        assert is_hamilton_cycle(adj, inst.cycle)
    q2 = [tuple(sorted(inst.cycle[i:i + 3])) for i in range(0, len(inst.cycle), 3)]
    inst.slots = list(inst.F_prime) + q2  # type: ignore[arg-type]
    q = len(inst.F_prime)
    m = len(q2)

    inst.gamma = {x: [i for i, t in enumerate(inst.slots) if _suitable(H, x, t)] for x in X}
    inst.X0 = [x for x in X if sum(1 for i in inst.gamma[x] if i >= q) <= m / 2]

    # step 1: picky vertices take reserved triples
    step1 = augmenting_matching(inst.X0, {x: [i for i in inst.gamma[x] if i < q] for x in inst.X0})
    missing = [x for x in inst.X0 if x not in step1]
    if missing:
        raise AbsorberShortage("lemma3.step1",
                               f"vertices {missing} have no free suitable reserved triple", inst)
    inst.matching.update(step1)

    # step 2: every unused reserved triple takes a non-picky vertex
    X0s = set(inst.X0)
    taken = set(step1.values())
    free_slots = [i for i in range(q) if i not in taken]
    by_slot = {i: [x for x in X if x not in X0s and i in inst.gamma[x]] for i in free_slots}
    step2 = augmenting_matching(free_slots, by_slot)
    if len(step2) < len(free_slots):
        left = [i for i in free_slots if i not in step2]
        raise HallFailed("lemma3.step2", f"reserved triples {[inst.slots[i] for i in left]} "
                                         "cannot all be matched", inst)
    inst.matching.update({x: i for i, x in step2.items()})

    # step 3: perfect matching between the rest of X and the cycle triples
    X1 = [x for x in X if x not in inst.matching]
    step3 = augmenting_matching(X1, {x: [i for i in inst.gamma[x] if i >= q] for x in X1})
    if len(step3) < len(X1):
        raise HallFailed("lemma3.step3",
                         f"only {len(step3)} of {len(X1)} vertices matched to cycle triples", inst)
    inst.matching.update(step3)

    inst.tiling = Tiling.from_elements(H, [(x, *inst.slots[i]) for x, i in sorted(inst.matching.items())])
    assert verify_tiling(H, inst.tiling, require_perfect=True, vertices=Xs | Zs)
    return inst


def lemma3_tiling(H: Hypergraph3, X: Iterable[int], Z: Iterable[int], rho: float,
                  *, selection: str = "greedy", seed: int = 0) -> Tiling:
    inst = solve_lemma3(H, X, Z, rho, selection=selection, seed=seed)
    assert inst.tiling is not None
    return inst.tiling
