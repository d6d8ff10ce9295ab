"""Plain-graph helpers: Hamilton cycles in Dirac graphs and bipartite matchings."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from typing import TypeVar

L = TypeVar("L", bound=Hashable)
R = TypeVar("R", bound=Hashable)


class HamiltonError(RuntimeError):
    pass


def min_degree(adj: Mapping[int, Iterable[int]]) -> int:
    return min((len(set(nb)) for nb in adj.values()), default=0)


def is_hamilton_cycle(adj: Mapping[int, set[int]], cycle: list[int]) -> bool:
    if len(cycle) != len(adj) or set(cycle) != set(adj) or len(cycle) < 3:
        return False
    return all(cycle[i + 1 - len(cycle)] in adj[cycle[i]] for i in range(len(cycle)))


def hamilton_cycle(adj: Mapping[int, set[int]]) -> list[int]:
    """Hamilton cycle by rotation-extension.

    Always succeeds when every degree is at least half the order (order >= 3);
    on other graphs it may raise HamiltonError even if a cycle exists.
    """
    verts = sorted(adj)
    n = len(verts)
    if n < 3:
        raise HamiltonError(f"no Hamilton cycle on {n} vertices")
    path = [verts[0]]
    on_path = {verts[0]}
    while True:
        _extend(adj, path, on_path)
        cycle = _close(adj, path)
        if cycle is None:
            raise HamiltonError(f"path of length {len(path)} cannot be closed into a cycle")
        if len(cycle) == n:
            return cycle
        for j, c in enumerate(cycle):
            outside = sorted(set(adj[c]) - on_path)
            if outside:
                w = outside[0]
                path = [w] + cycle[j:] + cycle[:j]
                on_path.add(w)
                break
        else:
            raise HamiltonError("graph is disconnected")


def _extend(adj: Mapping[int, set[int]], path: list[int], on_path: set[int]) -> None:
    grew = True
    while grew:
        grew = False
        free = sorted(set(adj[path[-1]]) - on_path)
        if free:
            path.append(free[0])
            on_path.add(free[0])
            grew = True
            continue
        free = sorted(set(adj[path[0]]) - on_path)
        if free:
            path.insert(0, free[0])
            on_path.add(free[0])
            grew = True


def _close(adj: Mapping[int, set[int]], path: list[int]) -> list[int] | None:
    first, last = path[0], path[-1]
    if len(path) >= 3 and first in adj[last]:
        return list(path)
    for i in range(1, len(path) - 2):
        if path[i] in adj[last] and path[i + 1] in adj[first]:
            return path[: i + 1] + path[:i:-1]
    return None


def augmenting_matching(left: Iterable[L], adj: Mapping[L, Iterable[R]],
                        initial: Mapping[L, R] | None = None) -> dict[L, R]:
    """Maximum bipartite matching by repeated augmenting paths (Kuhn).

    ``adj[x]`` is scanned in the given order, which makes the result
    deterministic for ordered inputs.
    """
    match_left: dict[L, R] = dict(initial or {})
    match_right: dict[R, L] = {r: l for l, r in match_left.items()}
    order = list(left)
    nbrs = {x: list(adj.get(x, ())) for x in order}

    def augment(x: L, seen: set[R]) -> bool:
        for r in nbrs[x]:
            if r in seen:
                continue
            seen.add(r)
            owner = match_right.get(r)
            if owner is None or augment(owner, seen):
                match_left[x] = r
                match_right[r] = x
                return True
        return False

    for x in order:
        if x not in match_left:
            augment(x, set())
    return match_left
