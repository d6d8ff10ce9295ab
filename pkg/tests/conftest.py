"""Shared brute-force oracles and the acceptance summary hook.

The oracles here work straight from the raw edge set and never call the
package's own spanning test, so they stay independent of the code they check.
"""

from __future__ import annotations

import itertools
import random

import pytest

from c4tile.hypergraph import Hypergraph3


def random_hypergraph(n: int, p: float, rng: random.Random) -> Hypergraph3:
    return Hypergraph3(n, [e for e in itertools.combinations(range(n), 3) if rng.random() < p])


def oracle_spans(edges: set, q) -> bool:
    """Two distinct edges whose union is exactly q."""
    qs = set(q)
    inside = [e for e in edges if set(e) <= qs]
    return any(set(a) | set(b) == qs for a, b in itertools.combinations(inside, 2))


def oracle_perfect_8(edges: set) -> bool:
    """Try all 35 splits of 0..7 into two 4-sets."""
    for rest in itertools.combinations(range(1, 8), 3):
        first = (0, *rest)
        second = tuple(v for v in range(8) if v not in first)
        if oracle_spans(edges, first) and oracle_spans(edges, second):
            return True
    return False


def oracle_max_tiling(n: int, edges: set) -> int:
    rows = [q for q in itertools.combinations(range(n), 4) if oracle_spans(edges, q)]

    def best(start: int, used: frozenset) -> int:
        top = 0
        for i in range(start, len(rows)):
            if used.isdisjoint(rows[i]):
                top = max(top, 1 + best(i + 1, used | set(rows[i])))
        return top

    return best(0, frozenset())


def oracle_C_free(edges: set, S) -> bool:
    return not any(oracle_spans(edges, q) for q in itertools.combinations(sorted(S), 4))


def oracle_max_C_free_size(n: int, edges: set) -> int:
    for k in range(n, -1, -1):
        if any(oracle_C_free(edges, S) for S in itertools.combinations(range(n), k)):
            return k
    return 0


# -- acceptance summary ------------------------------------------------

_ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an exit criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.user_properties and dict(report.user_properties).get("acceptance")
    if marker:
        _ACCEPTANCE.append((marker[0], marker[1], report.outcome.upper()))


@pytest.fixture(autouse=True)
def _acceptance_property(request):
    m = request.node.get_closest_marker("acceptance")
    if m is not None:
        request.node.user_properties.append(("acceptance", (str(m.args[0]), m.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_ACCEPTANCE, key=lambda t: int(t[0])):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if outcome == 'PASSED' else 'FAIL'}  {title}")


# -- synthetic pipeline suite -------------------------------------------


def pipeline_suite():
    """Seeded near-extremal instances on 16, 24 and 32 vertices."""
    from c4tile.synthetic import near_extremal

    out = []
    seed = 0
    for n in (16, 24, 32):
        quarter = n // 4
        for n_A, n_B in ((quarter, 0), (quarter, 1), (quarter - 1, 1), (quarter, 2), (quarter - 1, 2)):
            for c_style in ("empty", "steiner", "random"):
                for drop in (0.0, 0.15):
                    seed += 1
                    out.append(near_extremal(n, n_A, n_B, c_style=c_style, b_density=0.04,
                                             b_cherries=seed % 3, drop=drop, seed=seed))
    return out
