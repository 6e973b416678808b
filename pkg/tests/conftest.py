import random

import pytest

from citegraph.corpus import CitationEdge, JournalRecord, build_graph

ACCEPTANCE_RESULTS: list[str] = []


def journals(*ids, **kwargs):
    return [JournalRecord(id=j, name=f"Journal {j}", **kwargs) for j in ids]


def random_rows(rng: random.Random, n_journals: int, n_rows: int, max_weight: int = 20):
    ids = [f"J{i:02d}" for i in range(n_journals)]
    rows = [
        (rng.choice(ids), rng.choice(ids), rng.randint(1, max_weight)) for _ in range(n_rows)
    ]
    return ids, rows


def graph_from_rows(ids, rows):
    return build_graph(journals(*ids), [CitationEdge(a, b, w) for a, b, w in rows])


@pytest.fixture
def small_graph():
    """A->A:5, A->B:3, A->C:1, B->A:2, C->A:10, D->A:1."""
    rows = [("A", "A", 5), ("A", "B", 3), ("A", "C", 1), ("B", "A", 2), ("C", "A", 10), ("D", "A", 1)]
    return graph_from_rows(["A", "B", "C", "D"], rows)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; printed in the terminal summary."""

    def record(number: int, passed: bool, detail: str):
        ACCEPTANCE_RESULTS.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
        assert passed, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
