import sys

import pytest

from grahamcolour import groups, quotient


class ProblemCache:
    """Session-wide cache of built quotient problems (they are immutable)."""

    def __init__(self):
        self._cache = {}

    def get(self, n: int, name: str) -> quotient.QuotientProblem:
        key = (n, name)
        if key not in self._cache:
            group = groups.lookup(name, n)
            self._cache[key] = quotient.build_quotient(n, group)
        return self._cache[key]


@pytest.fixture(scope="session")
def problems() -> ProblemCache:
    return ProblemCache()


def acceptance_report(criterion: str, ok: bool, detail: str = "") -> None:
    """One visible pass/fail line per acceptance criterion."""
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {criterion}: {status}"
    if detail:
        line += f" ({detail})"
    sys.__stderr__.write(line + "\n")
    sys.__stderr__.flush()
