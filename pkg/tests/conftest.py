"""Shared helpers: cached sweeps, a brute-force count shorthand, and the
criterion line registry echoed after the run."""

from functools import lru_cache

from douglastile.matching import count_matchings, dual_graph
from douglastile.regions import (
    RegionSpec,
    build_region,
    enumerate_valid_regions,
)

# one "PASS criterion N: ..." or "FAIL criterion N: ..." line per
# acceptance check; replayed by the terminal-summary hook because
# fd-level capture swallows prints even on the real stdout
CRITERION_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERION_LINES:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria")
    for line in CRITERION_LINES:
        terminalreporter.write_line(line)


@lru_cache(maxsize=None)
def valid_specs(max_total: int) -> tuple[RegionSpec, ...]:
    return tuple(r.spec for r in enumerate_valid_regions(max_total))


def brute_count(spec: RegionSpec | None) -> int:
    """Matching count of the dual graph; the empty spec counts as one."""
    if spec is None:
        return 1
    return count_matchings(dual_graph(build_region(spec.side, spec.distances)))
