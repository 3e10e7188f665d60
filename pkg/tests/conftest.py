import itertools

import pytest

from monores import VarContext, minimalize, parse_monomial

XYZ = VarContext(("x", "y", "z"))

_acceptance_lines: list[str] = []


def mono(text, ctx=XYZ):
    return parse_monomial(text, ctx)


def ideal(*gens, ctx=XYZ):
    return minimalize([parse_monomial(g, ctx) for g in gens])


def squarefree_family(n_max=4, q_max=5):
    """Every proper squarefree monomial ideal with n <= n_max and at most q_max generators."""
    for n in range(1, n_max + 1):
        ctx = VarContext.default(n)
        subsets = [frozenset(s) for r in range(1, n + 1) for s in itertools.combinations(range(n), r)]
        for q in range(1, q_max + 1):
            for gens in itertools.combinations(subsets, q):
                if any(a < b for a, b in itertools.permutations(gens, 2)):
                    continue
                yield minimalize([ctx.monomial(1 if j in g else 0 for j in range(n)) for g in gens])


@pytest.fixture
def record_criterion():
    def record(number, text, ok):
        _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
