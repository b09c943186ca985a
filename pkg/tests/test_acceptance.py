"""Numbered acceptance criteria; each test prints one PASS/FAIL line.

All comparisons are exact (tolerance 0): cyclotomic numbers, rationals and
rational functions in L are compared for equality after normalization.
Criterion 8 compares 1/L-series coefficients through depth 10.
"""

import pytest

from mckay import verify

TOLERANCE = {8: "exact, series depth 10"}


@pytest.fixture(scope="module")
def report(request):
    tr = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(result):
        line = f"{result.line()} [tolerance: {TOLERANCE.get(result.number, 'exact')}]"
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)
            for d in result.details:
                tr.write_line("    " + d)
        else:
            print(line)
        return result

    return emit


CASES = [
    (1, lambda c: verify.criterion_1()),
    (2, lambda c: verify.criterion_2()),
    (3, verify.criterion_3),
    (4, verify.criterion_4),
    (5, verify.criterion_5),
    (6, lambda c: verify.criterion_6()),
    (7, verify.criterion_7),
    (8, lambda c: verify.criterion_8(depth=10)),
    (9, lambda c: verify.criterion_9()),
    (10, verify.criterion_10),
    (11, lambda c: verify.criterion_11()),
]


@pytest.mark.parametrize("number, fn", CASES, ids=[f"criterion_{n:02d}" for n, _ in CASES])
def test_criterion(number, fn, corpus, report):
    result = report(fn(corpus))
    assert result.number == number
    assert result.passed, "\n".join(result.details)


def test_corpus_is_large_enough(corpus):
    sl3 = verify.sl3_abelian(corpus)
    assert len(sl3) >= 20
    assert sum(1 for e in sl3 if e.group.order <= 30) >= 8


def test_whole_corpus_verifies(corpus):
    checks = verify.verify_corpus(corpus)
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, "\n".join(failed)
