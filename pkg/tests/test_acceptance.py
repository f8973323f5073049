"""Acceptance run: one test per criterion, each with its wall-clock limit.

Every test prints a single ``criterion N: PASS|FAIL`` line.  Run this file
alone with ``pytest tests/test_acceptance.py -v`` or ``python
tests/test_acceptance.py``.
"""
import sys
import time

import pytest

from symplex.lab import run_check

SEED = 42


CRITERIA = [
    # number, limit (s), description, lab checks, extra condition on the reports
    (1, 1, "form axioms psi^T = -psi, psi^2 = -Id for n = 1..6", ["form-axioms"], None),
    (2, 5, "generators symplectic over Q[lambda], n <= 3, no sign faults", ["generator-soundness"],
     lambda r: r[0].notes["sign_convention_faults"] == 0),
    (3, 30, "conjugation table over all (i, j) and index sets, n = 2, 3", ["conjugation-table"],
     lambda r: all(v > 0 for v in r[0].notes["case_counts"].values())),
    (4, 5, "delta identities for every index set, n <= 4", ["delta-identities"], None),
    (5, 30, "entrywise conjugation pattern on 50 congruent matrices", ["conjugation-pattern"],
     lambda r: r[0].instances_run >= 50 * 4),
    (6, 60, "rank-one conjugation identities on 100 words", ["rank-one-conjugation"],
     lambda r: r[0].notes["instances"] == 100),
    (7, 10, "transvections preserve the combined form", ["transvections"],
     lambda r: r[0].instances_run >= 1 + 500),
    (8, 120, "factorization round-trip, 500 over GF(7) and 200 over Z", ["factorization-roundtrip"],
     lambda r: r[0].instances_run == 700),
    (9, 60, "Bruhat splitting of 100 matrices in Sp4(GF(5))", ["bruhat-split"],
     lambda r: r[0].notes["decomposition_failed_rate"] == "0/100"),
    (10, 30, "polarized example and pyramid split membership", ["polarized-example", "pyramid-split"],
     lambda r: r[1].instances_run >= 1000),
    (11, 10, "ring multiplication oracle and unit inverses", ["ring-oracle"], lambda r: r[0].instances_run >= 300),
]


def evaluate(limit, checks, extra):
    start = time.perf_counter()
    reports = [run_check(c, SEED) for c in checks]
    elapsed = time.perf_counter() - start
    failures = [f for rep in reports for f in rep.failures]
    ok = not failures and (extra is None or extra(reports)) and elapsed < limit
    return ok, elapsed, failures


def line(number, ok, elapsed, limit, desc):
    return f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {elapsed:7.3f}s / {limit}s  {desc}"


@pytest.mark.parametrize("number, limit, desc, checks, extra", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, limit, desc, checks, extra, capsys):
    ok, elapsed, failures = evaluate(limit, checks, extra)
    with capsys.disabled():
        print("\n" + line(number, ok, elapsed, limit, desc))
    assert not failures, failures[:3]
    assert elapsed < limit
    assert ok


if __name__ == "__main__":
    results = []
    for number, limit, desc, checks, extra in CRITERIA:
        ok, elapsed, _ = evaluate(limit, checks, extra)
        print(line(number, ok, elapsed, limit, desc))
        results.append(ok)
    sys.exit(0 if all(results) else 1)
