"""
Checking identities in bulk
===========================

Every identity check is seeded and deterministic.  The full suite at seed 42
is the acceptance run.
"""

import time

from symplex import run_suite

start = time.perf_counter()
report = run_suite(seed=42)
for key, rep in report["results"].items():
    print(f"{key:26s} {'pass' if rep['pass'] else 'FAIL'}  {rep['instances_run']:5d} instances")
print("all pass:", report["pass"], f"({time.perf_counter() - start:.2f}s)")

# notes carry the sign-convention evidence
notes = report["results"]["rank-one-conjugation"]["notes"]
print(notes["printed_sign_holds"], notes["alternative_sign_holds"])
