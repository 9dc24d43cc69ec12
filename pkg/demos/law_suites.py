"""
Seeded law suites with minimized counterexamples
================================================

"""

# each suite draws seeded random instances and re-checks one family of
# laws; reports are deterministic for a fixed seed
from multiteam.suites import run_suite

for name in ("flatness", "lemma-rules", "pci-ci"):
    report = run_suite(name, seed=7, trials=40, max_rows=2)
    print(report.render().splitlines()[0])

# the exhaustive oracle cross-check of both CNF encoders, desk scale
print(run_suite("reductions", max_clauses=1, max_clauses2=1, jobs=1).render())

# two threshold-composition identities are genuinely false; the suite
# finds fixed two-row counterexamples and prints them minimized
report = run_suite("approx-laws", seed=7, trials=20)
print(report.render())
