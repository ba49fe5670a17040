"""
How cost grows with questionnaire size
======================================

Counts, not wall clock: selection probes during the build, node visits per
interview, matrix cells during scoring.  The node envelope bounds how large
the ordering tree can get, and the run refuses up front if a spec's envelope
would blow the budget.
"""

from fpqm.bench import SynthSpec, node_envelope, scaling_run

# Chains a0 -> a1 -> ... with weakening determinism, binary domains, so the
# tree stays readable while n grows.
specs = []
for n in (4, 6, 8, 10):
    plan = tuple((j, j + 1, 0.9) for j in range(n - 1))
    specs.append(SynthSpec(n=n, domain_sizes=(2,) * n, m=300,
                           dependency_plan=plan, seed=11))

for spec in specs:
    print(f"n={spec.n}: envelope {node_envelope(spec.domain_sizes)} nodes")

report = scaling_run(specs, sigma=0.8, beta=0.5)
print()
print(report.to_csv(with_timings=False))

# The probe count during root selection is (sum of domain sizes) squared
# minus the sum of squares; with all-binary domains that is 4n^2 - 4n.
for row in report.rows:
    n = row.spec.n
    print(f"n={n}: {row.selection_probes} probes at the root "
          f"(formula gives {4 * n * n - 4 * n} for the first split), "
          f"{row.rule_count} rules, reduction {row.arr:.2f}")
