"""Scan the three warden scenarios and print the support verdicts.

Whether covert signaling is even possible depends on what part of the
environment the adversary holds.  The full environment sees a support
violation (any signaling weight is detectable at fixed rate), the
second register alone sees literally nothing, and the first register
alone sees a full-support pair, which is the regime the rest of the
library builds on.
"""

import numpy as np

import qcovert as qc

for q in (0.1, 0.25, 0.5, 0.75, 0.9):
    print(f"--- depolarizing weight q = {q} ---")
    for scenario in qc.Scenario:
        rep = qc.scenario_support_report(qc.ChannelSpec(q, scenario))
        print(f"  {scenario.name:8s} verdict={rep.verdict:10s} "
              f"contained={rep.support_contained} "
              f"trace_dist={rep.trace_dist:.6f}")
        if scenario is qc.Scenario.ALL_ENV:
            # weight the signal state places outside the null support,
            # never below q/2
            print(f"           kernel overlap {rep.kernel_overlap:.6f} "
                  f"(floor q/2 = {q / 2.0})")
        if scenario is qc.Scenario.E1_ONLY:
            print(f"           det(omega_0) = {rep.det_omega0:.6f}, "
                  f"det(omega_1) = {rep.det_omega1:.6f}")
    print()

# the null vectors behind the ALL_ENV verdict, at one weight
q = 0.5
e0, f = qc.allenv_null_vectors(q)
_, omega_1 = qc.basis_marginal_pair(qc.ChannelSpec(q, qc.Scenario.ALL_ENV))
print("ALL_ENV null vectors at q = 0.5 and their weight under the signal state:")
for label, vec in (("e0", e0), ("f", f)):
    w = float(np.vdot(vec, omega_1 @ vec).real)
    print(f"  <{label}| omega_1 |{label}> = {w:.6f}")
