"""Exact small-blocklength simulation of the warden's optimal test.

The warden performs a binary hypothesis test between the n-fold innocent
output and the n-fold response to input weight alpha, at equal priors.
The optimal error probability is (1 - T)/2 with T the trace distance of
the two n-copy states, and it can never drop below the Pinsker floor
(1 - sqrt(ln2 * D / 2))/2 set by the divergence budget D.  Everything
here is exact eigenvalue arithmetic on the full 2^n-scale matrices, so
blocklengths are capped at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelSpec, Scenario, basis_marginal_pair
from .covert import ScheduleParams
from .divergences import relative_entropy
from .linalg import tensor_power, trace_distance

LN2 = math.log(2.0)

# Caps keep the n-copy dimension within the linear-algebra limit 2^12.
MAX_USES = 10
MAX_USES_ALLENV = 5


@dataclass(frozen=True)
class DetectionResult:
    """Outcome of the warden's optimal n-use test at one input weight."""

    n: int
    alpha: float
    trace_dist: float
    error_prob: float
    pinsker_floor: float
    div_total: float


def pinsker_floor(div_total_bits: float) -> float:
    """Lower bound (1 - sqrt(ln2 * D / 2))/2 on the warden's error."""
    if div_total_bits < 0.0:
        raise ValueError(f"divergence {div_total_bits!r} must be nonnegative")
    return 0.5 * (1.0 - math.sqrt(LN2 * div_total_bits / 2.0))


def warden_error(n: int, alpha: float, spec: ChannelSpec) -> DetectionResult:
    """Exact warden error probability for n channel uses at weight alpha.

    Builds both n-copy hypothesis states, takes their trace distance,
    and reports E = (1 - T)/2 together with the divergence budget
    n * D(omega_alpha || omega_0) and its Pinsker floor.
    """
    cap = MAX_USES_ALLENV if spec.scenario is Scenario.ALL_ENV else MAX_USES
    if n < 1 or n != int(n):
        raise ValueError(f"number of uses n={n!r} must be a positive integer")
    if n > cap:
        raise ValueError(f"n={n} exceeds the cap {cap} for scenario {spec.scenario.name}")
    if not (0.0 <= alpha <= 1.0) or math.isnan(alpha):
        raise ValueError(f"alpha={alpha!r} outside [0, 1]")

    omega_0, omega_1 = basis_marginal_pair(spec)
    # Channel linearity: the response to diag(1-alpha, alpha) is the
    # alpha-mixture of the basis responses.  alpha=0 short-circuits to
    # omega_0 itself so the null-control rows come out exactly zero.
    omega_alpha = omega_0 if alpha == 0.0 else (1.0 - alpha) * omega_0 + alpha * omega_1
    dist = trace_distance(tensor_power(omega_alpha, n), tensor_power(omega_0, n))
    div_single = relative_entropy(omega_alpha, omega_0)
    div_total = n * div_single
    return DetectionResult(
        n=n,
        alpha=alpha,
        trace_dist=dist,
        error_prob=0.5 * (1.0 - dist),
        pinsker_floor=pinsker_floor(div_total) if math.isfinite(div_total) else -math.inf,
        div_total=div_total,
    )


def covertness_sweep(nu: float, q: float, n_list) -> list[DetectionResult]:
    """Scheduled detection sweep: alpha_n = n**(nu - 2/3) at each n.

    Runs the single-environment-qubit warden scenario and checks the
    Pinsker consistency E >= floor at every point before returning.
    """
    spec = ChannelSpec(q, Scenario.E1_ONLY)
    results = []
    for n in n_list:
        sched = ScheduleParams(int(n), nu)
        result = warden_error(sched.n, sched.alpha_n, spec)
        if result.error_prob < result.pinsker_floor - 1e-12:
            raise ArithmeticError(
                f"error probability {result.error_prob} fell below the "
                f"Pinsker floor {result.pinsker_floor} at n={n}"
            )
        results.append(result)
    return results
