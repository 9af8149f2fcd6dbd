import math

import numpy as np
import pytest

from qcovert.channels import e1only_marginal, stinespring_isometry
from qcovert.covert import (
    BERRY_ESSEEN,
    ArrowMatrixParams,
    ScheduleParams,
    arrow_matrix,
    arrow_params,
    arrow_spectral,
    asymptotic_logM,
    binary_convolution,
    capacity_lower_bound,
    covert_rate,
    dvq_asymptotic,
    dvq_exact,
    entangled_input,
    finite_blocklength_logM,
    finite_rate_convergence,
    inverse_normal_cdf,
    joint_output_closed_form,
    product_of_marginals,
    rate_limit,
    rate_report,
    willie_divergence_total,
    willie_eta,
)
from qcovert.divergences import DvqTriple, relative_entropy
from qcovert.linalg import eig_hermitian, partial_trace, projector

SQRT_2PI = math.sqrt(2.0 * math.pi)

# Regression pins, produced once by this library and cross-checked against
# the independent oracles in this file at looser tolerance.
ETA_PINS = {0.3: 3.439146196075672, 0.5: 4.637269831353988, 0.7: 5.373790176566614}
CAPACITY_PIN_Q05 = 0.1459389779600682


def entropy_bits(rho):
    w = np.linalg.eigvalsh(rho)
    return -sum(x * math.log2(x) for x in w if x > 1e-14)


def dense_log2(m):
    """Operator log2 built directly from numpy's eigh, bypassing the library."""
    w, v = np.linalg.eigh(m)
    out = np.zeros_like(np.asarray(m, dtype=complex))
    for lam, vec in zip(w, v.T):
        if lam > 1e-14:
            out += math.log2(lam) * np.outer(vec, vec.conj())
    return out


def test_entangled_input_vector():
    psi = entangled_input(0.36)
    np.testing.assert_allclose(psi, [0.8, 0.0, 0.0, 0.6], atol=1e-15)
    assert np.linalg.norm(entangled_input(0.0)) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        entangled_input(1.5)


def test_arrow_params_formulas():
    alpha, q = 0.3, 0.4
    p = arrow_params(alpha, q)
    assert p.a == pytest.approx((1.0 - q / 2.0) * (1.0 - alpha), rel=1e-15)
    assert p.b == pytest.approx((q / 2.0) * (1.0 - alpha), rel=1e-15)
    assert p.c == pytest.approx((q / 2.0) * alpha, rel=1e-15)
    assert p.d == pytest.approx((1.0 - q / 2.0) * alpha, rel=1e-15)
    assert p.e == pytest.approx((1.0 - q) * math.sqrt(alpha * 0.7), rel=1e-15)


def test_arrow_matrix_layout():
    p = ArrowMatrixParams(0.4, 0.25, 0.15, 0.2, 0.1)
    m = arrow_matrix(p)
    assert m[0, 3] == m[3, 0] == 0.1
    assert m[1, 2] == 0.0
    np.testing.assert_array_equal(np.diag(m).real, [0.4, 0.25, 0.15, 0.2])
    np.testing.assert_array_equal(m, m.conj().T)


@pytest.mark.parametrize("alpha", [0.05, 0.3, 0.8])
@pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
def test_joint_output_matches_dilation(alpha, q):
    """Closed form vs sending half of the entangled pair through the dilation."""
    psi = entangled_input(alpha)
    v = stinespring_isometry(q)
    psi_out = np.kron(np.eye(2), v) @ psi
    joint = partial_trace(projector(psi_out), [2, 2, 2, 2], [0, 1])
    np.testing.assert_allclose(joint, joint_output_closed_form(alpha, q), atol=1e-14)


def test_joint_output_trace_one():
    m = joint_output_closed_form(0.25, 0.65)
    assert m.trace().real == pytest.approx(1.0, abs=1e-14)


def test_binary_convolution_edge_cases():
    assert binary_convolution(0.3, 0.0) == pytest.approx(0.3)
    assert binary_convolution(0.3, 1.0) == pytest.approx(0.7)
    assert binary_convolution(0.2, 0.4) == pytest.approx(binary_convolution(0.4, 0.2))


def test_product_of_marginals_is_product_of_partial_traces():
    for alpha, q in [(0.2, 0.3), (0.7, 0.6)]:
        joint = joint_output_closed_form(alpha, q)
        left = partial_trace(joint, [2, 2], [0])
        right = partial_trace(joint, [2, 2], [1])
        np.testing.assert_allclose(
            product_of_marginals(alpha, q), np.kron(left, right), atol=1e-15
        )


def test_arrow_spectral_matches_generic_eigensolver():
    rng = np.random.default_rng(17)
    for _ in range(50):
        alpha = rng.uniform(0.01, 0.99)
        q = rng.uniform(0.01, 0.99)
        p = arrow_params(alpha, q)
        closed = arrow_spectral(p)
        generic = eig_hermitian(arrow_matrix(p))
        np.testing.assert_allclose(closed.eigenvalues, generic.eigenvalues, atol=1e-12)
        np.testing.assert_allclose(closed.reconstruct(), arrow_matrix(p), atol=1e-12)


def test_arrow_spectral_determinant_identity():
    # prod(w) = bc(ad - e^2) = (q^3/4)(1 - 3q/4) alpha^2 (1 - alpha)^2,
    # ordering-independent so it holds even when the coupled block's small
    # root crosses below the uncoupled entries
    for alpha, q in [(1e-8, 0.5), (0.3, 0.2), (0.999, 0.9)]:
        w = arrow_spectral(arrow_params(alpha, q)).eigenvalues
        expected = 0.25 * q**3 * (1.0 - 0.75 * q) * (alpha * (1.0 - alpha)) ** 2
        assert np.prod(w) == pytest.approx(expected, rel=1e-12, abs=0.0)


def test_arrow_spectral_tiny_alpha_stays_accurate():
    """The rationalized branch keeps the small coupled eigenvalue accurate."""
    alpha, q = 1e-12, 0.5
    p = arrow_params(alpha, q)
    dec = arrow_spectral(p)
    assert np.all(dec.eigenvalues >= 0.0)
    # b and c pass through the solver bit-exact; the other two eigenvalues
    # are the corner-coupled pair, wherever sorting placed them
    coupled = sorted(x for x in dec.eigenvalues if x not in (p.b, p.c))
    assert len(coupled) == 2
    expected_small = q * (1.0 - 0.75 * q) * alpha * (1.0 - alpha) / coupled[1]
    assert coupled[0] == pytest.approx(expected_small, rel=1e-9, abs=0.0)
    np.testing.assert_allclose(dec.reconstruct(), arrow_matrix(p), atol=1e-15)


def test_arrow_spectral_uncoupled_branch():
    p = ArrowMatrixParams(0.4, 0.3, 0.2, 0.1, 0.0)
    dec = arrow_spectral(p)
    np.testing.assert_array_equal(dec.eigenvalues, [0.4, 0.3, 0.2, 0.1])


def test_dvq_exact_first_moment_matches_entropy_route():
    # mutual-information identity: D(rho_AB || rho_A x rho_B)
    #                            = S(A) + S(B) - S(AB)
    for alpha, q in [(0.1, 0.3), (0.01, 0.5), (0.45, 0.8)]:
        joint = joint_output_closed_form(alpha, q)
        expected = (
            entropy_bits(partial_trace(joint, [2, 2], [0]))
            + entropy_bits(partial_trace(joint, [2, 2], [1]))
            - entropy_bits(joint)
        )
        assert dvq_exact(alpha, q).d == pytest.approx(expected, abs=1e-11)


def test_dvq_exact_higher_moments_match_direct_construction():
    alpha, q = 0.2, 0.45
    rho = joint_output_closed_form(alpha, q)
    sigma = product_of_marginals(alpha, q)
    loglike = dense_log2(rho) - dense_log2(sigma)
    d = float(np.trace(rho @ loglike).real)
    centered = loglike - d * np.eye(4)
    v = float(np.trace(rho @ centered @ centered).real)
    q4 = float(np.trace(rho @ np.linalg.matrix_power(centered, 4)).real)
    got = dvq_exact(alpha, q)
    assert got.d == pytest.approx(d, abs=1e-12)
    assert got.v == pytest.approx(v, abs=1e-12)
    assert got.q4 == pytest.approx(q4, abs=1e-12)


def test_dvq_asymptotic_leading_forms():
    alpha, q = 1e-4, 0.5
    lead = dvq_asymptotic(alpha, q)
    coeff = 2.0 * 0.25 / 1.5  # 2(1-q)^2/(2-q) = 1/3 at q = 0.5
    assert lead.d == pytest.approx(-coeff * alpha * math.log2(alpha), rel=1e-14)
    assert lead.d == pytest.approx(4.429e-4, abs=1e-7)
    assert lead.v == pytest.approx(coeff * alpha * math.log2(alpha) ** 2, rel=1e-14)
    assert lead.v > 0.0
    assert dvq_asymptotic(0.0, q) == DvqTriple(0.0, 0.0, 0.0)


def test_dvq_asymptotic_fourth_moment_calibration():
    # the order-class constant is read off the exact value at the reference
    # weight, so the two agree there by construction
    q = 0.5
    ref = 1e-3
    lead = dvq_asymptotic(ref, q, reference_alpha=ref)
    assert lead.q4 == pytest.approx(dvq_exact(ref, q).q4, rel=1e-12)
    # and stays the right order of magnitude two decades down
    small = dvq_asymptotic(1e-5, q, reference_alpha=ref)
    assert dvq_exact(1e-5, q).q4 == pytest.approx(small.q4, rel=0.5)


def test_dvq_ratio_regression_values():
    """Exact-to-leading ratio minus one, pinned along the alpha grid."""
    pins = {1e-3: 0.277163, 1e-4: 0.207750, 1e-5: 0.166181, 1e-6: 0.138481}
    for alpha, pin in pins.items():
        exact, lead = dvq_exact(alpha, 0.5), dvq_asymptotic(alpha, 0.5)
        assert exact.d / lead.d - 1.0 == pytest.approx(pin, abs=5e-6)


def test_inverse_normal_cdf_basics():
    assert inverse_normal_cdf(0.5) == 0.0
    assert inverse_normal_cdf(0.975) == pytest.approx(1.959963985, abs=1e-8)
    assert inverse_normal_cdf(0.2) == pytest.approx(-inverse_normal_cdf(0.8), abs=1e-14)
    for bad in (0.0, 1.0, -0.1, math.nan):
        with pytest.raises(ValueError):
            inverse_normal_cdf(bad)


def test_finite_blocklength_logM_formula():
    n, eps = 1000, 0.05
    triple = DvqTriple(0.01, 0.002, 1e-5)
    c_n = (
        BERRY_ESSEEN / SQRT_2PI * triple.q4**0.75 / triple.v
        + triple.v / SQRT_2PI
        + math.log2(4.0 * eps * n)
    )
    expected = n * triple.d + math.sqrt(n * triple.v) * inverse_normal_cdf(eps) - c_n
    assert finite_blocklength_logM(n, eps, triple) == pytest.approx(expected, rel=1e-14)


def test_finite_blocklength_logM_validation():
    good = DvqTriple(0.01, 0.002, 1e-5)
    with pytest.raises(ValueError):
        finite_blocklength_logM(1, 0.05, good)
    with pytest.raises(ValueError):
        finite_blocklength_logM(100, 1.0, good)
    with pytest.raises(ValueError):
        finite_blocklength_logM(100, 0.05, DvqTriple(math.inf, math.inf, math.inf))
    with pytest.raises(ArithmeticError):
        finite_blocklength_logM(100, 0.05, DvqTriple(0.01, 0.0, 1e-5))


def test_schedule_params():
    s = ScheduleParams(10**6, 0.05)
    assert s.alpha_n == pytest.approx(10.0 ** (6 * (0.05 - 2.0 / 3.0)), rel=1e-12)
    assert s.gamma_n == pytest.approx(10.0 ** (6 * (0.05 - 1.0 / 6.0)), rel=1e-12)
    assert ScheduleParams(1, 0.1).alpha_n == 1.0  # boundary blocklength
    with pytest.raises(ValueError):
        ScheduleParams(0, 0.05)
    with pytest.raises(ValueError):
        ScheduleParams(100, 0.0)
    with pytest.raises(ValueError):
        ScheduleParams(100, 1.0 / 6.0)


def test_asymptotic_logM_formula():
    s = ScheduleParams(10**5, 0.08)
    q = 0.4
    expected = (
        2.0 * (2.0 / 3.0 - 0.08) * 0.36 / 1.6 * s.gamma_n * math.sqrt(s.n) * math.log2(s.n)
    )
    assert asymptotic_logM(s, q) == pytest.approx(expected, rel=1e-13)


def test_willie_eta_pins_and_quadratic_limit():
    for q, pin in ETA_PINS.items():
        assert willie_eta(q) == pytest.approx(pin, rel=1e-12)
    # independent check: the curvature really is the small-weight limit of
    # 2 D(omega_t || omega_0) / t^2 for the single-environment-qubit warden
    q = 0.5
    t = 1e-4
    d = relative_entropy(e1only_marginal(t, q), e1only_marginal(0.0, q))
    assert 2.0 * d / (t * t) == pytest.approx(willie_eta(q), rel=1e-3)


def test_willie_divergence_total_exact_additivity():
    s = ScheduleParams(10**4, 0.05)
    q = 0.5
    total = willie_divergence_total(s, q)
    single = relative_entropy(e1only_marginal(s.alpha_n, q), e1only_marginal(0.0, q))
    assert total.exact == pytest.approx(s.n * single, rel=1e-14)
    assert total.quadratic == pytest.approx(
        s.n * s.alpha_n**2 * willie_eta(q) / 2.0, rel=1e-14
    )
    # quadratic law is within half a percent at this weight (alpha ~ 3e-3)
    assert total.exact / total.quadratic == pytest.approx(1.0, abs=6e-3)
    with pytest.raises(ValueError):
        willie_divergence_total(s, 1.0)


def test_covert_rate_formula_and_validation():
    assert covert_rate(100.0, 10**4, 0.5) == pytest.approx(
        100.0 / (math.log2(10**4) * math.sqrt(10**4 * 0.5)), rel=1e-14
    )
    with pytest.raises(ValueError):
        covert_rate(100.0, 1, 0.5)
    with pytest.raises(ValueError):
        covert_rate(100.0, 100, 0.0)
    with pytest.raises(ValueError):
        covert_rate(100.0, 100, math.inf)


def test_capacity_lower_bound_values():
    assert capacity_lower_bound(0.0) == math.inf
    assert capacity_lower_bound(1.0) == 0.0
    assert capacity_lower_bound(0.5) == pytest.approx(CAPACITY_PIN_Q05, rel=1e-12)
    # closed form against the pinned eta
    q = 0.5
    expected = 4.0 * math.sqrt(2.0) / 3.0 * 0.25 / (1.5 * math.sqrt(ETA_PINS[q]))
    assert capacity_lower_bound(q) == pytest.approx(expected, rel=1e-12)


def test_rate_limit_formula():
    nu, q = 0.05, 0.5
    coeff = 2.0 * (2.0 / 3.0 - nu) * 0.25 / 1.5
    assert rate_limit(nu, q) == pytest.approx(
        coeff / math.sqrt(willie_eta(q) / 2.0), rel=1e-13
    )
    with pytest.raises(ValueError):
        rate_limit(0.2, 0.5)
    with pytest.raises(ValueError):
        rate_limit(0.05, 0.0)


def test_rate_report_is_internally_consistent():
    s = ScheduleParams(10**5, 0.05)
    rep = rate_report(s, 0.5, eps=0.05)
    assert rep.n == s.n and rep.q == 0.5 and rep.eps == 0.05
    assert rep.alpha_n == s.alpha_n
    dvq = dvq_exact(s.alpha_n, 0.5)
    assert rep.logM_finite == pytest.approx(
        finite_blocklength_logM(s.n, 0.05, dvq), rel=1e-14
    )
    assert rep.logM_asymptotic == pytest.approx(asymptotic_logM(s, 0.5), rel=1e-14)
    assert rep.covert_rate_L == pytest.approx(
        covert_rate(rep.logM_finite, s.n, rep.willie_div_total), rel=1e-14
    )
    assert rep.capacity_lb == pytest.approx(CAPACITY_PIN_Q05, rel=1e-12)


def test_finite_rate_convergence_approaches_limit():
    s = ScheduleParams(10**7, 0.05)
    rep = finite_rate_convergence(s, 0.5, points=4, ratio=10)
    assert rep.blocklengths == (10**4, 10**5, 10**6, 10**7)
    # the finite-n rate climbs toward the limit and may overshoot it once
    # the exact divergence's surplus over its leading form dominates the
    # remaining finite-n deficits; the overshoot decays only
    # logarithmically, so assert closeness rather than a sign
    assert list(rep.rates) == sorted(rep.rates)
    assert abs(rep.gaps[-1]) < abs(rep.gaps[0]) / 5.0
    assert abs(rep.gaps[-1]) < 0.05 * rep.limit
    assert rep.limit == pytest.approx(rate_limit(0.05, 0.5), rel=1e-14)


def test_finite_rate_convergence_small_grid_dedup():
    rep = finite_rate_convergence(ScheduleParams(20, 0.05), 0.5, points=4, ratio=10)
    assert rep.blocklengths == (2, 20)
    with pytest.raises(ValueError):
        finite_rate_convergence(ScheduleParams(100, 0.05), 0.5, points=0)
    with pytest.raises(ValueError):
        finite_rate_convergence(ScheduleParams(100, 0.05), 0.5, ratio=1)
