import math

import numpy as np
import pytest

from sampdisc.index_sets import (AnisotropyWeights, custom_index_set,
                                 step_hyperbolic_cross)
from sampdisc.nikolskii import (asymptotic_comparison, comparison_csv,
                                nikolskii_constant, predicted_growth,
                                uniform_bound_from_entropy)
from sampdisc.norms import lq_norm, sup_norm
from sampdisc.trig_poly import evaluate


def _range_set(K):
    return custom_index_set([[k] for k in range(-K, K + 1)])


def test_constant_space_has_unit_constant():
    Q = custom_index_set([(0,)])
    for q in (1.0, 2.0, 4.0):
        est = nikolskii_constant(Q, q, restarts=4, steps=50, seed=0)
        assert abs(est.M_lower - 1.0) < 1e-9


@pytest.mark.parametrize("Q", [_range_set(2), step_hyperbolic_cross(2, 2)])
def test_q2_reaches_sqrt_N(Q):
    est = nikolskii_constant(Q, 2.0, restarts=8, steps=100, seed=0)
    assert est.M_reference == pytest.approx(math.sqrt(Q.N))
    assert abs(est.M_lower - math.sqrt(Q.N)) < 1e-6
    # The optimum has all-equal coefficient magnitudes.
    mags = np.abs(est.witness.coeffs)
    assert np.max(mags) - np.min(mags) < 1e-4


def test_q1_beats_nonnegative_kernel_witness():
    # (1 + cos x) has unit mean and peak 2, so the constant is at least 2.
    Q = _range_set(1)
    est = nikolskii_constant(Q, 1.0, restarts=16, steps=200, seed=0)
    assert est.M_lower >= 2.0 - 1e-9


def test_witness_reproduces_reported_ratio():
    Q = _range_set(2)
    est = nikolskii_constant(Q, 4.0, restarts=8, steps=150, seed=1)
    w = est.witness
    ratio = abs(evaluate(w, np.zeros(1))) / lq_norm(w, 4.0).value
    assert abs(ratio - est.M_lower) < 1e-8
    assert sup_norm(w).value >= abs(evaluate(w, np.zeros(1))) - 1e-9


def test_constant_at_least_one_without_zero_frequency():
    Q = custom_index_set([(1,), (-1,)])
    est = nikolskii_constant(Q, 2.0, restarts=8, steps=100, seed=0)
    assert est.M_lower >= 1.0 - 1e-9


def test_monotone_in_support_with_warm_start():
    small = step_hyperbolic_cross(2, 1)
    large = step_hyperbolic_cross(3, 1)
    est_small = nikolskii_constant(small, 4.0, restarts=8, steps=150, seed=2)
    embedded = np.zeros(large.N, dtype=np.complex128)
    index = {k: i for i, k in enumerate(large)}
    for k, c in zip(small, est_small.witness.coeffs):
        embedded[index[k]] = c
    est_large = nikolskii_constant(large, 4.0, restarts=8, steps=150, seed=2,
                                   warm_start=embedded)
    assert est_small.M_lower <= est_large.M_lower + 1e-8


def test_monotone_in_exponent_via_warm_start():
    Q = step_hyperbolic_cross(2, 1)
    est4 = nikolskii_constant(Q, 4.0, restarts=8, steps=150, seed=3)
    est2 = nikolskii_constant(Q, 2.0, restarts=8, steps=150, seed=3,
                              warm_start=est4.witness.coeffs)
    est1 = nikolskii_constant(Q, 1.0, restarts=8, steps=150, seed=3,
                              warm_start=est2.witness.coeffs)
    assert est1.M_lower >= est2.M_lower - 1e-8
    assert est2.M_lower >= est4.M_lower - 1e-8


def test_predicted_growth_formula():
    assert predicted_growth(4, 4.0, 1) == pytest.approx(2.0)
    assert predicted_growth(2, 4.0, 2) == pytest.approx(2 ** 0.5 * 2 ** 0.75)
    with pytest.raises(ValueError):
        predicted_growth(0, 4.0, 1)


def test_asymptotic_comparison_bounded_ratio_d1():
    gamma = AnisotropyWeights.ones(1)
    rows = asymptotic_comparison(1, gamma, 4.0, (2, 6), restarts=8, steps=120, seed=0)
    ratios = [r["ratio"] for r in rows]
    assert all(np.isfinite(ratios))
    assert max(ratios) / min(ratios) < 10.0


def test_asymptotic_comparison_monotone_measurements_d2():
    gamma = AnisotropyWeights.ones(2)
    # Oversampling 2 keeps the even-q quadrature exact while shrinking grids.
    rows = asymptotic_comparison(2, gamma, 4.0, (2, 4), restarts=8, steps=120,
                                 seed=1, oversampling=2)
    measured = [r["M_lower"] for r in rows]
    assert all(measured[i + 1] >= measured[i] - 1e-8 for i in range(len(measured) - 1))


def test_asymptotic_comparison_validates_inputs():
    gamma = AnisotropyWeights.ones(1)
    with pytest.raises(ValueError):
        asymptotic_comparison(1, gamma, 2.0, (2, 4))
    with pytest.raises(ValueError):
        asymptotic_comparison(2, gamma, 4.0, (2, 4))


def test_comparison_csv_header():
    gamma = AnisotropyWeights.ones(1)
    rows = asymptotic_comparison(1, gamma, 4.0, (2, 3), restarts=4, steps=60, seed=0)
    text = comparison_csv(rows)
    assert text.splitlines()[0] == "n,N,M_lower,predicted,ratio"
    assert len(text.strip().splitlines()) == 3


def test_entropy_consistency_diagnostic():
    # Cross-check against a one-ball covering estimate of the unit ball;
    # the covering side is heuristic, so violations are logged rather than
    # asserted.
    from sampdisc.entropy import build_cloud, covering_upper_estimate
    Q = step_hyperbolic_cross(2, 1)
    q = 4.0
    est = nikolskii_constant(Q, q, restarts=8, steps=120, seed=4)
    cloud = build_cloud(Q, q, budget=128, seed=4)
    eps1 = covering_upper_estimate(cloud, 1)
    bound = uniform_bound_from_entropy(eps1, Q.N, q, slack=0.5)
    if est.M_lower > bound:
        print(f"diagnostic: measured constant {est.M_lower:.4g} exceeds "
              f"heuristic covering bound {bound:.4g}")
