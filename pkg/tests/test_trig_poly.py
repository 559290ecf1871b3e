import numpy as np
import pytest

from sampdisc.index_sets import custom_index_set, step_hyperbolic_cross
from sampdisc.trig_poly import (TrigPolynomial, dyadic_projection, evaluate,
                                evaluate_on_grid, random_polynomial,
                                real_imaginary_parts, shift)

from oracles import eval_double_loop


def _random_points(rng, m, d):
    return rng.uniform(0.0, 2.0 * np.pi, size=(m, d))


def test_constant_polynomial_evaluates_to_one():
    Q = custom_index_set([(0, 0)])
    f = TrigPolynomial(Q, [1.0])
    pts = _random_points(np.random.default_rng(0), 5, 2)
    assert np.allclose(evaluate(f, pts), 1.0)


def test_single_harmonic_at_quarter_turn():
    Q = custom_index_set([(1, 0)])
    f = TrigPolynomial(Q, [1.0])
    value = evaluate(f, np.array([np.pi / 2, 1.2345]))
    assert abs(value - 1j) < 1e-14


def test_evaluate_matches_double_loop_oracle():
    rng = np.random.default_rng(42)
    Q = step_hyperbolic_cross(4, 2)
    keep = rng.choice(Q.N, size=50, replace=False)
    sub = custom_index_set(Q.elements[np.sort(keep)])
    f = random_polynomial(sub, real_flag=False, seed=7)
    pts = _random_points(rng, 10, 2)
    fast = evaluate(f, pts)
    slow = np.array([eval_double_loop(f.coefficient_map(), x) for x in pts])
    assert np.max(np.abs(fast - slow)) <= 1e-12 * np.max(np.abs(slow))


def test_evaluate_dimension_mismatch():
    Q = custom_index_set([(0, 0)])
    f = TrigPolynomial(Q, [1.0])
    with pytest.raises(ValueError):
        evaluate(f, np.zeros((3, 3)))


def test_grid_single_harmonic_gives_roots_of_unity():
    Q = custom_index_set([(1,)])
    f = TrigPolynomial(Q, [1.0])
    vals = evaluate_on_grid(f, (8,))
    expected = np.exp(1j * 2 * np.pi * np.arange(8) / 8)
    assert np.max(np.abs(vals - expected)) < 1e-13


def test_grid_agrees_with_pointwise_evaluation():
    Q = step_hyperbolic_cross(3, 2)
    f = random_polynomial(Q, real_flag=False, seed=11)
    sizes = (2 * 7 + 3, 19)
    vals = evaluate_on_grid(f, sizes)
    from sampdisc.trig_poly import grid_nodes
    direct = evaluate(f, grid_nodes(sizes)).reshape(sizes)
    scale = np.max(np.abs(direct))
    assert np.max(np.abs(vals - direct)) <= 1e-10 * scale


def test_grid_zero_polynomial():
    Q = custom_index_set([(1,), (-1,)])
    f = TrigPolynomial(Q, [0.0, 0.0])
    assert np.all(evaluate_on_grid(f, (8,)) == 0.0)


def test_grid_aliasing_rejected():
    Q = custom_index_set([(3,), (-3,)])
    f = TrigPolynomial(Q, [1.0, 1.0])
    with pytest.raises(ValueError, match="alias"):
        evaluate_on_grid(f, (6,))


def test_random_polynomial_deterministic():
    Q = step_hyperbolic_cross(2, 2)
    f = random_polynomial(Q, real_flag=False, seed=123)
    g = random_polynomial(Q, real_flag=False, seed=123)
    assert np.array_equal(f.coeffs, g.coeffs)
    h = random_polynomial(Q, real_flag=True, seed=5)
    k = random_polynomial(Q, real_flag=True, seed=5)
    assert np.array_equal(h.coeffs, k.coeffs)


def test_random_real_polynomial_is_real_valued():
    Q = step_hyperbolic_cross(3, 1)
    f = random_polynomial(Q, real_flag=True, seed=9)
    pts = _random_points(np.random.default_rng(1), 100, 1)
    vals = evaluate(f, pts)
    assert np.max(np.abs(vals.imag)) <= 1e-10 * np.max(np.abs(vals))


def test_random_polynomial_energy_matches_dimension():
    # E ||f||_2^2 = N for iid standard complex Gaussian coefficients.
    Q = step_hyperbolic_cross(4, 1)
    keep = np.arange(Q.N)[:50]
    sub = custom_index_set(Q.elements[keep])
    energies = [np.sum(np.abs(random_polynomial(sub, False, seed=s).coeffs) ** 2)
                for s in range(1000)]
    assert abs(np.mean(energies) - sub.N) < 0.1 * sub.N


def test_real_imaginary_parts_of_real_input():
    Q = step_hyperbolic_cross(2, 1)
    f = random_polynomial(Q, real_flag=True, seed=3)
    fr, fi = real_imaginary_parts(f)
    assert np.max(np.abs(fi.coeffs)) < 1e-14
    assert fr.real_flag and fi.real_flag


def test_real_imaginary_parts_of_rotated_real_input():
    Q = step_hyperbolic_cross(2, 1)
    g = random_polynomial(Q, real_flag=True, seed=4)
    f = 1j * g
    fr, fi = real_imaginary_parts(f)
    assert np.max(np.abs(fr.coeffs)) < 1e-14
    assert np.max(np.abs(fi.coeffs - g.coeffs)) < 1e-14


def test_split_reconstructs_and_squares():
    rng = np.random.default_rng(8)
    Q = step_hyperbolic_cross(3, 2)
    f = random_polynomial(Q, real_flag=False, seed=21)
    fr, fi = real_imaginary_parts(f)
    pts = _random_points(rng, 20, 2)
    vf = evaluate(f, pts)
    vr = evaluate(fr, pts).real
    vi = evaluate(fi, pts).real
    scale = np.max(np.abs(vf)) ** 2
    assert np.max(np.abs(vf - (vr + 1j * vi))) <= 1e-12 * np.max(np.abs(vf))
    assert np.max(np.abs(np.abs(vf) ** 2 - (vr ** 2 + vi ** 2))) <= 1e-10 * scale


def test_projection_is_identity_on_block_support():
    from sampdisc.index_sets import dyadic_block
    block = dyadic_block((2, 1))
    f = random_polynomial(block, real_flag=False, seed=2)
    p = dyadic_projection(f, (2, 1))
    assert set(p.support) == set(f.support)
    assert np.allclose(sorted(p.coeffs), sorted(f.coeffs))


def test_projections_sum_to_identity_and_parseval():
    import itertools
    Q = step_hyperbolic_cross(4, 2)
    f = random_polynomial(Q, real_flag=False, seed=31)
    total_energy = 0.0
    recombined = {}
    for s in itertools.product(range(5), repeat=2):
        if sum(s) <= 4:
            p = dyadic_projection(f, s)
            total_energy += float(np.sum(np.abs(p.coeffs) ** 2))
            for k, c in p.coefficient_map().items():
                recombined[k] = recombined.get(k, 0.0) + c
    f_energy = float(np.sum(np.abs(f.coeffs) ** 2))
    assert abs(total_energy - f_energy) <= 1e-10 * f_energy
    assert recombined.keys() == f.coefficient_map().keys()
    for k, c in f.coefficient_map().items():
        assert abs(recombined[k] - c) < 1e-14


def test_evaluation_linear_in_coefficients():
    rng = np.random.default_rng(5)
    Q = step_hyperbolic_cross(2, 2)
    f = random_polynomial(Q, real_flag=False, seed=1)
    g = random_polynomial(Q, real_flag=False, seed=2)
    a, b = 1.7 - 0.3j, -0.8 + 2.1j
    combo = TrigPolynomial(Q, a * f.coeffs + b * g.coeffs)
    pts = _random_points(rng, 8, 2)
    lhs = evaluate(combo, pts)
    rhs = a * evaluate(f, pts) + b * evaluate(g, pts)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(rhs))


def test_shift_translates_argument():
    rng = np.random.default_rng(6)
    Q = step_hyperbolic_cross(3, 2)
    f = random_polynomial(Q, real_flag=False, seed=14)
    h = rng.uniform(0, 2 * np.pi, size=2)
    pts = _random_points(rng, 10, 2)
    lhs = evaluate(shift(f, h), pts)
    rhs = evaluate(f, pts + h[None, :])
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * np.max(np.abs(rhs))


def test_conjugate_symmetry_iff_real_values():
    # Forward: symmetric coefficients produce real values (covered above).
    # Backward: breaking the symmetry produces genuinely complex values.
    Q = step_hyperbolic_cross(2, 1)
    f = random_polynomial(Q, real_flag=True, seed=17)
    broken = np.array(f.coeffs)
    broken[0] += 0.5j  # perturb one side of a pair only
    g = TrigPolynomial(Q, broken)
    pts = _random_points(np.random.default_rng(2), 50, 1)
    vals = evaluate(g, pts)
    assert np.max(np.abs(vals.imag)) > 1e-3
    with pytest.raises(ValueError, match="conjugate-symmetric"):
        TrigPolynomial(Q, broken, real_flag=True)


def test_real_flag_requires_symmetric_support():
    Q = custom_index_set([(0,), (1,)])
    with pytest.raises(ValueError, match="symmetric"):
        TrigPolynomial(Q, [1.0, 1.0], real_flag=True)


def test_serialization_roundtrip_exact():
    Q = step_hyperbolic_cross(3, 2)
    for seed, flag in [(1, False), (2, True)]:
        f = random_polynomial(Q, real_flag=flag, seed=seed)
        g = TrigPolynomial.from_text(f.to_text())
        assert g.support == f.support
        assert g.real_flag == flag
        assert np.array_equal(g.coeffs, f.coeffs)
        assert g.to_text() == f.to_text()
