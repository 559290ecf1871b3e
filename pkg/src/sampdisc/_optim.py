"""Batched projected-gradient extremizer for ratios of weighted q-sums.

Objectives have the form ``R(theta) = W_num(theta) / W_den(theta)`` with
``W(theta) = sum_t w_t |(A theta)_t|^q`` for a complex node matrix ``A``
over a real parameter vector ``theta``. The map from parameters to
coefficients (complex span or real-valued subspace) is baked into ``A``.
"""

from __future__ import annotations

import numpy as np

from .index_sets import IndexSet
from .trig_poly import negation_permutation

_TINY = 1e-300


def complex_parameter_map(n: int) -> np.ndarray:
    """Map real (2N,) parameters onto complex coefficients: ``[I, iI]``."""
    eye = np.eye(n)
    return np.concatenate([eye, 1j * eye], axis=1)


def real_parameter_map(support: IndexSet) -> np.ndarray:
    """Orthonormal map from real parameters onto conjugate-symmetric coefficients.

    One column per real degree of freedom: the constant, then
    ``sqrt(2) cos(<k, x>)`` and ``sqrt(2) sin(<k, x>)`` for each ``{k, -k}``
    pair. Columns are orthonormal in the coefficient inner product.
    """
    perm = negation_permutation(support)
    if perm is None:
        raise ValueError("real parameterization needs a negation-symmetric support")
    cols = []
    root_half = 1.0 / np.sqrt(2.0)
    for i, k in enumerate(support):
        neg = tuple(-v for v in k)
        if k == neg:
            col = np.zeros(support.N, dtype=np.complex128)
            col[i] = 1.0
            cols.append(col)
        elif k > neg:
            j = int(perm[i])
            cos_col = np.zeros(support.N, dtype=np.complex128)
            cos_col[i] = root_half
            cos_col[j] = root_half
            sin_col = np.zeros(support.N, dtype=np.complex128)
            sin_col[i] = -1j * root_half
            sin_col[j] = 1j * root_half
            cols.append(cos_col)
            cols.append(sin_col)
    return np.stack(cols, axis=1)


def qsum_values(A: np.ndarray, w: np.ndarray, theta: np.ndarray, q: float) -> np.ndarray:
    """``sum_t w_t |(A theta)_t|^q`` per column of ``theta``."""
    mags = np.abs(A @ theta)
    return w @ mags ** q


def qsum_gradients(A: np.ndarray, w: np.ndarray, theta: np.ndarray, q: float) -> np.ndarray:
    """Gradient of :func:`qsum_values` with respect to the real parameters."""
    F = A @ theta
    mags = np.abs(F)
    if q < 2.0:
        # Subgradient convention at zeros: contribute nothing.
        with np.errstate(divide="ignore"):
            power = np.where(mags > _TINY, mags ** (q - 2.0), 0.0)
    else:
        power = mags ** (q - 2.0)
    u = (w[:, None] * power) * F
    return q * np.real(A.conj().T @ u)


def extremize_ratio(A_num: np.ndarray, w_num: np.ndarray,
                    A_den: np.ndarray, w_den: np.ndarray,
                    q: float, theta0: np.ndarray, steps: int = 200,
                    maximize: bool = True, momentum: float = 0.9,
                    step_init: float = 0.2, max_backtracks: int = 14,
                    stall_limit: int = 8) -> tuple[np.ndarray, np.ndarray]:
    """Projected gradient ascent/descent on ``W_num / W_den`` from a batch of starts.

    ``theta0`` has shape (P, R); each column is one restart. Iterates are
    renormalized to ``W_den = 1`` so the tracked numerator equals the
    ratio. Per-column adaptive step sizes with backtracking keep every
    accepted move an improvement, so returned values are the best seen.

    Returns (values, thetas): the final ratio and parameters per restart.
    """
    sign = 1.0 if maximize else -1.0
    theta = np.array(theta0, dtype=float, copy=True)
    if theta.ndim == 1:
        theta = theta[:, None]

    def normalize(t: np.ndarray) -> np.ndarray:
        den = qsum_values(A_den, w_den, t, q)
        den = np.where(den > 0.0, den, 1.0)
        return t / den ** (1.0 / q)

    theta = normalize(theta)
    value = qsum_values(A_num, w_num, theta, q)
    n_restarts = theta.shape[1]
    alpha = np.full(n_restarts, step_init)
    velocity = np.zeros_like(theta)
    stall = np.zeros(n_restarts, dtype=int)

    for _ in range(int(steps)):
        active_any = stall < stall_limit
        if not np.any(active_any):
            break
        g_num = qsum_gradients(A_num, w_num, theta, q)
        g_den = qsum_gradients(A_den, w_den, theta, q)
        grad = sign * (g_num - value[None, :] * g_den)
        norms = np.linalg.norm(grad, axis=0)
        direction = grad / np.maximum(norms, 1e-30)[None, :]
        velocity = momentum * velocity + direction
        improved = np.zeros(n_restarts, dtype=bool)
        done = ~active_any
        trial_dir = velocity.copy()
        # Backtrack on failure, then keep doubling along the same direction
        # while it still improves (an approximate exact line search).
        for _ in range(max_backtracks):
            pending = ~done
            if not np.any(pending):
                break
            candidate = normalize(theta + alpha[None, :] * trial_dir)
            cand_value = qsum_values(A_num, w_num, candidate, q)
            accept = pending & (sign * cand_value > sign * value + 1e-15 * np.abs(value))
            if np.any(accept):
                theta[:, accept] = candidate[:, accept]
                value[accept] = cand_value[accept]
                alpha[accept] *= 2.0
                improved |= accept
            failed = pending & ~accept
            grew = failed & improved          # a growth probe stopped paying off
            alpha[grew] *= 0.5
            done |= grew
            fresh = failed & ~improved        # never accepted: shrink, drop momentum
            alpha[fresh] *= 0.5
            trial_dir[:, fresh] = direction[:, fresh]
            velocity[:, fresh] = direction[:, fresh]
            done |= fresh & (alpha < 1e-17)
        stall = np.where(improved, 0, stall + 1)
    return value, theta
