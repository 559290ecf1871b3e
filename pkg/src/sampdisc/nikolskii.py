r"""Witness-based estimates of the uniform-vs-``L_q`` norm constant.

For a frequency set ``Q`` the constant of interest is
``M(Q, q) = sup { ||f||_inf / ||f||_q }`` over nonzero polynomials spanned
by ``Q``. The space is translation invariant, so the supremum of ``|f(x)|``
may be taken at ``x = 0``, turning the problem into a coefficient-space
ratio maximization. At ``q = 2`` the answer is ``sqrt(N)``, attained by
equal coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import norms
from ._optim import complex_parameter_map, extremize_ratio, real_parameter_map
from .index_sets import AnisotropyWeights, IndexSet, anisotropic_cross
from .trig_poly import TrigPolynomial, basis_matrix, grid_nodes


@dataclass
class NikolskiiEstimate:
    q: float
    M_lower: float
    M_reference: float | None
    witness: TrigPolynomial


def nikolskii_constant(Q: IndexSet, q: float, restarts: int = 32, steps: int = 200,
                       seed: int = 0, real: bool = False,
                       oversampling: int = norms.DEFAULT_OVERSAMPLING,
                       warm_start: np.ndarray | None = None) -> NikolskiiEstimate:
    """Maximize ``|f(0)| / ||f||_q`` by projected gradient ascent.

    Half the restarts start from the equal-coefficient polynomial (the
    exact optimum at ``q = 2``), half from random coefficients; a
    ``warm_start`` coefficient vector adds one more start. The result is a
    certified lower bound on the constant with the attaining witness.
    """
    q = float(q)
    if not math.isfinite(q) or q < 1.0:
        raise ValueError("q must be finite and at least 1")
    if Q.N == 0:
        raise ValueError("frequency set must be nonempty")
    S = real_parameter_map(Q) if real else complex_parameter_map(Q.N)
    P = S.shape[1]
    origin = np.zeros((1, Q.d))
    A_num = basis_matrix(Q, origin) @ S
    w_num = np.ones(1)
    sizes, _ = norms.quadrature_sizes(Q.max_degrees, q, oversampling)
    nodes = grid_nodes(sizes)
    A_den = basis_matrix(Q, nodes) @ S
    w_den = np.full(nodes.shape[0], 1.0 / nodes.shape[0])

    rng = np.random.default_rng(seed)
    equal = _project_coefficients(S, np.ones(Q.N, dtype=np.complex128))
    n_equal = max(restarts // 2, 1)
    cols = [equal]
    for _ in range(n_equal - 1):
        cols.append(equal + 0.05 * rng.standard_normal(P))
    while len(cols) < restarts:
        cols.append(rng.standard_normal(P))
    if warm_start is not None:
        cols.append(_project_coefficients(S, np.asarray(warm_start, np.complex128)))
    theta0 = np.stack(cols, axis=1)

    values, thetas = extremize_ratio(A_num, w_num, A_den, w_den, q, theta0,
                                     steps=steps, maximize=True)
    best = int(np.argmax(values))
    m_lower = float(values[best]) ** (1.0 / q)
    witness = TrigPolynomial(Q, S @ thetas[:, best], real_flag=real)
    reference = math.sqrt(Q.N) if q == 2.0 else None
    return NikolskiiEstimate(q, m_lower, reference, witness)


def _project_coefficients(S: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    # Least-squares parameters reproducing the coefficients; exact when the
    # coefficients lie in the parameterized (sub)space.
    theta, *_ = np.linalg.lstsq(
        np.concatenate([S.real, S.imag], axis=0),
        np.concatenate([coeffs.real, coeffs.imag]),
        rcond=None,
    )
    return theta


def predicted_growth(n: int, q: float, nu: int) -> float:
    """Reference growth ``2^(n/q) * n^((nu-1)(1-1/q))`` for cross spectra."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return 2.0 ** (n / q) * float(n) ** ((nu - 1) * (1.0 - 1.0 / q))


def asymptotic_comparison(nu: int, gamma: AnisotropyWeights, q: float,
                          n_range: tuple[int, int], restarts: int = 16,
                          steps: int = 150, seed: int = 0,
                          oversampling: int = norms.DEFAULT_OVERSAMPLING,
                          element_budget: int = 10 ** 6) -> list[dict]:
    """Measured constants against the predicted growth over a range of ``n``.

    Each row carries ``n, N, M_lower, predicted, ratio``; the witness of
    one level warm-starts the next (the spectra are nested, so the
    constant is monotone in ``n``). Only the boundedness of the ratio
    column is meaningful: the growth reference has an unknown constant.
    """
    if q <= 2.0:
        raise ValueError("the growth comparison needs q > 2")
    if gamma.nu != nu:
        raise ValueError(f"weights have nu = {gamma.nu}, expected {nu}")
    lo, hi = int(n_range[0]), int(n_range[1])
    if lo < 1 or hi < lo:
        raise ValueError("n_range must be an interval of positive integers")
    rows: list[dict] = []
    warm: np.ndarray | None = None
    warm_support: IndexSet | None = None
    for n in range(lo, hi + 1):
        Q = anisotropic_cross(n, gamma, element_budget=element_budget)
        warm_here = None
        if warm is not None and warm_support is not None:
            embedded = np.zeros(Q.N, dtype=np.complex128)
            index = {k: i for i, k in enumerate(Q)}
            for k, c in zip(warm_support, warm):
                embedded[index[k]] = c
            warm_here = embedded
        est = nikolskii_constant(Q, q, restarts=restarts, steps=steps,
                                 seed=seed + n, oversampling=oversampling,
                                 warm_start=warm_here)
        predicted = predicted_growth(n, q, nu)
        rows.append({
            "n": n,
            "N": Q.N,
            "M_lower": est.M_lower,
            "predicted": predicted,
            "ratio": est.M_lower / predicted,
        })
        warm, warm_support = est.witness.coeffs, Q
    return rows


def comparison_csv(rows: list[dict]) -> str:
    lines = ["n,N,M_lower,predicted,ratio"]
    for r in rows:
        lines.append(f"{r['n']},{r['N']},{r['M_lower']!r},{r['predicted']!r},{r['ratio']!r}")
    return "\n".join(lines) + "\n"


def uniform_bound_from_entropy(eps1_upper: float, N: int, q: float,
                               slack: float = 0.5) -> float:
    """Bound implied by a one-ball covering estimate of the unit ball.

    A covering of the unit ball by a single ball of radius ``eps`` in the
    uniform norm forces ``M <= 4 * eps * N^(1/q)``; the slack widens the
    check because the covering estimate is heuristic.
    """
    return 4.0 * eps1_upper * float(N) ** (1.0 / q) * (1.0 + slack)
