r"""Continuous and discrete norms under the normalized torus measure.

``L_q`` norms are integrals against ``(2*pi)^{-d} dx``, evaluated by the
tensor rectangle rule on equispaced grids. For even integer ``q`` the
integrand ``|f|^q`` is itself a trigonometric polynomial, so any grid
exceeding its bandwidth integrates it exactly; other exponents get a
Richardson-style error bound from comparing two grid resolutions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .index_sets import BudgetError
from .trig_poly import TrigPolynomial, evaluate, evaluate_on_grid

#: Default per-axis grid oversampling for non-even exponents.
DEFAULT_OVERSAMPLING = 4

#: Default cap on total quadrature nodes.
DEFAULT_NODE_BUDGET = 2 ** 24


@dataclass
class NormResult:
    """A norm value plus how it was computed.

    ``error_bound`` is set for ``riemann_grid`` results; exact methods
    carry a bound of zero or none at all.
    """

    value: float
    method: str
    grid_info: tuple[int, ...] | None = None
    error_bound: float | None = None

    def to_json(self) -> str:
        payload = {
            "value": self.value,
            "method": self.method,
            "grid_info": list(self.grid_info) if self.grid_info is not None else None,
            "error_bound": self.error_bound,
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "NormResult":
        data = json.loads(text)
        grid = tuple(data["grid_info"]) if data.get("grid_info") else None
        return cls(float(data["value"]), str(data["method"]), grid,
                   data.get("error_bound"))


def l2_norm(f: TrigPolynomial) -> NormResult:
    """Exact ``L_2`` norm: ``sqrt(sum |c_k|^2)`` by orthonormality."""
    return NormResult(float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2))), "parseval")


def quadrature_sizes(max_degrees: Sequence[int], q: float,
                     oversampling: int = DEFAULT_OVERSAMPLING) -> tuple[tuple[int, ...], bool]:
    """Per-axis grid sizes for integrating ``|f|^q``, and whether that is exact.

    The base grid has ``oversampling * (2*M_j + 1)`` nodes per axis. For
    even integer ``q`` the sizes are enlarged to exceed the bandwidth
    ``q * M_j`` of ``|f|^q``, which makes the rectangle rule exact.
    """
    ovs = int(oversampling)
    if ovs < 2:
        raise ValueError("oversampling must be at least 2")
    degrees = [int(m) for m in max_degrees]
    base = [ovs * (2 * m + 1) for m in degrees]
    even = (q == round(q)) and int(round(q)) % 2 == 0
    if even:
        qi = int(round(q))
        sizes = tuple(max(b, qi * m + 1) for b, m in zip(base, degrees))
        return sizes, True
    return tuple(base), False


def _grid_q_mean(f: TrigPolynomial, sizes: Sequence[int], q: float,
                 node_budget: int) -> float:
    total = int(np.prod([int(g) for g in sizes]))
    if total > node_budget:
        raise BudgetError(f"quadrature grid of {total} nodes exceeds the budget of {node_budget}")
    values = evaluate_on_grid(f, sizes)
    return float(np.mean(np.abs(values) ** q))


def lq_norm(f: TrigPolynomial, q: float, oversampling: int = DEFAULT_OVERSAMPLING,
            method: str = "auto", node_budget: int = DEFAULT_NODE_BUDGET) -> NormResult:
    """``L_q`` norm by tensor rectangle rule.

    Args:
        f: the polynomial.
        q: exponent, finite and >= 1 (use :func:`sup_norm` for the uniform norm).
        oversampling: per-axis grid factor (>= 2).
        method: "auto" picks the exact path for even integer q; "riemann"
            forces the two-grid estimate with an error bound.

    Returns:
        A :class:`NormResult` tagged ``exact_grid_even_q`` or ``riemann_grid``.
    """
    q = float(q)
    if not math.isfinite(q) or q < 1.0:
        raise ValueError("q must be finite and at least 1")
    if method not in ("auto", "riemann"):
        raise ValueError("method must be 'auto' or 'riemann'")
    degrees = f.support.max_degrees
    sizes, exact = quadrature_sizes(degrees, q, oversampling)
    if exact and method == "auto":
        value = _grid_q_mean(f, sizes, q, node_budget) ** (1.0 / q)
        return NormResult(value, "exact_grid_even_q", sizes, 0.0)
    coarse, _ = quadrature_sizes(degrees, q, oversampling)
    fine, _ = quadrature_sizes(degrees, q, 2 * int(oversampling))
    v1 = _grid_q_mean(f, coarse, q, node_budget) ** (1.0 / q)
    v2 = _grid_q_mean(f, fine, q, node_budget) ** (1.0 / q)
    bound = max(abs(v1 - v2), 8.0 * np.finfo(float).eps * max(v1, v2))
    return NormResult(v1, "riemann_grid", coarse, bound)


def _golden_axis_max(f: TrigPolynomial, x: np.ndarray, axis: int, halfwidth: float,
                     best: float, iterations: int = 16) -> tuple[np.ndarray, float]:
    # Golden-section ascent of |f| along one coordinate; keeps the running max.
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    lo, hi = -halfwidth, halfwidth

    def at(t: float) -> float:
        probe = x.copy()
        probe[axis] += t
        return abs(evaluate(f, probe))

    a, b = lo + (1 - invphi) * (hi - lo), lo + invphi * (hi - lo)
    fa, fb = at(a), at(b)
    best_t, best_v = (a, fa) if fa >= fb else (b, fb)
    for _ in range(iterations):
        if fa < fb:
            lo, a, fa = a, b, fb
            b = lo + invphi * (hi - lo)
            fb = at(b)
        else:
            hi, b, fb = b, a, fa
            a = lo + (1 - invphi) * (hi - lo)
            fa = at(a)
        cand_t, cand_v = (a, fa) if fa >= fb else (b, fb)
        if cand_v > best_v:
            best_t, best_v = cand_t, cand_v
    if best_v > best:
        out = x.copy()
        out[axis] += best_t
        return out, float(best_v)
    return x, best


def sup_norm(f: TrigPolynomial, refinement_levels: int = 3,
             oversampling: int = 4) -> NormResult:
    """Grid maximum of ``|f|`` with local coordinate-wise golden-section ascent.

    The value is a certified lower bound of the uniform norm (a maximum
    over finitely many evaluated points) and is nondecreasing in the
    number of refinement levels.
    """
    ovs = max(int(oversampling), 4)
    sizes = tuple(ovs * (2 * int(m) + 1) for m in f.support.max_degrees)
    values = np.abs(evaluate_on_grid(f, sizes))
    flat = int(np.argmax(values))
    best = float(values.flat[flat])
    node = np.unravel_index(flat, sizes)
    x = np.asarray([2.0 * np.pi * t / g for t, g in zip(node, sizes)], dtype=float)
    halfwidths = np.asarray([2.0 * np.pi / g for g in sizes], dtype=float)
    for _ in range(max(int(refinement_levels), 0)):
        for axis in range(f.d):
            x, best = _golden_axis_max(f, x, axis, halfwidths[axis], best)
        halfwidths *= 0.25
    return NormResult(best, "grid_max", sizes)


def discrete_lq(f: TrigPolynomial, points, q: float) -> NormResult:
    """Equal-weight discrete norm ``((1/m) sum_j |f(x_j)|^q)^(1/q)``.

    ``points`` may be a PointSet or an (m, d) array; ``q = inf`` gives the
    maximum of ``|f|`` over the points.
    """
    pts = getattr(points, "points", points)
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if pts.shape[0] == 0:
        raise ValueError("point set must be nonempty")
    mags = np.abs(evaluate(f, pts))
    if math.isinf(q):
        return NormResult(float(np.max(mags)), "discrete")
    q = float(q)
    if q < 1.0:
        raise ValueError("q must be at least 1 (or inf)")
    return NormResult(float(np.mean(mags ** q) ** (1.0 / q)), "discrete")


def vector_norm_ratio(v, a: float) -> float:
    """Ratio of the max norm to the normalized ``a*log(s)``-mean norm of ``v``."""
    vec = np.abs(np.asarray(v, dtype=float)).reshape(-1)
    s = vec.size
    if s < 2:
        raise ValueError("vector must have at least 2 entries")
    if a <= 1.0:
        raise ValueError("a must exceed 1")
    peak = float(vec.max())
    if peak == 0.0:
        return 0.0
    p = a * math.log(s)
    mean = float(np.mean((vec / peak) ** p))
    return mean ** (-1.0 / p)


def vector_norm_inequality_check(v, a: float, rel_tol: float = 1e-12) -> bool:
    """Check ``max|v_j| <= e^(1/a) * ((1/s) sum |v_j|^(a log s))^(1/(a log s))``.

    The constant ``e^(1/a)`` comes from ``max <= s^(1/p) * mean-norm`` with
    ``p = a log s`` and ``s^(1/p) = e^(1/a)``; the tolerance absorbs
    floating-point ties on the extremal vectors.
    """
    return vector_norm_ratio(v, a) <= math.exp(1.0 / a) * (1.0 + rel_tol)
