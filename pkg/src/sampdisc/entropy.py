r"""Entropy number estimation for unit balls of polynomial spaces.

All statements are made on a finite cloud of unit-norm samples. The
packing bound is rigorous: if ``2^k + 1`` cloud points are pairwise more
than ``2 * eps`` apart, then no ``2^k``-ball covering of any superset of
the cloud has radius below ``eps``. The covering estimate is the greedy
covering radius of the cloud itself and is only a heuristic for the ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import norms
from .index_sets import BudgetError, IndexSet, dyadic_block
from .trig_poly import TrigPolynomial, basis_matrix, grid_nodes, negation_permutation

#: Default number of cloud samples.
DEFAULT_CLOUD_BUDGET = 4096

#: Soft cap on (samples x metric nodes) table entries.
DEFAULT_TABLE_BUDGET = 50_000_000


@dataclass
class BallCloud:
    """Unit-sphere samples of a polynomial space with a sup-type metric.

    ``coeffs[:, i]`` is the i-th sample, normalized to unit ``L_q`` norm;
    ``values[i, t]`` caches its value at the t-th metric node, so the
    distance between samples is a max over cached columns.
    """

    Q: IndexSet
    q: float
    real_flag: bool
    coeffs: np.ndarray
    values: np.ndarray
    metric: str
    _greedy_cache: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return int(self.values.shape[0])

    def distance(self, i: int, j: int) -> float:
        return float(np.max(np.abs(self.values[i] - self.values[j])))

    def sample(self, i: int) -> TrigPolynomial:
        return TrigPolynomial(self.Q, self.coeffs[:, i], real_flag=self.real_flag)


def _structured_coefficients(Q: IndexSet, real_flag: bool) -> list[np.ndarray]:
    cols: list[np.ndarray] = []
    N = Q.N
    if real_flag:
        perm = negation_permutation(Q)
        if perm is None:
            raise ValueError("a real-valued cloud needs a negation-symmetric support")
        for i, k in enumerate(Q):
            neg = tuple(-v for v in k)
            if k == neg:
                c = np.zeros(N, complex)
                c[i] = 1.0
                cols.append(c)
            elif k > neg:
                cos_c = np.zeros(N, complex)
                cos_c[i] = 0.5
                cos_c[perm[i]] = 0.5
                sin_c = np.zeros(N, complex)
                sin_c[i] = -0.5j
                sin_c[perm[i]] = 0.5j
                cols.append(cos_c)
                cols.append(sin_c)
    else:
        for i in range(N):
            c = np.zeros(N, complex)
            c[i] = 1.0
            cols.append(c)
    cols.append(np.ones(N, complex))
    levels = sorted({tuple(_level_of(k)) for k in Q})
    for s in levels:
        block = dyadic_block(s)
        mask = np.asarray([k in block for k in Q], bool)
        if mask.any():
            c = np.zeros(N, complex)
            c[mask] = 1.0
            cols.append(c)
    return cols


def _level_of(k: Sequence[int]) -> tuple[int, ...]:
    return tuple(0 if v == 0 else abs(int(v)).bit_length() for v in k)


def build_cloud(Q: IndexSet, q: float, budget: int = DEFAULT_CLOUD_BUDGET,
                seed: int = 0, metric: str = "sup_grid", real_flag: bool = True,
                oversampling: int = 4, points=None,
                table_budget: int = DEFAULT_TABLE_BUDGET) -> BallCloud:
    """Sample the unit sphere of the space: structured seeds plus random fill.

    ``metric`` is either ``"sup_grid"`` (an oversampled tensor grid, a
    fine proxy for the uniform norm) or ``"sup_points"`` (the max over a
    caller-supplied point set). Exact duplicate samples are dropped.
    """
    if budget < 2:
        raise ValueError("cloud budget must be at least 2")
    if Q.N == 0:
        raise ValueError("frequency set must be nonempty")
    q = float(q)
    rng = np.random.default_rng(seed)

    cols = _structured_coefficients(Q, real_flag)[:budget]
    perm = negation_permutation(Q) if real_flag else None
    while len(cols) < budget:
        if real_flag:
            # Symmetrized real part plus antisymmetrized imaginary part
            # keeps the sample real-valued.
            raw = rng.standard_normal(Q.N)
            imag = rng.standard_normal(Q.N)
            c = (raw + raw[perm]) / 2.0 + 0.5j * (imag - imag[perm])
        else:
            c = (rng.standard_normal(Q.N) + 1j * rng.standard_normal(Q.N)) / np.sqrt(2.0)
        cols.append(c)
    C = np.stack(cols, axis=1)

    if metric == "sup_grid":
        sizes = tuple(max(int(oversampling), 4) * (2 * int(m) + 1) for m in Q.max_degrees)
        nodes = grid_nodes(sizes)
        metric_tag = f"sup_grid({','.join(map(str, sizes))})"
    elif metric == "sup_points":
        if points is None:
            raise ValueError("sup_points metric needs a point set")
        nodes = np.atleast_2d(np.asarray(getattr(points, "points", points), float))
        metric_tag = f"sup_points(s={nodes.shape[0]})"
    else:
        raise ValueError(f"unknown metric {metric!r}")
    if C.shape[1] * nodes.shape[0] > table_budget:
        raise BudgetError("cloud value table exceeds the configured budget")

    phi = basis_matrix(Q, nodes)                      # (T, N)
    # Normalize every sample to unit L_q norm on the shared quadrature grid.
    sizes_q, _ = norms.quadrature_sizes(Q.max_degrees, q, max(int(oversampling), 2))
    quad_nodes = grid_nodes(sizes_q)
    quad_vals = basis_matrix(Q, quad_nodes) @ C       # (Tq, S)
    qnorms = (np.mean(np.abs(quad_vals) ** q, axis=0)) ** (1.0 / q)
    keep = qnorms > 0.0
    C = C[:, keep] / qnorms[keep][None, :]
    values = (phi @ C).T                              # (S, T)

    # Drop exact duplicates, keeping first occurrences.
    seen: set[bytes] = set()
    unique_rows = []
    for i in range(values.shape[0]):
        key = values[i].tobytes()
        if key not in seen:
            seen.add(key)
            unique_rows.append(i)
    idx = np.asarray(unique_rows, dtype=int)
    return BallCloud(Q, q, real_flag, C[:, idx], values[idx], metric_tag)


def _greedy_ordering(cloud: BallCloud, count: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Farthest-point traversal from the first sample.

    Returns (order, radii, pair_dists): selected indices, the covering
    radius of each selection prefix, and pairwise distances among the
    selected points. Results are cached per cloud and extended on demand.
    """
    count = min(int(count), cloud.size)
    cached = cloud._greedy_cache.get("ordering")
    if cached is not None and len(cached[0]) >= count:
        order, radii, pair = cached
        return order[:count], radii[:count], pair[:count, :count]
    order = [0]
    dist_to_set = np.max(np.abs(cloud.values - cloud.values[0][None, :]), axis=1)
    rows = [dist_to_set.copy()]
    radii = [float(dist_to_set.max())]
    while len(order) < count:
        nxt = int(np.argmax(dist_to_set))
        order.append(nxt)
        row = np.max(np.abs(cloud.values - cloud.values[nxt][None, :]), axis=1)
        rows.append(row)
        dist_to_set = np.minimum(dist_to_set, row)
        radii.append(float(dist_to_set.max()))
    order_arr = np.asarray(order, dtype=int)
    pair = np.stack(rows, axis=0)[:, order_arr]
    cloud._greedy_cache["ordering"] = (order_arr, np.asarray(radii), pair)
    return order_arr, np.asarray(radii), pair


@dataclass
class EntropyEstimate:
    """Per-``k`` packing lower bound and covering upper estimate."""

    k: int
    lower: float
    upper_heuristic: float
    centers: list[int]


def packing_lower_bound(cloud: BallCloud, k: int) -> float:
    """Rigorous lower bound: half the minimum pairwise distance among
    ``2^k + 1`` greedily spread cloud points."""
    needed = 2 ** int(k) + 1
    if cloud.size < needed:
        raise ValueError(f"need at least {needed} samples for k = {k}, have {cloud.size}")
    order, _, pair = _greedy_ordering(cloud, needed)
    sub = pair[:needed, :needed]
    off_diag = sub[~np.eye(needed, dtype=bool)]
    return float(off_diag.min()) / 2.0


def covering_upper_estimate(cloud: BallCloud, k: int) -> float:
    """Greedy covering radius of the cloud with ``2^k`` centers (zero once
    every point is a center)."""
    if cloud.size == 0:
        raise ValueError("cloud is empty")
    centers = min(2 ** int(k), cloud.size)
    if centers >= cloud.size:
        return 0.0
    _, radii, _ = _greedy_ordering(cloud, centers)
    return float(radii[centers - 1])


def entropy_ladder(cloud: BallCloud, ks: Sequence[int]) -> list[EntropyEstimate]:
    """Packing and covering estimates for a ladder of ``k`` values."""
    out = []
    for k in ks:
        needed = 2 ** int(k) + 1
        lower = packing_lower_bound(cloud, k) if cloud.size >= needed else 0.0
        upper = covering_upper_estimate(cloud, k)
        order, _, _ = _greedy_ordering(cloud, min(2 ** int(k), cloud.size))
        out.append(EntropyEstimate(int(k), lower, upper, [int(i) for i in order]))
    return out


def default_k_ladder(N: int, cap: int = 256) -> list[int]:
    """Power-of-two ``k`` values ``1, 2, 4, ...`` up to ``min(N, cap)``."""
    ks = []
    k = 1
    while k <= min(N, cap):
        ks.append(k)
        k *= 2
    return ks


def baseline_cross(n: int, N: int, k: int, q: float) -> float:
    """Reference covering-radius shape ``(n * N / k)^(1/q)`` for cross spectra."""
    return (float(n) * N / k) ** (1.0 / q)


def baseline_nikolskii(N: int, k: int, q: float, M: float) -> float:
    """Reference shape ``(log N)^(1/q) * M * N^(-1/q) * (N/k)^(1/q)``."""
    return (math.log(max(N, 2))) ** (1.0 / q) * M * float(N) ** (-1.0 / q) * (N / k) ** (1.0 / q)


def tail_shape_bound(B: float, k: int, N: int) -> float:
    """Reference decay ``6 * B * 2^(-k/N)`` for ``k`` beyond the dimension."""
    return 6.0 * B * 2.0 ** (-k / N)


def compare_bound_shape(estimates: Sequence[EntropyEstimate], q: float, n: int,
                        N: int, M_measured: float, B: float | None = None,
                        factor: float = 4.0) -> tuple[list[dict], list[dict]]:
    """Tabulate normalized estimates against the reference bound shapes.

    Emits one row per ``k`` with ``lower * (k/N)^(1/q)`` (flat in ``k`` when
    the ``(N/k)^(1/q)`` shape holds) and the two baseline curves; packing
    lower bounds exceeding ``factor`` times a baseline are collected as
    violations rather than raised.
    """
    rows, violations = [], []
    for est in estimates:
        normalized = est.lower * (est.k / N) ** (1.0 / q)
        b_cross = baseline_cross(n, N, est.k, q)
        b_nik = baseline_nikolskii(N, est.k, q, M_measured)
        row = {
            "k": est.k,
            "lower": est.lower,
            "upper": est.upper_heuristic,
            "normalized_lower": normalized,
            "baseline_cross": b_cross,
            "baseline_nikolskii": b_nik,
        }
        if B is not None:
            row["B"] = B
        rows.append(row)
        if est.lower > factor * min(b_cross, b_nik):
            violations.append(row)
    return rows, violations


def shape_table_csv(rows: list[dict]) -> str:
    cols = ["k", "lower", "upper", "normalized_lower", "baseline_cross", "baseline_nikolskii"]
    lines = [",".join(cols)]
    for r in rows:
        lines.append(",".join(repr(r[c]) if isinstance(r[c], float) else str(r[c]) for c in cols))
    return "\n".join(lines) + "\n"
