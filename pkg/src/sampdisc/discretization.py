r"""Point sets, two-sided sampling constants, and minimal-budget search.

The central object is the pair of constants ``(C1, C2)`` in

    C1 * ||f||_q^q  <=  (1/m) * sum_j |f(x_j)|^q  <=  C2 * ||f||_q^q

over all polynomials spanned by a frequency set. For ``q = 2`` the
constants are the extreme eigenvalues of the normalized sampled Gram
matrix and are exact; for other exponents they are witness-based one-sided
bounds found by projected gradient search.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import norms
from ._optim import complex_parameter_map, extremize_ratio, real_parameter_map
from .index_sets import BudgetError, IndexSet
from .trig_poly import TrigPolynomial, basis_matrix, grid_nodes, wrap_torus

DEFAULT_TARGET = (0.5, 1.5)


@dataclass
class PointSet:
    """Sample locations on the torus with a record of how they were drawn."""

    points: np.ndarray
    generator: str = "custom"

    def __post_init__(self) -> None:
        pts = wrap_torus(np.atleast_2d(np.asarray(self.points, dtype=float)))
        if pts.shape[0] < 1:
            raise ValueError("a point set needs at least one point")
        self.points = pts

    @property
    def m(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])


def uniform_random_points(m: int, d: int, seed: int) -> PointSet:
    """``m`` iid uniform points on ``[0, 2*pi)^d``, deterministic per seed."""
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, 2.0 * np.pi, size=(int(m), int(d)))
    return PointSet(pts, generator=f"uniform_random(seed={seed})")


def equispaced_grid_points(sizes: Sequence[int]) -> PointSet:
    """Full tensor grid with the given per-axis sizes."""
    sizes = tuple(int(g) for g in sizes)
    if any(g < 1 for g in sizes):
        raise ValueError("grid sizes must be positive")
    label = ",".join(str(g) for g in sizes)
    return PointSet(grid_nodes(sizes), generator=f"equispaced_grid({label})")


def subsampled_grid_points(sizes: Sequence[int], m: int, seed: int) -> PointSet:
    """``m`` nodes drawn without replacement from a tensor grid."""
    sizes = tuple(int(g) for g in sizes)
    total = int(np.prod(sizes))
    if m > total:
        raise ValueError(f"cannot draw {m} nodes from a grid of {total}")
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(total, size=int(m), replace=False))
    pts = grid_nodes(sizes)[chosen]
    label = ",".join(str(g) for g in sizes)
    return PointSet(pts, generator=f"subsampled_grid({label};m={m};seed={seed})")


def generate_points(kind: str, m: int, d: int, seed: int | None = None,
                    sizes: Sequence[int] | None = None) -> PointSet:
    """Dispatch on the generator kind: ``uniform_random``, ``equispaced_grid``
    or ``subsampled_grid``.

    For ``equispaced_grid`` without explicit sizes, ``m`` must factor as a
    perfect ``d``-th power; for ``subsampled_grid`` the parent grid defaults
    to the smallest equal-per-axis grid holding at least ``4 * m`` nodes.
    """
    m, d = int(m), int(d)
    if m < 1:
        raise ValueError("m must be at least 1")
    if kind == "uniform_random":
        if seed is None:
            raise ValueError("uniform_random needs a seed")
        return uniform_random_points(m, d, seed)
    if kind == "equispaced_grid":
        if sizes is None:
            if d == 1:
                sizes = (m,)
            else:
                g = round(m ** (1.0 / d))
                if g ** d != m:
                    raise ValueError(
                        f"equispaced_grid in dimension {d} needs m to be a perfect {d}-th power"
                    )
                sizes = (g,) * d
        if int(np.prod([int(g) for g in sizes])) != m:
            raise ValueError("grid sizes do not multiply to m")
        return equispaced_grid_points(sizes)
    if kind == "subsampled_grid":
        if seed is None:
            raise ValueError("subsampled_grid needs a seed")
        if sizes is None:
            g = max(2, math.ceil((4.0 * m) ** (1.0 / d)))
            sizes = (g,) * d
        return subsampled_grid_points(sizes, m, seed)
    raise ValueError(f"unknown point generator kind: {kind!r}")


@dataclass
class DiscretizationReport:
    """Estimated or certified two-sided sampling constants for one point set.

    ``exact`` is only ever true for ``q = 2`` (spectral computation). For
    witness-based reports, ``C1`` upper-bounds the true infimum and ``C2``
    lower-bounds the true supremum of the sampled-to-continuous ratio.
    """

    q: float
    C1: float
    C2: float
    exact: bool
    witnesses: tuple[TrigPolynomial, TrigPolynomial] | None = None
    trials: dict = field(default_factory=dict)

    def to_json(self, include_witnesses: bool = True) -> str:
        payload: dict = {
            "q": self.q,
            "C1": self.C1,
            "C2": self.C2,
            "exact": self.exact,
            "trials": self.trials,
        }
        if include_witnesses and self.witnesses is not None:
            payload["witnesses"] = {
                "minimizer": self.witnesses[0].to_text(),
                "maximizer": self.witnesses[1].to_text(),
            }
        return json.dumps(payload, sort_keys=True, indent=2)


def frame_bounds_q2(Q: IndexSet, xi: PointSet, real: bool = False,
                    eig_budget: int = 4096) -> DiscretizationReport:
    """Exact ``q = 2`` constants from the spectrum of the sampled Gram matrix.

    Builds ``E`` with rows ``exp(i <k, x_j>) / sqrt(m)`` (or the orthonormal
    real cosine/sine basis when ``real``); the constants are the extreme
    eigenvalues of ``E* E``. With fewer points than basis functions the
    matrix is rank deficient and ``C1`` is exactly zero.
    """
    if Q.N == 0:
        raise ValueError("frequency set must be nonempty")
    if Q.N > eig_budget:
        raise BudgetError(f"eigenproblem of size {Q.N} exceeds the budget of {eig_budget}")
    if Q.d != xi.d:
        raise ValueError("point set dimension does not match the frequency set")
    phi = basis_matrix(Q, xi.points)
    if real:
        S = real_parameter_map(Q)
        A = np.real(phi @ S) / np.sqrt(xi.m)
        gram = A.T @ A
    else:
        S = None
        A = phi / np.sqrt(xi.m)
        gram = A.conj().T @ A
    evals, evecs = np.linalg.eigh(gram)
    rank_deficient = xi.m < Q.N
    c1 = 0.0 if rank_deficient else max(float(evals[0]), 0.0)
    c2 = max(float(evals[-1]), 0.0)
    vmin, vmax = evecs[:, 0], evecs[:, -1]
    if real:
        witnesses = (
            TrigPolynomial(Q, S @ vmin, real_flag=True),
            TrigPolynomial(Q, S @ vmax, real_flag=True),
        )
    else:
        witnesses = (
            TrigPolynomial(Q, vmin.astype(np.complex128)),
            TrigPolynomial(Q, vmax.astype(np.complex128)),
        )
    meta = {"method": "spectral", "m": xi.m, "N": Q.N, "real": real,
            "generator": xi.generator}
    return DiscretizationReport(2.0, c1, c2, exact=True, witnesses=witnesses, trials=meta)


def _ratio_problem(Q: IndexSet, xi: PointSet, q: float, real: bool,
                   oversampling: int):
    S = real_parameter_map(Q) if real else complex_parameter_map(Q.N)
    A_num = basis_matrix(Q, xi.points) @ S
    w_num = np.full(xi.m, 1.0 / xi.m)
    sizes, _ = norms.quadrature_sizes(Q.max_degrees, q, oversampling)
    nodes = grid_nodes(sizes)
    A_den = basis_matrix(Q, nodes) @ S
    w_den = np.full(nodes.shape[0], 1.0 / nodes.shape[0])
    return S, A_num, w_num, A_den, w_den, sizes


def ratio_extremize(Q: IndexSet, xi: PointSet, q: float, restarts: int = 32,
                    steps: int = 200, seed: int = 0, real: bool = False,
                    oversampling: int = norms.DEFAULT_OVERSAMPLING) -> DiscretizationReport:
    """Witness-based bounds on the sampled-to-continuous ratio for any ``q >= 1``.

    Runs batched projected gradient ascent and descent on
    ``R(f) = ((1/m) sum_j |f(x_j)|^q) / ||f||_q^q`` from random starts
    (plus the constant polynomial when the zero frequency is present),
    and reports the extreme ratios observed together with the witnesses
    that attain them.
    """
    q = float(q)
    if not math.isfinite(q) or q < 1.0:
        raise ValueError("q must be finite and at least 1")
    if Q.N == 0:
        raise ValueError("frequency set must be nonempty")
    S, A_num, w_num, A_den, w_den, sizes = _ratio_problem(Q, xi, q, real, oversampling)
    P = S.shape[1]
    rng = np.random.default_rng(seed)

    def starts() -> np.ndarray:
        theta = rng.standard_normal((P, restarts))
        zero = tuple([0] * Q.d)
        if zero in Q:
            # The constant polynomial is always a feasible witness with R = 1.
            const = np.zeros(P)
            const[_constant_parameter_index(Q, real)] = 1.0
            theta[:, 0] = const
        return theta

    vals_max, th_max = extremize_ratio(A_num, w_num, A_den, w_den, q,
                                       starts(), steps=steps, maximize=True)
    vals_min, th_min = extremize_ratio(A_num, w_num, A_den, w_den, q,
                                       starts(), steps=steps, maximize=False)
    i_max = int(np.argmax(vals_max))
    i_min = int(np.argmin(vals_min))
    c2 = float(vals_max[i_max])
    c1 = float(vals_min[i_min])
    witness_min = TrigPolynomial(Q, S @ th_min[:, i_min], real_flag=real)
    witness_max = TrigPolynomial(Q, S @ th_max[:, i_max], real_flag=real)
    meta = {"method": "ratio_extremize", "m": xi.m, "N": Q.N, "real": real,
            "restarts": restarts, "steps": steps, "seed": seed,
            "oversampling": oversampling, "den_grid": list(sizes),
            "generator": xi.generator}
    return DiscretizationReport(q, c1, c2, exact=False,
                                witnesses=(witness_min, witness_max), trials=meta)


def _constant_parameter_index(Q: IndexSet, real: bool) -> int:
    zero = tuple([0] * Q.d)
    zero_row = next(i for i, k in enumerate(Q) if k == zero)
    if not real:
        return zero_row
    # Real parameter columns appear in support order: the constant column
    # is preceded by two columns per representative pair below it.
    col = 0
    for i, k in enumerate(Q):
        neg = tuple(-v for v in k)
        if k == neg:
            if i == zero_row:
                return col
            col += 1
        elif k > neg:
            col += 2
    raise ValueError("zero frequency not present")


def witness_ratio(f: TrigPolynomial, xi: PointSet, q: float,
                  oversampling: int = norms.DEFAULT_OVERSAMPLING) -> float:
    """Recompute ``R(f)`` for a stored witness, for reproducibility checks."""
    num = norms.discrete_lq(f, xi, q).value ** q
    sizes, _ = norms.quadrature_sizes(f.support.max_degrees, q, oversampling)
    nodes = grid_nodes(sizes)
    den = float(np.mean(np.abs(basis_matrix(f.support, nodes) @ f.coeffs) ** q))
    return num / den


def meets_target(report: DiscretizationReport, target: tuple[float, float]) -> bool:
    """Decide a report against a target interval ``[c1, c2]``."""
    c1, c2 = target
    if c1 > c2:
        raise ValueError("target lower constant exceeds the upper one")
    return report.C1 >= c1 and report.C2 <= c2


def certify(Q: IndexSet, xi: PointSet, q: float,
            target: tuple[float, float] = DEFAULT_TARGET, real: bool = False,
            **search_kwargs) -> tuple[bool, DiscretizationReport]:
    """Test whether the point set meets a target two-sided interval.

    For ``q = 2`` the decision is exact (spectral). Otherwise a witness
    violating the interval is a sound rejection, while acceptance is
    provisional: no witness found does not prove none exists.
    """
    if q == 2.0 and not search_kwargs.get("force_witness", False):
        report = frame_bounds_q2(Q, xi, real=real)
    else:
        search_kwargs.pop("force_witness", None)
        report = ratio_extremize(Q, xi, q, real=real, **search_kwargs)
    return meets_target(report, target), report


@dataclass
class MinimalMResult:
    """Outcome of the minimal sampling budget search."""

    m_star: int | None
    censored: bool
    ladder: list[tuple[int, int, int]]  # (m, successes, trials)

    def ladder_csv(self) -> str:
        lines = ["m,successes,trials"]
        lines += [f"{m},{s},{t}" for m, s, t in sorted(self.ladder)]
        return "\n".join(lines) + "\n"


def minimal_m_search(Q: IndexSet, q: float, generator: str = "uniform_random",
                     target: tuple[float, float] = DEFAULT_TARGET,
                     trials: int = 10, theta: float = 0.9, seed: int = 0,
                     real: bool = False, cap_factor: int = 4096,
                     **certify_kwargs) -> MinimalMResult:
    """Smallest ``m`` at which randomly generated point sets certify reliably.

    Doubles ``m`` upward from the space dimension until at least
    ``ceil(theta * trials)`` of the seeded point sets certify, then
    bisects down to the smallest such ``m``. Each (m, trial) pair draws
    its own deterministic seed, so parallel and serial schedules agree.
    Hitting ``cap_factor * N`` without success censors the search.
    """
    if not 0.0 < theta <= 1.0:
        raise ValueError("success fraction theta must lie in (0, 1]")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    N = Q.N
    need = math.ceil(theta * trials)
    ladder: list[tuple[int, int, int]] = []

    def run(m: int) -> bool:
        wins = 0
        for t in range(trials):
            trial_seed = int(np.random.SeedSequence((int(seed), int(m), t)).generate_state(1)[0])
            xi = generate_points(generator, m, Q.d, seed=trial_seed)
            ok, _ = certify(Q, xi, q, target=target, real=real, **certify_kwargs)
            wins += int(ok)
        ladder.append((m, wins, trials))
        return wins >= need

    cap = cap_factor * N
    m = N
    while not run(m):
        if m >= cap:
            return MinimalMResult(None, True, ladder)
        m = min(2 * m, cap)
    lo = m // 2 if m > N else N - 1  # largest known-failing m (or below range)
    hi = m
    while hi - lo > 1:
        mid = (hi + lo) // 2
        if mid < N:
            break
        if run(mid):
            hi = mid
        else:
            lo = mid
    return MinimalMResult(hi, False, ladder)


def complex_from_real_report(report: DiscretizationReport,
                             q: float | None = None) -> DiscretizationReport:
    """Constants for the full complex span implied by a real-subspace report.

    If the real subspace satisfies the two-sided inequality with
    ``(C1, C2)``, the complex span satisfies it with
    ``(C1 * 2^(-q-1), C2 * 2^(q+1))``; the result is never exact.
    """
    qq = float(report.q if q is None else q)
    factor = 2.0 ** (qq + 1.0)
    meta = dict(report.trials)
    meta["derived"] = "real_to_complex"
    return DiscretizationReport(qq, report.C1 / factor, report.C2 * factor,
                                exact=False, witnesses=None, trials=meta)
