r"""Scaling studies: minimal sampling budgets across a family of spectra.

For each cross parameter ``n`` the study measures the smallest number of
sample points at which seeded random point sets reliably certify the
two-sided norm inequality, then fits the growth of ``m*/N`` against
``log n``. The sufficient conditions in the literature are upper bounds
with unknown constants, so the study reports measured exponents and
asserts only internal consistency, never agreement with a predicted rate.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .discretization import (DEFAULT_TARGET, MinimalMResult,
                             complex_from_real_report, DiscretizationReport,
                             minimal_m_search)
from .index_sets import AnisotropyWeights, IndexSet, anisotropic_cross


@dataclass
class ScalingRecord:
    """One measured point of a scaling study."""

    q: float
    gamma: str
    nu: int
    n: int
    N: int
    m_star: int | None
    censored: bool
    generator: str
    seed: int
    trials: int
    theta: float
    c1_target: float
    c2_target: float
    c1_complex: float
    c2_complex: float

    def __post_init__(self) -> None:
        if not self.censored and self.m_star is not None and self.m_star < self.N:
            raise ValueError("an uncensored minimal budget cannot be below the dimension")


RECORD_COLUMNS = list(ScalingRecord.__dataclass_fields__)


def records_csv(records: list[ScalingRecord]) -> str:
    lines = [",".join(RECORD_COLUMNS)]
    for rec in records:
        row = asdict(rec)
        cells = []
        for col in RECORD_COLUMNS:
            v = row[col]
            if v is None:
                cells.append("")
            elif isinstance(v, float):
                cells.append(repr(v))
            elif isinstance(v, bool):
                cells.append(str(int(v)))
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def parse_records_csv(text: str) -> list[ScalingRecord]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split(",")
    out = []
    for ln in lines[1:]:
        raw = dict(zip(header, ln.split(",")))
        out.append(ScalingRecord(
            q=float(raw["q"]), gamma=raw["gamma"], nu=int(raw["nu"]),
            n=int(raw["n"]), N=int(raw["N"]),
            m_star=int(raw["m_star"]) if raw["m_star"] else None,
            censored=bool(int(raw["censored"])), generator=raw["generator"],
            seed=int(raw["seed"]), trials=int(raw["trials"]),
            theta=float(raw["theta"]), c1_target=float(raw["c1_target"]),
            c2_target=float(raw["c2_target"]), c1_complex=float(raw["c1_complex"]),
            c2_complex=float(raw["c2_complex"]),
        ))
    return out


def scaling_study(q: float, gamma: AnisotropyWeights, n_range: tuple[int, int],
                  generator: str = "uniform_random", trials: int = 10,
                  theta: float = 0.9, seed: int = 0, real: bool = True,
                  target: tuple[float, float] = DEFAULT_TARGET,
                  dimension_budget: int = 2 ** 14,
                  **search_kwargs) -> tuple[list[ScalingRecord], dict[int, MinimalMResult]]:
    """Minimal-budget measurements over a range of cross parameters.

    Runs on the real-valued subspace by default and reports the implied
    complex-span constants alongside. Censored searches are recorded, not
    dropped. Returns the records plus the per-``n`` search ladders.
    """
    lo, hi = int(n_range[0]), int(n_range[1])
    if hi < lo or lo < 0:
        raise ValueError("n_range must be a nonempty interval of nonnegative integers")
    records: list[ScalingRecord] = []
    ladders: dict[int, MinimalMResult] = {}
    for n in range(lo, hi + 1):
        Q = anisotropic_cross(n, gamma)
        if Q.N > dimension_budget:
            raise ValueError(
                f"spectrum at n = {n} has dimension {Q.N}, over the study budget {dimension_budget}"
            )
        n_seed = int(np.random.SeedSequence((int(seed), int(n))).generate_state(1)[0])
        result = minimal_m_search(Q, q, generator=generator, target=target,
                                  trials=trials, theta=theta, seed=n_seed,
                                  real=real, **search_kwargs)
        base = DiscretizationReport(float(q), target[0], target[1], exact=False)
        implied = complex_from_real_report(base) if real else base
        records.append(ScalingRecord(
            q=float(q), gamma=str(gamma), nu=gamma.nu, n=n, N=Q.N,
            m_star=result.m_star, censored=result.censored,
            generator=generator, seed=seed, trials=trials, theta=theta,
            c1_target=target[0], c2_target=target[1],
            c1_complex=implied.C1, c2_complex=implied.C2,
        ))
        ladders[n] = result
    return records, ladders


@dataclass
class ExponentFit:
    """Least-squares slope of ``log(m*/N)`` against ``log n``."""

    w_hat: float
    intercept: float
    residual: float
    n_range: tuple[int, int]


def reference_exponent(nu: int, q: float) -> float:
    """Sufficient-condition exponent for cross spectra: 3 at ``q = 1``, 2 on
    ``(1, 2]``, and ``(nu - 1)(q - 2) + min(q, 3)`` beyond."""
    q = float(q)
    if q < 1:
        raise ValueError("q must be at least 1")
    if q == 1.0:
        return 3.0
    if q <= 2.0:
        return 2.0
    return (nu - 1) * (q - 2.0) + min(q, 3.0)


def arbitrary_set_exponent(q: float) -> float:
    """Log-factor exponent for arbitrary spectra at ``q`` in ``[1, 2)``:
    3 at ``q = 1`` and 2 otherwise."""
    q = float(q)
    if not 1.0 <= q < 2.0:
        raise ValueError("q must lie in [1, 2)")
    return 3.0 if q == 1.0 else 2.0


def fit_exponent(records: list[ScalingRecord]) -> ExponentFit:
    """Fit ``log(m*/N) = w * log(n) + b`` over uncensored records."""
    usable = [r for r in records if not r.censored and r.m_star is not None and r.n >= 1]
    if len(usable) < 3:
        raise ValueError("need at least 3 uncensored records to fit an exponent")
    x = np.log([r.n for r in usable])
    y = np.log([r.m_star / r.N for r in usable])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    ns = [r.n for r in usable]
    return ExponentFit(float(slope), float(intercept), resid, (min(ns), max(ns)))


@dataclass
class ArbitrarySetRecord:
    """Minimal-budget measurement for one user-supplied frequency set."""

    label: str
    q: float
    N: int
    m_star: int | None
    censored: bool
    seed: int
    trials: int
    theta: float
    normalized: float | None

    def csv_row(self) -> str:
        m = "" if self.m_star is None else str(self.m_star)
        norm = "" if self.normalized is None else repr(self.normalized)
        return (f"{self.label},{self.q!r},{self.N},{m},{int(self.censored)},"
                f"{self.seed},{self.trials},{self.theta!r},{norm}")


ARBITRARY_COLUMNS = "label,q,N,m_star,censored,seed,trials,theta,normalized"


def arbitrary_Q_study(Q_list: list[IndexSet], q: float, trials: int = 10,
                      theta: float = 0.9, seed: int = 0, real: bool = False,
                      target: tuple[float, float] = DEFAULT_TARGET,
                      labels: list[str] | None = None,
                      **search_kwargs) -> list[ArbitrarySetRecord]:
    """Minimal-budget study over arbitrary frequency sets, ``q`` in ``[1, 2)``.

    Runs on the complex span by default since arbitrary sets need not be
    negation-symmetric. Each record carries ``m* / (N * log(2N)^w)`` with
    the reference log-factor exponent, so normalizations line up across sets.
    """
    w = arbitrary_set_exponent(q)
    records = []
    for i, Q in enumerate(Q_list):
        label = labels[i] if labels else (Q.tag or f"set{i}")
        set_seed = int(np.random.SeedSequence((int(seed), i)).generate_state(1)[0])
        result = minimal_m_search(Q, q, target=target, trials=trials,
                                  theta=theta, seed=set_seed, real=real,
                                  **search_kwargs)
        if result.m_star is None:
            normalized = None
        else:
            normalized = result.m_star / (Q.N * math.log(2.0 * Q.N) ** w)
        records.append(ArbitrarySetRecord(label, float(q), Q.N, result.m_star,
                                          result.censored, seed, trials, theta,
                                          normalized))
    return records
