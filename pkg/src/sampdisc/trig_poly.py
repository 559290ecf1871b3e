r"""Trigonometric polynomials with finite frequency support on the torus.

A polynomial is a coefficient vector aligned with the lexicographic order
of its support: ``f(x) = sum_k c_k * exp(i <k, x>)``. Points live on
``[0, 2*pi)^d`` and the reference measure throughout the package is the
normalized Lebesgue measure, so every pure exponential has unit norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .index_sets import IndexSet, custom_index_set, dyadic_block

TWO_PI = 2.0 * np.pi


def wrap_torus(x) -> np.ndarray:
    """Reduce coordinates modulo ``2*pi`` into ``[0, 2*pi)``."""
    return np.mod(np.asarray(x, dtype=float), TWO_PI)


def negation_permutation(support: IndexSet) -> np.ndarray | None:
    """Index permutation mapping each row ``k`` to the row of ``-k``.

    Returns None when the support is not symmetric under negation.
    """
    lookup = {k: i for i, k in enumerate(support)}
    perm = np.empty(support.N, dtype=np.int64)
    for i, k in enumerate(support):
        j = lookup.get(tuple(-v for v in k))
        if j is None:
            return None
        perm[i] = j
    return perm


@dataclass(eq=False)
class TrigPolynomial:
    """Complex trigonometric polynomial ``sum_k c_k exp(i <k, x>)``.

    ``coeffs[i]`` belongs to ``support.elements[i]``. With ``real_flag``
    set, the coefficients must be conjugate-symmetric (``c_{-k} ==
    conj(c_k)``) so the function is real-valued.
    """

    support: IndexSet
    coeffs: np.ndarray
    real_flag: bool = False

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.shape[0] != self.support.N:
            raise ValueError(
                f"coefficient count {c.shape[0]} does not match support size {self.support.N}"
            )
        self.coeffs = c
        if self.real_flag:
            _require_conjugate_symmetry(self.support, c)

    @property
    def d(self) -> int:
        return self.support.d

    @property
    def N(self) -> int:
        return self.support.N

    @classmethod
    def from_dict(cls, support: IndexSet, coefficients: Mapping[Sequence[int], complex],
                  real_flag: bool = False) -> "TrigPolynomial":
        c = np.zeros(support.N, dtype=np.complex128)
        index = {k: i for i, k in enumerate(support)}
        for key, value in coefficients.items():
            k = tuple(int(v) for v in key)
            if k not in index:
                raise ValueError(f"coefficient key {k} is not in the support")
            c[index[k]] = value
        return cls(support, c, real_flag=real_flag)

    def coefficient(self, k: Sequence[int]) -> complex:
        key = tuple(int(v) for v in k)
        for i, kk in enumerate(self.support):
            if kk == key:
                return complex(self.coeffs[i])
        return 0.0 + 0.0j

    def coefficient_map(self) -> dict[tuple[int, ...], complex]:
        return {k: complex(c) for k, c in zip(self.support, self.coeffs)}

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        merged = self.coefficient_map()
        for k, c in other.coefficient_map().items():
            merged[k] = merged.get(k, 0.0) + c
        support = custom_index_set(list(merged), d=self.d)
        return TrigPolynomial.from_dict(support, merged,
                                        real_flag=self.real_flag and other.real_flag)

    def __mul__(self, scalar: complex) -> "TrigPolynomial":
        if isinstance(scalar, TrigPolynomial):
            return NotImplemented
        real = self.real_flag and complex(scalar).imag == 0.0
        return TrigPolynomial(self.support, self.coeffs * scalar, real_flag=real)

    __rmul__ = __mul__

    def __neg__(self) -> "TrigPolynomial":
        return self * (-1.0)

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + (-other)

    def to_text(self) -> str:
        """Exact text serialization (hex float literals for binary64)."""
        lines = [f"{self.d} {self.N} {self.support.tag} {int(self.real_flag)}"]
        for k, c in zip(self.support, self.coeffs):
            ks = " ".join(str(v) for v in k)
            lines.append(f"{ks} {float(c.real).hex()} {float(c.imag).hex()}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TrigPolynomial":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        d, n = int(head[0]), int(head[1])
        tag = head[2] if len(head) >= 3 else "custom"
        real_flag = bool(int(head[3])) if len(head) >= 4 else False
        vectors, coeffs = [], []
        for ln in lines[1:]:
            parts = ln.split()
            vectors.append([int(v) for v in parts[:d]])
            coeffs.append(complex(float.fromhex(parts[d]), float.fromhex(parts[d + 1])))
        if len(vectors) != n:
            raise ValueError(f"header promises {n} rows, found {len(vectors)}")
        support = custom_index_set(vectors, d=d, tag=tag)
        order = {k: i for i, k in enumerate(map(tuple, vectors))}
        aligned = np.empty(n, dtype=np.complex128)
        for i, k in enumerate(support):
            aligned[i] = coeffs[order[k]]
        return cls(support, aligned, real_flag=real_flag)


def _require_conjugate_symmetry(support: IndexSet, coeffs: np.ndarray,
                                tol: float = 1e-12) -> None:
    perm = negation_permutation(support)
    if perm is None:
        raise ValueError("a real-valued polynomial needs a negation-symmetric support")
    scale = max(float(np.max(np.abs(coeffs))) if coeffs.size else 0.0, 1.0)
    if not np.allclose(np.conj(coeffs[perm]), coeffs, rtol=0.0, atol=tol * scale):
        raise ValueError("coefficients are not conjugate-symmetric; function is not real-valued")


def basis_matrix(support: IndexSet, points) -> np.ndarray:
    """Matrix of basis values ``exp(i <k, x>)`` with shape (npoints, N)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != support.d:
        raise ValueError(f"points have dimension {pts.shape[1]}, support has {support.d}")
    phases = pts @ support.elements.T.astype(float)
    return np.exp(1j * phases)


def evaluate(f: TrigPolynomial, points) -> np.ndarray | complex:
    """Evaluate ``f`` at one point (shape (d,)) or many (shape (m, d))."""
    pts = np.asarray(points, dtype=float)
    single = pts.ndim == 1
    values = basis_matrix(f.support, pts) @ f.coeffs
    return complex(values[0]) if single else values


def grid_nodes(sizes: Sequence[int]) -> np.ndarray:
    """Equispaced tensor grid ``x_t = 2*pi*t/size`` in row-major order, shape (prod, d)."""
    axes = [TWO_PI * np.arange(int(g)) / int(g) for g in sizes]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, len(sizes))


def evaluate_on_grid(f: TrigPolynomial, sizes: Sequence[int]) -> np.ndarray:
    """Values of ``f`` on the equispaced tensor grid, via an FFT placement.

    Requires ``sizes[j] > 2 * max |k_j|`` so no two support frequencies
    alias to the same grid frequency.
    """
    sizes = tuple(int(g) for g in sizes)
    if len(sizes) != f.d:
        raise ValueError(f"need {f.d} grid sizes, got {len(sizes)}")
    maxdeg = f.support.max_degrees
    for g, m in zip(sizes, maxdeg):
        if g <= 2 * int(m):
            raise ValueError(
                f"grid size {g} aliases frequencies up to {int(m)}; need size > {2 * int(m)}"
            )
    spectrum = np.zeros(sizes, dtype=np.complex128)
    if f.N:
        idx = np.mod(f.support.elements, np.asarray(sizes, dtype=np.int64))
        np.add.at(spectrum, tuple(idx.T), f.coeffs)
    return np.fft.ifftn(spectrum) * float(np.prod(sizes))


def random_polynomial(support: IndexSet, real_flag: bool, seed: int) -> TrigPolynomial:
    """Random polynomial with iid standard complex Gaussian coefficients.

    In the real case one coefficient is drawn per ``{k, -k}`` pair (the
    lexicographically larger member) and mirrored conjugate, with a real
    Gaussian at ``k = 0``. Deterministic for a given seed.
    """
    if support.N == 0:
        raise ValueError("support must be nonempty")
    rng = np.random.default_rng(seed)
    if not real_flag:
        c = (rng.standard_normal(support.N) + 1j * rng.standard_normal(support.N)) / np.sqrt(2.0)
        return TrigPolynomial(support, c, real_flag=False)
    perm = negation_permutation(support)
    if perm is None:
        raise ValueError("a real-valued polynomial needs a negation-symmetric support")
    c = np.zeros(support.N, dtype=np.complex128)
    for i, k in enumerate(support):
        neg = tuple(-v for v in k)
        if k == neg:
            c[i] = rng.standard_normal()
        elif k > neg:
            z = (rng.standard_normal() + 1j * rng.standard_normal()) / np.sqrt(2.0)
            c[i] = z
            c[perm[i]] = np.conj(z)
    return TrigPolynomial(support, c, real_flag=True)


def symmetrize_support(support: IndexSet) -> IndexSet:
    """Union of the support with its negation."""
    both = np.vstack([support.elements, -support.elements])
    return IndexSet(support.d, both, tag="custom")


def real_imaginary_parts(f: TrigPolynomial) -> tuple[TrigPolynomial, TrigPolynomial]:
    """Split ``f = fR + i*fI`` into real-valued parts.

    ``(fR)_k = (c_k + conj(c_{-k})) / 2`` and
    ``(fI)_k = (c_k - conj(c_{-k})) / (2i)`` on the symmetrized support.
    """
    support = symmetrize_support(f.support)
    index = {k: i for i, k in enumerate(support)}
    c = np.zeros(support.N, dtype=np.complex128)
    for k, value in zip(f.support, f.coeffs):
        c[index[k]] = value
    perm = negation_permutation(support)
    assert perm is not None
    c_negconj = np.conj(c[perm])
    c_real = (c + c_negconj) / 2.0
    c_imag = (c - c_negconj) / 2.0j
    return (
        TrigPolynomial(support, c_real, real_flag=True),
        TrigPolynomial(support, c_imag, real_flag=True),
    )


def dyadic_projection(f: TrigPolynomial, s: Sequence[int]) -> TrigPolynomial:
    """Restrict the coefficients of ``f`` to the dyadic block at level ``s``."""
    block = dyadic_block(s)
    if block.d != f.d:
        raise ValueError("level vector dimension mismatch")
    keep = np.asarray([k in block for k in f.support], dtype=bool)
    sub = IndexSet(f.d, f.support.elements[keep], tag=block.tag)
    # Restriction to a symmetric block preserves conjugate symmetry.
    return TrigPolynomial(sub, f.coeffs[keep], real_flag=f.real_flag)


def shift(f: TrigPolynomial, h) -> TrigPolynomial:
    """Translate the argument: ``shift(f, h)(x) == f(x + h)``."""
    h = np.asarray(h, dtype=float).reshape(-1)
    if h.shape[0] != f.d:
        raise ValueError("shift vector dimension mismatch")
    phases = f.support.elements.astype(float) @ h
    return TrigPolynomial(f.support, f.coeffs * np.exp(1j * phases), real_flag=f.real_flag)
