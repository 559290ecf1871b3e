r"""Frequency index sets on the integer lattice.

This module builds the finite frequency sets that the rest of the package
spans trigonometric polynomials over:

* dyadic blocks: per-axis shells ``floor(2**(s_j - 1)) <= |k_j| < 2**s_j``,
* step hyperbolic crosses: unions of dyadic blocks with ``sum(s) <= n``,
* anisotropic crosses: unions with a weighted constraint ``sum(g_j s_j) <= n``,
* full cubes ``|k_j| <= 2**n``.

Elements are stored as lexicographically sorted integer rows so that every
downstream matrix (evaluation, Gram, quadrature) has a reproducible column
order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

#: Hard cap on lattice points a single constructor may enumerate.
DEFAULT_ELEMENT_BUDGET = 10_000_000


class BudgetError(RuntimeError):
    """A construction or solve would exceed its configured size budget."""


def _as_fraction(value: int | float | str | Fraction) -> Fraction:
    # Floats are routed through their decimal string so an input like 1.5
    # means exactly 3/2 rather than its binary expansion.
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class AnisotropyWeights:
    """Axis weights of the form ``1 = g_1 = ... = g_nu < g_{nu+1} <= ... <= g_d``.

    Weights are kept as exact rationals so that the weighted block
    constraint ``sum(g_j * s_j) <= n`` is decided without floating-point
    ties on the boundary.
    """

    gamma: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        gamma = tuple(_as_fraction(g) for g in self.gamma)
        if len(gamma) == 0:
            raise ValueError("weights need at least one axis")
        if gamma[0] != 1:
            raise ValueError(
                "ordering constraint violated: the leading weight must equal 1, "
                f"got gamma_1 = {gamma[0]}"
            )
        for i in range(1, len(gamma)):
            if gamma[i] < gamma[i - 1]:
                raise ValueError(
                    "ordering constraint violated: weights must be nondecreasing, "
                    f"got gamma_{i + 1} = {gamma[i]} < gamma_{i} = {gamma[i - 1]}"
                )
        object.__setattr__(self, "gamma", gamma)

    @property
    def d(self) -> int:
        return len(self.gamma)

    @property
    def nu(self) -> int:
        """Number of leading unit weights."""
        return sum(1 for g in self.gamma if g == 1)

    def __str__(self) -> str:
        return ",".join(str(g) for g in self.gamma)

    @classmethod
    def ones(cls, d: int) -> "AnisotropyWeights":
        return cls(tuple(Fraction(1) for _ in range(d)))

    @classmethod
    def parse(cls, text: str) -> "AnisotropyWeights":
        """Parse a comma-separated weight list such as ``"1,1,3/2"``."""
        return cls(tuple(Fraction(part.strip()) for part in text.split(",")))


@dataclass(frozen=True, eq=False)
class IndexSet:
    """A finite set of integer frequency vectors in ``Z^d``.

    Rows of ``elements`` are unique and lexicographically sorted; ``tag``
    records how the set was built (for reports and serialization only,
    equality ignores it).
    """

    d: int
    elements: np.ndarray
    tag: str = "custom"

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension must be at least 1")
        arr = np.asarray(self.elements, dtype=np.int64).reshape(-1, self.d)
        arr = np.unique(arr, axis=0)
        arr.setflags(write=False)
        object.__setattr__(self, "elements", arr)

    @property
    def N(self) -> int:
        """Number of frequencies (the dimension of the spanned space)."""
        return int(self.elements.shape[0])

    def __len__(self) -> int:
        return self.N

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return (tuple(int(v) for v in row) for row in self.elements)

    @cached_property
    def _members(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self)

    def __contains__(self, k: Sequence[int]) -> bool:
        return tuple(int(v) for v in k) in self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.elements, other.elements)

    @property
    def max_degrees(self) -> np.ndarray:
        """Per-axis maximum of ``|k_j]``; zeros for the empty set."""
        if self.N == 0:
            return np.zeros(self.d, dtype=np.int64)
        return np.abs(self.elements).max(axis=0)

    def is_symmetric(self) -> bool:
        """True when the set is invariant under negation ``k -> -k``."""
        return all(tuple(-v for v in k) in self._members for k in self)

    def issubset(self, other: "IndexSet") -> bool:
        return self.d == other.d and self._members <= other._members

    def intersection(self, other: "IndexSet") -> "IndexSet":
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        keep = [k in other for k in self]
        return IndexSet(self.d, self.elements[np.asarray(keep, bool)], tag="custom")

    def to_text(self) -> str:
        """Line-oriented serialization: a ``d N tag`` header, then one
        integer vector per line."""
        lines = [f"{self.d} {self.N} {self.tag}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.elements]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IndexSet":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty index-set document")
        head = lines[0].split(maxsplit=2)
        if len(head) < 2:
            raise ValueError(f"malformed header: {lines[0]!r}")
        d, n = int(head[0]), int(head[1])
        tag = head[2] if len(head) == 3 else "custom"
        rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
        if len(rows) != n:
            raise ValueError(f"header promises {n} rows, found {len(rows)}")
        arr = np.asarray(rows, dtype=np.int64).reshape(len(rows), d) if rows else np.zeros((0, d), np.int64)
        return cls(d, arr, tag=tag)


def custom_index_set(vectors: Sequence[Sequence[int]], d: int | None = None,
                     tag: str = "custom") -> IndexSet:
    """Wrap an explicit list of frequency vectors into an :class:`IndexSet`."""
    arr = np.asarray(list(vectors), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if d is None:
        if arr.size == 0:
            raise ValueError("cannot infer dimension from an empty list")
        d = arr.shape[1]
    return IndexSet(int(d), arr.reshape(-1, d), tag=tag)


def dyadic_block(s: Sequence[int]) -> IndexSet:
    """Dyadic frequency block at level vector ``s``.

    Coordinate ``j`` ranges over ``floor(2**(s_j - 1)) <= |k_j| < 2**s_j``,
    which for ``s_j = 0`` admits only ``k_j = 0``. The block has exactly
    ``2**sum(s)`` elements.
    """
    s = tuple(int(v) for v in s)
    if len(s) == 0:
        raise ValueError("dimension must be at least 1")
    if any(v < 0 for v in s):
        raise ValueError("block levels must be nonnegative")
    axes: list[list[int]] = []
    for v in s:
        if v == 0:
            axes.append([0])
        else:
            pos = list(range(2 ** (v - 1), 2 ** v))
            axes.append([-x for x in reversed(pos)] + pos)
    pts = np.asarray(list(itertools.product(*axes)), dtype=np.int64)
    return IndexSet(len(s), pts, tag=f"dyadic_block({','.join(map(str, s))})")


def _level_vectors(n: int, d: int) -> Iterator[tuple[int, ...]]:
    # All s in Z_+^d with sum(s) <= n, in lexicographic order.
    for s in itertools.product(range(n + 1), repeat=d):
        if sum(s) <= n:
            yield s


def _union_of_blocks(levels: Iterator[tuple[int, ...]], d: int, tag: str,
                     element_budget: int) -> IndexSet:
    chunks = []
    total = 0
    for s in levels:
        block = dyadic_block(s)
        total += block.N
        if total > element_budget:
            raise BudgetError(
                f"index set would exceed the element budget of {element_budget} lattice points"
            )
        chunks.append(block.elements)
    if not chunks:
        return IndexSet(d, np.zeros((0, d), np.int64), tag=tag)
    return IndexSet(d, np.vstack(chunks), tag=tag)


def step_hyperbolic_cross(n: int, d: int,
                          element_budget: int = DEFAULT_ELEMENT_BUDGET) -> IndexSet:
    """Union of dyadic blocks over all levels with ``sum(s) <= n``."""
    n, d = int(n), int(d)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return _union_of_blocks(_level_vectors(n, d), d, f"step_cross({n})", element_budget)


def anisotropic_cross(n: int, gamma: AnisotropyWeights | Sequence,
                      element_budget: int = DEFAULT_ELEMENT_BUDGET) -> IndexSet:
    """Union of dyadic blocks whose levels satisfy ``sum(g_j * s_j) <= n``.

    Because every weight is at least 1, the constraint forces
    ``sum(s) <= n``, so the enumeration of candidate levels is finite.
    """
    n = int(n)
    if n < 0:
        raise ValueError("n must be nonnegative")
    weights = gamma if isinstance(gamma, AnisotropyWeights) else AnisotropyWeights(tuple(gamma))
    bound = Fraction(n)
    levels = (
        s for s in _level_vectors(n, weights.d)
        if sum(g * v for g, v in zip(weights.gamma, s)) <= bound
    )
    tag = f"anisotropic_cross({n};{weights})"
    return _union_of_blocks(levels, weights.d, tag, element_budget)


def cube(n: int, d: int, element_budget: int = DEFAULT_ELEMENT_BUDGET) -> IndexSet:
    """All lattice points with ``|k_j| <= 2**n`` per axis."""
    n, d = int(n), int(d)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if d < 1:
        raise ValueError("dimension must be at least 1")
    side = 2 ** (n + 1) + 1
    if side ** d > element_budget:
        raise BudgetError(
            f"cube would hold {side ** d} lattice points, over the budget of {element_budget}"
        )
    axis = np.arange(-(2 ** n), 2 ** n + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * d), indexing="ij")
    pts = np.stack(grids, axis=-1).reshape(-1, d)
    return IndexSet(d, pts, tag=f"cube({n})")
