"""Newcomb-Benford discrepancy of a design of experiments.

A design is an ``(n_points, n_dims)`` array with entries in ``[0, 1)``.
Each entry is mapped through ``10**x`` and its leading digit is compared
with the logarithmic law ``log10(1 + 1/digit)``. The flattened variant pools
all entries; the joint variant looks at the 81-bin distribution of digit
pairs over every ordered pair of distinct dimensions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DIGITS",
    "JOINT_MODES",
    "DEFAULT_JOINT_MODE",
    "DesignError",
    "DigitHistogram",
    "PairDigitHistogram",
    "NBReference",
    "NbdResult",
    "as_design",
    "nb_probability",
    "first_digit",
    "first_digits",
    "marginal_reference",
    "pair_reference",
    "digit_histogram_flat",
    "digit_histogram_column",
    "pair_digit_histogram",
    "rmse_vs_reference",
    "nbd_flat",
    "nbd_joint",
]

DIGITS = np.arange(1, 10)
JOINT_MODES = ("pair-product", "pair-concatenated")
# ranks the two reference 6-point LHS designs in the same order as CD2
DEFAULT_JOINT_MODE = "pair-concatenated"


class DesignError(ValueError):
    """Raised when an array violates the design contract."""


def as_design(points) -> np.ndarray:
    """Validate ``points`` and return them as a 2D float64 array.

    1D input is read as a single column. Entries must be finite and lie in
    ``[0, 1)``; a value of exactly 1.0 is rejected rather than clipped.
    """
    x = np.asarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise DesignError(f"design must be 2-dimensional, got shape {x.shape}")
    if x.shape[0] < 1 or x.shape[1] < 1:
        raise DesignError("empty design")
    if not np.all(np.isfinite(x)):
        raise DesignError("design contains non-finite values")
    if x.min() < 0.0 or x.max() >= 1.0:
        raise DesignError(
            f"design values must lie in [0, 1), got range [{x.min()}, {x.max()}]"
        )
    return x


def nb_probability(digit: int) -> float:
    """Probability of leading digit ``digit`` under the logarithmic law."""
    if isinstance(digit, bool) or int(digit) != digit or not 1 <= digit <= 9:
        raise ValueError(f"digit must be an integer in 1..9, got {digit!r}")
    return math.log10(1.0 + 1.0 / int(digit))


def first_digit(x: float) -> int:
    """Leading digit of ``10**x`` for a single coordinate ``x`` in [0, 1)."""
    if not 0.0 <= x < 1.0:
        raise DesignError(f"coordinate must lie in [0, 1), got {x!r}")
    return min(max(math.floor(10.0 ** x), 1), 9)


def first_digits(design: np.ndarray) -> np.ndarray:
    """Vectorised `first_digit` on an already validated array (int8 result)."""
    return np.clip(np.floor(np.power(10.0, design)), 1, 9).astype(np.int8)


@dataclass(frozen=True)
class DigitHistogram:
    counts: np.ndarray  # int64, index 0 is digit 1
    total: int

    @property
    def probabilities(self) -> np.ndarray:
        return self.counts / self.total


@dataclass(frozen=True)
class PairDigitHistogram:
    counts: np.ndarray  # (9, 9) int64, [a - 1, b - 1]
    total: int

    @property
    def probabilities(self) -> np.ndarray:
        return self.counts / self.total


@dataclass(frozen=True)
class NBReference:
    probs: np.ndarray
    mode: str

    def __len__(self) -> int:
        return self.probs.size


@dataclass(frozen=True)
class NbdResult:
    value: float
    variant: str
    per_digit_error: np.ndarray = field(repr=False)


def marginal_reference() -> NBReference:
    return NBReference(np.log10(1.0 + 1.0 / DIGITS), "marginal")


def pair_reference(mode: str = DEFAULT_JOINT_MODE) -> NBReference:
    """81-bin reference for a digit pair ``(a, b)``, flattened row-major.

    ``pair-product`` treats the two leading digits as independent, each
    following the marginal law. ``pair-concatenated`` reads ``(a, b)`` as the
    two-digit number ``10a + b`` and uses ``log10(1 + 1/(10a + b))``,
    renormalised over ``b`` in 1..9 (the clipped digits never produce 0).
    """
    if mode == "pair-product":
        p = np.log10(1.0 + 1.0 / DIGITS)
        probs = np.outer(p, p)
    elif mode == "pair-concatenated":
        probs = np.log10(1.0 + 1.0 / (10 * DIGITS[:, None] + DIGITS[None, :]))
        probs = probs / probs.sum()
    else:
        raise ValueError(f"unknown joint mode {mode!r}, expected one of {JOINT_MODES}")
    return NBReference(probs.ravel(), mode)


def _count(digits: np.ndarray) -> np.ndarray:
    return np.bincount(digits.ravel(), minlength=10)[1:].astype(np.int64)


def digit_histogram_flat(design) -> DigitHistogram:
    x = as_design(design)
    return DigitHistogram(_count(first_digits(x)), x.size)


def digit_histogram_column(design, dim: int) -> DigitHistogram:
    x = as_design(design)
    return DigitHistogram(_count(first_digits(x[:, dim])), x.shape[0])


def _pair_counts(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    codes = 9 * (a.astype(np.int64) - 1) + (b - 1)
    return np.bincount(codes, minlength=81).reshape(9, 9)


def pair_digit_histogram(design, j: int, k: int) -> PairDigitHistogram:
    x = as_design(design)
    digits = first_digits(x[:, [j, k]])
    return PairDigitHistogram(_pair_counts(digits[:, 0], digits[:, 1]), x.shape[0])


def rmse_vs_reference(probs, reference: NBReference) -> float:
    """Root mean square deviation between ``probs`` and ``reference.probs``."""
    emp = np.asarray(probs, dtype=np.float64).ravel()
    if emp.size != reference.probs.size:
        raise ValueError(
            f"length mismatch: {emp.size} empirical bins vs {reference.probs.size} reference bins"
        )
    if abs(emp.sum() - 1.0) > 1e-9:
        raise ValueError(f"empirical probabilities sum to {emp.sum()}, expected 1")
    return math.sqrt(np.mean((reference.probs - emp) ** 2))


def nbd_flat(design) -> NbdResult:
    """Newcomb-Benford discrepancy over the flattened design, O(n_points * n_dims)."""
    hist = digit_histogram_flat(design)
    ref = marginal_reference()
    emp = hist.probabilities
    return NbdResult(rmse_vs_reference(emp, ref), "flattened", emp - ref.probs)


def nbd_joint(design, mode: str = DEFAULT_JOINT_MODE) -> NbdResult:
    """Mean pairwise NBD over all ordered pairs of distinct dimensions.

    Pair ``(k, j)`` has the transposed histogram of ``(j, k)``, so each
    unordered pair is counted once and both orientations are scored. The
    returned ``per_digit_error`` is the 81-bin deviation averaged over the
    ordered pairs.
    """
    x = as_design(design)
    n, d = x.shape
    if d < 2:
        raise DesignError("joint NBD requires at least 2 dimensions")
    ref = pair_reference(mode)
    ref2d = ref.probs.reshape(9, 9)
    digits = first_digits(x)
    rmses = []
    err = np.zeros((9, 9))
    for j in range(d - 1):
        for k in range(j + 1, d):
            emp = _pair_counts(digits[:, j], digits[:, k]) / n
            rmses.append(math.sqrt(np.mean((ref2d - emp) ** 2)))
            rmses.append(math.sqrt(np.mean((ref2d - emp.T) ** 2)))
            err += (emp - ref2d) + (emp.T - ref2d)
    n_pairs = d * d - d
    return NbdResult(math.fsum(rmses) / n_pairs, "joint", (err / n_pairs).ravel())
