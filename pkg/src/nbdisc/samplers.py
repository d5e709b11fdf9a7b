"""Design generators: crude Monte Carlo, Sobol' and Latin hypercube.

Every sampler is a pure function of its `SamplerSpec`. Randomness comes from
``numpy.random.Generator(PCG64(seed))``; no global state is touched.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

__all__ = [
    "KINDS",
    "SOBOL_BITS",
    "SamplerSpec",
    "max_sobol_dims",
    "sobol_direction_vectors",
    "sample",
    "sample_mc",
    "sample_sobol",
    "sample_lhs",
    "permute_column",
]

KINDS = ("mc", "sobol", "lhs")
SOBOL_BITS = 32


@dataclass(frozen=True)
class SamplerSpec:
    kind: str
    n_points: int
    n_dims: int
    seed: int = 0
    scramble: bool = False
    centered: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown sampler kind {self.kind!r}, expected one of {KINDS}")
        if self.n_points < 1:
            raise ValueError("n must be ≥ 1")
        if self.n_dims < 1:
            raise ValueError("d must be ≥ 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.kind == "sobol":
            if self.n_dims > max_sobol_dims():
                raise ValueError(
                    f"sobol supports at most {max_sobol_dims()} dimensions, got {self.n_dims}"
                )
            if self.n_points > 2**SOBOL_BITS:
                raise ValueError(f"sobol supports at most 2**{SOBOL_BITS} points")

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))


@lru_cache(maxsize=1)
def _direction_table() -> tuple[tuple[int, int, tuple[int, ...]], ...]:
    rows = []
    text = resources.files("nbdisc").joinpath("data/direction_numbers.txt").read_text()
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        _, degree, coeff, *m = (int(tok) for tok in line.split())
        if len(m) != degree:
            raise ValueError(f"malformed direction-number row: {line!r}")
        rows.append((degree, coeff, tuple(m)))
    return tuple(rows)


def max_sobol_dims() -> int:
    return len(_direction_table())


def sobol_direction_vectors(n_dims: int, bits: int = SOBOL_BITS) -> np.ndarray:
    """``(n_dims, bits)`` direction integers ``v[j, i] = m_{i+1} << (bits - i - 1)``."""
    table = _direction_table()
    if n_dims > len(table):
        raise ValueError(f"sobol supports at most {len(table)} dimensions, got {n_dims}")
    v = np.zeros((n_dims, bits), dtype=np.uint64)
    for j, (s, a, m) in enumerate(table[:n_dims]):
        if s == 0:
            for i in range(bits):
                v[j, i] = 1 << (bits - 1 - i)
            continue
        row = [0] * bits
        for i in range(min(s, bits)):
            row[i] = m[i] << (bits - 1 - i)
        for i in range(s, bits):
            w = row[i - s] ^ (row[i - s] >> s)
            for k in range(1, s):
                if (a >> (s - 1 - k)) & 1:
                    w ^= row[i - k]
            row[i] = w
        v[j] = row
    return v


def sample_mc(spec: SamplerSpec) -> np.ndarray:
    return spec.rng().random((spec.n_points, spec.n_dims))


def sample_sobol(spec: SamplerSpec) -> np.ndarray:
    """First ``n_points`` Sobol' points in Gray-code order, origin included.

    With ``scramble`` a random digital shift is applied: each dimension's
    32-bit integer coordinate is XOR-ed with one seed-derived random word.
    """
    n, d = spec.n_points, spec.n_dims
    v = sobol_direction_vectors(d)
    idx = np.arange(n, dtype=np.uint64)
    gray = idx ^ (idx >> np.uint64(1))
    ints = np.zeros((n, d), dtype=np.uint64)
    for bit in range(max(int(n - 1).bit_length(), 1)):
        mask = ((gray >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        ints[mask] ^= v[:, bit]
    if spec.scramble:
        shift = spec.rng().integers(0, 2**SOBOL_BITS, size=d, dtype=np.uint64)
        ints ^= shift
    return ints.astype(np.float64) / float(2**SOBOL_BITS)


def sample_lhs(spec: SamplerSpec) -> np.ndarray:
    """Latin hypercube with an independent random permutation per column.

    Centered designs sit at the stratum midpoints ``(k - 0.5) / n``;
    otherwise a uniform jitter is drawn inside each stratum.
    """
    n, d = spec.n_points, spec.n_dims
    rng = spec.rng()
    strata = np.column_stack([rng.permutation(n) for _ in range(d)]).astype(np.float64)
    if spec.centered:
        return (strata + 0.5) / n
    x = (strata + rng.random((n, d))) / n
    # keep the jittered point strictly inside its stratum after rounding
    return np.minimum(x, np.nextafter((strata + 1.0) / n, 0.0))


_SAMPLERS = {"mc": sample_mc, "sobol": sample_sobol, "lhs": sample_lhs}


def sample(spec: SamplerSpec) -> np.ndarray:
    return _SAMPLERS[spec.kind](spec)


def permute_column(design, dim: int, perm) -> np.ndarray:
    """Copy of ``design`` with column ``dim`` reordered as ``design[perm, dim]``.

    ``perm`` is a zero-based permutation of the row indices.
    """
    x = np.array(design, dtype=np.float64)
    n, d = x.shape
    if not 0 <= dim < d:
        raise ValueError(f"dim must be in [0, {d}), got {dim}")
    p = np.asarray(perm)
    if p.shape != (n,) or not np.issubdtype(p.dtype, np.integer) \
            or not np.array_equal(np.sort(p), np.arange(n)):
        raise ValueError(f"perm is not a permutation of 0..{n - 1}")
    x[:, dim] = x[p, dim]
    return x
