"""Block-diagonal global construction matrix and its matvec benchmark.

Stacking the per-segment inputs (P_end, P_start, m, q, 1) of M independent
segments into one length-5M vector turns all M coefficient computations into
a single matrix-vector product with a 4M x 5M block-diagonal matrix whose
diagonal blocks are all the same 4x5 construction matrix. Only the block and
the block count are stored; dense and compressed-sparse-row expansions exist
purely to benchmark against.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
import scipy.sparse

from .builder import CONSTRUCTION_MATRIX
from .counters import OpCounter
from .evaluator import ShapeMismatchError

#: Largest block count expanded to a dense array (4M x 5M doubles).
DEFAULT_DENSE_CAP = 5000

BLOCK_MADDS = OpCounter()
DENSE_MADDS = OpCounter()


class AllocationLimitError(ValueError):
    """Dense expansion refused: block count above the configured cap."""


@dataclass(frozen=True)
class GlobalMatrix:
    """4M x 5M block-diagonal matrix stored as one block plus a count."""

    block: np.ndarray
    block_count: int

    def __post_init__(self) -> None:
        if self.block.shape != (4, 5):
            raise ShapeMismatchError(f"block must be 4x5, got {self.block.shape}")
        if self.block_count < 1:
            raise ValueError(f"block count must be >= 1, got {self.block_count}")

    @property
    def shape(self) -> tuple[int, int]:
        return 4 * self.block_count, 5 * self.block_count


def assemble_global(block: Optional[np.ndarray] = None, block_count: int = 1) -> GlobalMatrix:
    """Global matrix with ``block`` (default: the construction matrix) repeated."""
    if block is None:
        block = CONSTRUCTION_MATRIX
    return GlobalMatrix(np.asarray(block, dtype=np.float64), block_count)


def stacked_vector(rows: np.ndarray) -> np.ndarray:
    """Interleave (P_end, P_start, m, q) rows with the constant 1 entries.

    ``rows`` is (M, 4) for one axis; the result is the length-5M input
    vector whose every fifth entry equals 1.
    """
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != 4:
        raise ShapeMismatchError(f"expected (M, 4) input rows, got {rows.shape}")
    out = np.ones((rows.shape[0], 5), dtype=np.float64)
    out[:, :4] = rows
    return out.reshape(-1)


def matvec_block(matrix: GlobalMatrix, stacked: np.ndarray) -> np.ndarray:
    """c = G*s exploiting the block structure: M small products, no zeros touched."""
    stacked = np.asarray(stacked, dtype=np.float64)
    m = matrix.block_count
    if stacked.shape != (5 * m,):
        raise ShapeMismatchError(f"stacked vector must have length {5 * m}, got {stacked.shape}")
    out = stacked.reshape(m, 5) @ matrix.block.T
    BLOCK_MADDS.add(20 * m)
    return out.reshape(-1)


def expand_dense(matrix: GlobalMatrix, cap: int = DEFAULT_DENSE_CAP) -> np.ndarray:
    """Materialize the full 4M x 5M array (benchmark baseline only)."""
    m = matrix.block_count
    if m > cap:
        raise AllocationLimitError(
            f"dense expansion of {4 * m} x {5 * m} exceeds cap of {cap} blocks"
        )
    out = np.zeros((4 * m, 5 * m), dtype=np.float64)
    for i in range(m):
        out[4 * i : 4 * i + 4, 5 * i : 5 * i + 5] = matrix.block
    return out


def expand_csr(matrix: GlobalMatrix) -> scipy.sparse.csr_matrix:
    """General compressed-sparse-row form, for sparse-library comparison.

    Explicit zeros inside the blocks are pruned so nnz reports structural
    nonzeros only.
    """
    out = scipy.sparse.block_diag([matrix.block] * matrix.block_count, format="csr")
    out.eliminate_zeros()
    return out


def matvec_dense(dense: np.ndarray, stacked: np.ndarray) -> np.ndarray:
    """Plain dense product; correctness oracle and benchmark baseline."""
    dense = np.asarray(dense, dtype=np.float64)
    stacked = np.asarray(stacked, dtype=np.float64)
    if dense.ndim != 2 or dense.shape[1] != stacked.shape[0]:
        raise ShapeMismatchError(
            f"dense shape {dense.shape} incompatible with vector length {stacked.shape}"
        )
    out = dense @ stacked
    DENSE_MADDS.add(dense.shape[0] * dense.shape[1])
    return out


def density(matrix: GlobalMatrix) -> float:
    """Nonzero entries over total entries, nonzeros / (20 M^2)."""
    m = matrix.block_count
    return int(np.count_nonzero(matrix.block)) * m / (20.0 * m * m)


def footprint_density(matrix: GlobalMatrix) -> float:
    """Fraction of entries inside the diagonal blocks: 20M / (20 M^2) = 1/M."""
    return 1.0 / matrix.block_count


def bench_block_vs_dense(
    block_counts: Iterable[int],
    repeats: int = 5,
    seed: int = 0,
    dense_cap: int = DEFAULT_DENSE_CAP,
) -> list[dict[str, object]]:
    """Time block-structured vs dense matvec at each size.

    Returns one row per (size, method) with keys M, method, wall_time_s and
    flops (multiply-adds for a single product). Dense rows are skipped above
    the cap.
    """
    rng = np.random.default_rng(seed)
    rows: list[dict[str, object]] = []
    for m in block_counts:
        matrix = assemble_global(block_count=m)
        stacked = stacked_vector(rng.standard_normal((m, 4)))
        rows.append(
            {
                "M": m,
                "method": "block",
                "wall_time_s": _median_time(lambda: matvec_block(matrix, stacked), repeats),
                "flops": 20 * m,
            }
        )
        if m <= dense_cap:
            dense = expand_dense(matrix, cap=dense_cap)
            rows.append(
                {
                    "M": m,
                    "method": "dense",
                    "wall_time_s": _median_time(lambda: matvec_dense(dense, stacked), repeats),
                    "flops": 20 * m * m,
                }
            )
    return rows


def _median_time(fn, repeats: int) -> float:
    fn()  # warmup
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return float(np.median(times))
