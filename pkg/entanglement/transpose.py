"""
Partial transposition on Bob's subsystem and the block spectrum of family
states.

For a family member the partial transpose splits as a direct sum
X + sum_k (M_k^T + N_k^T), so its spectrum is assembled from the blocks
without touching the dense matrix.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from linalg.hermitian import DEFAULT_TOL, hermitian_eigenvalues, partial_transpose
from states.family import assemble

logger = logging.getLogger(__name__)

DIRECT_SUM_TOL = 1e-9


def _eigenvalues(block):
    if block.size == 0:
        return np.empty(0)
    return hermitian_eigenvalues(block)


@dataclass
class BlockSpectrum:
    """Eigenvalues of the partial transpose grouped by the block they come from."""

    x_eigs: np.ndarray
    m_eigs: list = field(default_factory=list)
    n_eigs: list = field(default_factory=list)

    def values(self):
        return np.concatenate([self.x_eigs, *self.m_eigs, *self.n_eigs])

    def sorted_values(self):
        return np.sort(self.values())


@dataclass
class NegativityResult:
    negativity: float
    negative_eigenvalues: list
    is_ppt: bool


class DirectSumCheck(NamedTuple):
    verified: bool
    max_deviation: float


def pt_block_spectrum(p):
    """
    Spectrum of the partial transpose from the blocks X, M[k], N[k].

    M[k]^T and N[k]^T share the spectra of M[k] and N[k].
    """
    return BlockSpectrum(
        x_eigs=_eigenvalues(p.X),
        m_eigs=[_eigenvalues(m) for m in p.M],
        n_eigs=[_eigenvalues(n) for n in p.N],
    )


def dense_pt_spectrum(rho, dA, dB):
    return hermitian_eigenvalues(partial_transpose(rho, dA, dB))


def negativity(spectrum, tol=DEFAULT_TOL):
    """
    Absolute sum of the eigenvalues below ``-tol``.

    For a :class:`BlockSpectrum` only the X eigenvalues are considered, the
    M and N blocks being principal submatrices of a positive state.
    """
    if isinstance(spectrum, BlockSpectrum):
        values = np.asarray(spectrum.x_eigs, dtype=float)
    else:
        values = np.asarray(spectrum, dtype=float)
    negatives = np.sort(values[values < -tol])
    return NegativityResult(
        negativity=float(-negatives.sum()) if negatives.size else 0.0,
        negative_eigenvalues=negatives.tolist(),
        is_ppt=negatives.size == 0,
    )


def two_qubit_negativity(x00, x11, x01):
    """Closed form 1/2 max(0, sqrt((x00 - x11)^2 + 4|x01|^2) - (x00 + x11))."""
    if x00 < 0 or x11 < 0:
        raise ValueError("x00 and x11 must be non-negative")
    root = math.sqrt((x00 - x11) ** 2 + 4 * abs(x01) ** 2)
    return 0.5 * max(0.0, root - (x00 + x11))


def verify_direct_sum(p, tol=DIRECT_SUM_TOL):
    """Compare the block spectrum with the dense partial-transpose spectrum."""
    fast = pt_block_spectrum(p).sorted_values()
    dense = dense_pt_spectrum(assemble(p), p.dA, p.dB)
    deviation = float(np.max(np.abs(fast - dense)))
    if deviation > tol:
        logger.warning("Direct-sum spectrum deviates from dense result by %.3e", deviation)
    return DirectSumCheck(deviation <= tol, deviation)
