"""
Dense complex Hermitian linear algebra.

All matrices are ``numpy`` arrays of ``complex128``. The eigensolver is a
cyclic complex Jacobi iteration, which is adequate for the small operators
this project works with (dimension up to a few dozen).
"""

import logging
import math
from typing import NamedTuple

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
HERMITIAN_REPAIR_THRESHOLD = 1e-12
JACOBI_CONVERGENCE = 1e-12
JACOBI_MAX_SWEEPS = 100
RESIDUAL_TOL = 1e-10


class NotHermitianError(ValueError):
    """Raised when a matrix is too far from Hermitian to be repaired."""


class EigensolverError(ArithmeticError):
    """
    Jacobi 반복이 수렴하지 않았거나 고유벡터 재구성 잔차가 허용치를 넘은 경우

    Attributes:
        residual (float): 마지막 off-diagonal 노름 또는 재구성 잔차
        sweeps (int): 수행된 sweep 수
    """

    def __init__(self, message, residual, sweeps):
        super().__init__(f"{message} (residual={residual:.3e}, sweeps={sweeps})")
        self.residual = residual
        self.sweeps = sweeps


class PsdCheck(NamedTuple):
    is_psd: bool
    min_eigenvalue: float


def as_matrix(matrix):
    """Return ``matrix`` as a finite, square, complex array."""
    arr = np.array(matrix, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def hermitian_asymmetry(matrix):
    arr = np.asarray(matrix)
    return float(np.max(np.abs(arr - arr.conj().T)))


def hermitian(matrix, threshold=HERMITIAN_REPAIR_THRESHOLD):
    """
    Validate a Hermitian matrix.

    Asymmetry up to ``threshold`` times the largest entry magnitude is repaired
    by symmetrizing (H + H^dagger)/2; anything larger is rejected.
    """
    arr = as_matrix(matrix)
    asymmetry = hermitian_asymmetry(arr)
    if asymmetry == 0.0:
        return arr
    scale = float(np.max(np.abs(arr)))
    if asymmetry > threshold * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds "
            f"{threshold:.0e} of max |entry| {scale:.3e}"
        )
    logger.debug("Symmetrizing matrix with asymmetry %.3e", asymmetry)
    return (arr + arr.conj().T) / 2


def _off_diagonal_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a, v, p, q):
    """Zero a[p, q] with one complex Jacobi rotation, in place."""
    apq = a[p, q]
    magnitude = abs(apq)
    if magnitude == 0.0:
        return
    app, aqq = abs(a[p, p]), abs(a[q, q])
    if app + 100.0 * magnitude == app and aqq + 100.0 * magnitude == aqq:
        # below rounding of both diagonal entries
        a[p, q] = a[q, p] = 0.0
        return
    phase = np.exp(1j * np.angle(apq))
    theta = 0.5 * math.atan2(2.0 * magnitude, (a[q, q] - a[p, p]).real)
    c, s = math.cos(theta), math.sin(theta)
    # diag(1, conj(phase)) makes the pair real, then a real plane rotation
    rotation = np.array(
        [[c, s], [-s * phase.conjugate(), c * phase.conjugate()]],
        dtype=np.complex128,
    )
    pair = [p, q]
    a[:, pair] = a[:, pair] @ rotation
    a[pair, :] = rotation.conj().T @ a[pair, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    if v is not None:
        v[:, pair] = v[:, pair] @ rotation


def _jacobi(matrix, with_vectors):
    a = hermitian(matrix).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if with_vectors else None
    norm = float(np.linalg.norm(a))
    target = JACOBI_CONVERGENCE * norm

    off = _off_diagonal_norm(a)
    sweeps = 0
    while off > target:
        if sweeps == JACOBI_MAX_SWEEPS:
            logger.error(
                "Jacobi eigensolver did not converge: off-diagonal norm %.3e", off
            )
            raise EigensolverError("Jacobi eigensolver did not converge", off, sweeps)
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
        sweeps += 1
        off = _off_diagonal_norm(a)
        if not math.isfinite(off):
            logger.error("Jacobi eigensolver produced a non-finite off-diagonal norm")
            raise EigensolverError("Jacobi eigensolver diverged", off, sweeps)

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    if v is not None:
        v = v[:, order]
    return values, v, sweeps


def hermitian_eigenvalues(matrix):
    """Return the eigenvalues of a Hermitian matrix in ascending order."""
    values, _, _ = _jacobi(matrix, with_vectors=False)
    return values


def hermitian_eigh(matrix):
    """
    Return ``(eigenvalues, eigenvectors)`` with eigenvectors in the columns.

    The reconstruction ``H V = V diag(eigenvalues)`` is checked against
    ``RESIDUAL_TOL`` times the Frobenius norm of ``H``.
    """
    h = hermitian(matrix)
    values, vectors, sweeps = _jacobi(h, with_vectors=True)
    residual = float(np.linalg.norm(h @ vectors - vectors * values))
    if residual > RESIDUAL_TOL * max(float(np.linalg.norm(h)), 1.0):
        logger.error("Eigenvector residual %.3e is above tolerance", residual)
        raise EigensolverError("eigenvector reconstruction failed", residual, sweeps)
    return values, vectors


def is_psd(matrix, tol=DEFAULT_TOL):
    """
    Positive semidefiniteness test.

    The matrix passes when its smallest eigenvalue is at least
    ``-tol * max(1, trace)``. The smallest eigenvalue is returned either way.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    h = hermitian(matrix)
    min_eigenvalue = float(hermitian_eigenvalues(h)[0])
    trace = float(np.trace(h).real)
    return PsdCheck(min_eigenvalue >= -tol * max(1.0, trace), min_eigenvalue)


def principal_submatrix(matrix, indices):
    """Return the submatrix on the rows and columns listed in ``indices``."""
    h = hermitian(matrix)
    idx = [int(i) for i in indices]
    if not idx:
        raise ValueError("indices must not be empty")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"indices must be strictly increasing: {idx}")
    if idx[0] < 0 or idx[-1] >= h.shape[0]:
        raise IndexError(f"indices {idx} out of range for dimension {h.shape[0]}")
    return h[np.ix_(idx, idx)]


def tensor_product(a, b):
    """Kronecker product, (A x B)[i*dB + k, j*dB + l] = A[i, j] * B[k, l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_transpose(rho, dA, dB):
    """Transpose every dB x dB block: out[i*dB + r, j*dB + c] = rho[i*dB + c, j*dB + r]."""
    rho = as_matrix(rho)
    n = dA * dB
    if rho.shape[0] != n:
        raise ValueError(f"matrix dimension {rho.shape[0]} != dA * dB = {n}")
    return rho.reshape(dA, dB, dA, dB).transpose(0, 3, 2, 1).reshape(n, n)
