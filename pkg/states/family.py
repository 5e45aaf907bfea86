"""
The block-structured family of bipartite states and its qubit-qudit variant.

States are written in the standard computational basis |0,0>, |0,1>, ...,
|dA-1, dB-1> (Alice-major). Index of |a, b> is ``a * dB + b``.
"""

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from linalg.hermitian import (
    DEFAULT_TOL,
    HERMITIAN_REPAIR_THRESHOLD,
    as_matrix,
    hermitian,
    hermitian_asymmetry,
    hermitian_eigenvalues,
    is_psd,
)

logger = logging.getLogger(__name__)

TRACE_TOL = 1e-10
SHRINK_MAX_STEPS = 60
SHRINK_RESOLUTION = 2.0**-20


def _block(matrix, dim, label):
    if dim == 0:
        arr = np.asarray(matrix if matrix is not None else [], dtype=np.complex128)
        if arr.size != 0:
            raise ValueError(f"{label} must be empty, got shape {arr.shape}")
        return np.zeros((0, 0), dtype=np.complex128)
    arr = hermitian(matrix)
    if arr.shape != (dim, dim):
        raise ValueError(f"{label} must be {dim}x{dim}, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class FamilyParams:
    """
    Generating data of one family member.

    ``X`` is dA x dA; ``M[k]`` is k x k and lives on Bob indices 0..k-1 of
    Alice block k; ``N[k]`` is (dB-1-k) x (dB-1-k) on Bob indices k+1..dB-1.
    Dimensions and hermiticity are checked here; unit trace and positivity are
    reported by :func:`validate`.
    """

    dA: int
    dB: int
    X: np.ndarray
    M: tuple = field(default_factory=tuple)
    N: tuple = field(default_factory=tuple)

    def __post_init__(self):
        dA, dB = int(self.dA), int(self.dB)
        if dA < 2:
            raise ValueError(f"dA must be at least 2, got {dA}")
        if dB < dA:
            raise ValueError(f"dB must be at least dA, got dA={dA}, dB={dB}")
        if len(self.M) != dA or len(self.N) != dA:
            raise ValueError(f"M and N must each hold {dA} blocks")
        object.__setattr__(self, "dA", dA)
        object.__setattr__(self, "dB", dB)
        object.__setattr__(self, "X", _block(self.X, dA, "X"))
        object.__setattr__(
            self, "M", tuple(_block(m, k, f"M[{k}]") for k, m in enumerate(self.M))
        )
        object.__setattr__(
            self,
            "N",
            tuple(_block(n, dB - 1 - k, f"N[{k}]") for k, n in enumerate(self.N)),
        )

    @property
    def dims(self):
        return (self.dA, self.dB)


@dataclass(frozen=True, eq=False)
class QubitQuditParams:
    """
    Qubit-qudit family: x00 on |00>, x11 on |1,dB-1>, x01 coupling
    |0,dB-1> with |1,0>, A on |0,1>..|0,dB-1>, B on |1,0>..|1,dB-2>.
    """

    dB: int
    x00: float
    x11: float
    x01: complex
    A: np.ndarray
    B: np.ndarray

    dA = 2

    def __post_init__(self):
        dB = int(self.dB)
        if dB < 2:
            raise ValueError(f"dB must be at least 2, got {dB}")
        x01 = complex(self.x01)
        if not np.isfinite(x01) or not np.isfinite([self.x00, self.x11]).all():
            raise ValueError("x00, x11 and x01 must be finite")
        object.__setattr__(self, "dB", dB)
        object.__setattr__(self, "x00", float(self.x00))
        object.__setattr__(self, "x11", float(self.x11))
        object.__setattr__(self, "x01", x01)
        object.__setattr__(self, "A", _block(self.A, dB - 1, "A"))
        object.__setattr__(self, "B", _block(self.B, dB - 1, "B"))

    @property
    def dims(self):
        return (2, self.dB)

    @property
    def X(self):
        return np.array(
            [[self.x00, self.x01], [self.x01.conjugate(), self.x11]],
            dtype=np.complex128,
        )

    # A and B occupy the slots N[0] and M[1] of the two-qubit member
    @property
    def M(self):
        return (np.zeros((0, 0), dtype=np.complex128), self.B)

    @property
    def N(self):
        return (self.A, np.zeros((0, 0), dtype=np.complex128))

    def as_family(self):
        """The dB = 2 member written as :class:`FamilyParams`."""
        if self.dB != 2:
            raise ValueError("only the dB = 2 member belongs to the general family")
        return FamilyParams(dA=2, dB=2, X=self.X, M=self.M, N=self.N)


class BlockIndices(NamedTuple):
    x: list
    m: list
    n: list


def block_indices(p):
    """SCB indices carrying X and each M[k], N[k] (same positions in rho and its partial transpose)."""
    dB = p.dB
    if isinstance(p, QubitQuditParams):
        return BlockIndices(
            x=[0, 2 * dB - 1],
            m=[[], list(range(dB, 2 * dB - 1))],
            n=[list(range(1, dB)), []],
        )
    return BlockIndices(
        x=[k * dB + k for k in range(p.dA)],
        m=[[k * dB + j for j in range(k)] for k in range(p.dA)],
        n=[[k * dB + j for j in range(k + 1, dB)] for k in range(p.dA)],
    )


def _place_blocks(rho, p):
    indices = block_indices(p)
    for k in range(p.dA):
        for idx, block in ((indices.m[k], p.M[k]), (indices.n[k], p.N[k])):
            if idx:
                rho[np.ix_(idx, idx)] = block


def assemble(p):
    """Dense density matrix of a family member, dimension dA * dB."""
    if isinstance(p, QubitQuditParams):
        return assemble_qubit_qudit(p)
    dA, dB = p.dA, p.dB
    rho = np.zeros((dA * dB, dA * dB), dtype=np.complex128)
    _place_blocks(rho, p)
    for i in range(dA):
        for j in range(dA):
            # diagonal x_kk sits on |kk>; x_ij couples |ij> with |ji>
            rho[i * dB + j, j * dB + i] = p.X[i, j]
    return rho


def assemble_qubit_qudit(q):
    dB = q.dB
    rho = np.zeros((2 * dB, 2 * dB), dtype=np.complex128)
    _place_blocks(rho, q)
    rho[0, 0] = q.x00
    rho[2 * dB - 1, 2 * dB - 1] = q.x11
    rho[dB - 1, dB] = q.x01
    rho[dB, dB - 1] = q.x01.conjugate()
    return rho


def pattern_mask(p):
    """Boolean mask of the entries a family member may populate."""
    n = p.dA * p.dB
    mask = np.zeros((n, n), dtype=bool)
    indices = block_indices(p)
    for groups in (indices.m, indices.n):
        for idx in groups:
            if idx:
                mask[np.ix_(idx, idx)] = True
    if isinstance(p, QubitQuditParams):
        for i in indices.x:
            mask[i, i] = True
        mask[p.dB - 1, p.dB] = mask[p.dB, p.dB - 1] = True
    else:
        for i in range(p.dA):
            for j in range(p.dA):
                mask[i * p.dB + j, j * p.dB + i] = True
    return mask


def family_from_matrix(rho, dA, dB, tol=0.0):
    """
    Read a dense matrix back as :class:`FamilyParams`.

    Raises ``ValueError`` when an entry outside the family pattern exceeds
    ``tol`` in magnitude.
    """
    rho = hermitian(rho)
    if rho.shape[0] != dA * dB:
        raise ValueError(f"matrix dimension {rho.shape[0]} != dA * dB = {dA * dB}")
    shape = FamilyParams(
        dA,
        dB,
        np.zeros((dA, dA)),
        [np.zeros((k, k)) for k in range(dA)],
        [np.zeros((dB - 1 - k, dB - 1 - k)) for k in range(dA)],
    )
    outside = np.abs(rho[~pattern_mask(shape)])
    if outside.size and outside.max() > tol:
        raise ValueError(
            f"matrix does not fit the family pattern: entry of size {outside.max():.3e}"
        )
    indices = block_indices(shape)
    X = np.array([[rho[i * dB + j, j * dB + i] for j in range(dA)] for i in range(dA)])
    M = [rho[np.ix_(idx, idx)] if idx else [] for idx in indices.m]
    N = [rho[np.ix_(idx, idx)] if idx else [] for idx in indices.n]
    return FamilyParams(dA, dB, X, M, N)


@dataclass
class ValidationReport:
    """
    상태 유효성 검사 결과

    - hermitian: 에르미트 여부 (1e-12 이하의 비대칭은 보정 후 통과)
    - trace / trace_ok: 대각합과 1과의 일치 여부
    - min_eigenvalue / psd: 최소 고유값과 양의 준정부호 여부
    - pattern_ok: 가족 구조의 희소성 패턴 만족 여부 (dense 입력이면 None)
    """

    hermitian: bool
    trace: float
    trace_ok: bool
    min_eigenvalue: float
    psd: bool
    pattern_ok: bool | None = None
    overall: bool = field(init=False)

    def __post_init__(self):
        self.overall = self.hermitian and self.trace_ok and self.psd
        if self.pattern_ok is not None:
            self.overall = self.overall and self.pattern_ok


def validate(state, tol=DEFAULT_TOL):
    """Check hermiticity, unit trace and positive semidefiniteness."""
    pattern_ok = None
    if isinstance(state, (FamilyParams, QubitQuditParams)):
        rho = assemble(state)
        pattern_ok = bool(np.all(rho[~pattern_mask(state)] == 0))
    else:
        rho = as_matrix(state)

    asymmetry = hermitian_asymmetry(rho)
    is_hermitian = asymmetry <= HERMITIAN_REPAIR_THRESHOLD * float(np.max(np.abs(rho)))
    if is_hermitian:
        check = is_psd(hermitian(rho), tol)
        psd, min_eigenvalue = check.is_psd, check.min_eigenvalue
    else:
        min_eigenvalue = float(hermitian_eigenvalues((rho + rho.conj().T) / 2)[0])
        psd = False

    trace = float(np.trace(rho).real)
    return ValidationReport(
        hermitian=is_hermitian,
        trace=trace,
        trace_ok=abs(trace - 1.0) <= TRACE_TOL,
        min_eigenvalue=min_eigenvalue,
        psd=psd,
        pattern_ok=pattern_ok,
    )


def _gram(rng, dim):
    if dim == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    gram = g.conj().T @ g / dim
    return (gram + gram.conj().T) / 2


def _is_positive_definite(rho):
    try:
        np.linalg.cholesky(rho)
    except np.linalg.LinAlgError:
        return False
    return True


def _largest_valid_scale(build):
    """Largest t in [0, 1] (by bisection) for which ``build(t)`` is positive definite."""
    if _is_positive_definite(build(1.0)):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(SHRINK_MAX_STEPS):
        mid = (lo + hi) / 2
        if _is_positive_definite(build(mid)):
            lo = mid
        else:
            hi = mid
        if hi - lo <= SHRINK_RESOLUTION:
            break
    return lo


def sample_random(dA, dB, seed, entanglement_bias=0.5):
    """
    Seeded random family member.

    Blocks are Gram matrices, x_kk are nonnegative, off-diagonal x_mn are
    complex Gaussians scaled by ``entanglement_bias`` and then shrunk by
    bisection until the assembled state is positive. The trace is normalized
    before shrinking since off-diagonal entries do not contribute to it.
    """
    if not 2 <= dA <= dB:
        raise ValueError(f"need 2 <= dA <= dB, got dA={dA}, dB={dB}")
    if not 0.0 <= entanglement_bias <= 1.0:
        raise ValueError("entanglement_bias must lie in [0, 1]")
    rng = np.random.default_rng(seed)

    M = [_gram(rng, k) for k in range(dA)]
    N = [_gram(rng, dB - 1 - k) for k in range(dA)]
    diagonal = rng.uniform(0.0, 1.0, size=dA)
    off = entanglement_bias * (
        rng.normal(size=(dA, dA)) + 1j * rng.normal(size=(dA, dA))
    )
    off = np.triu(off, 1)
    off = off + off.conj().T

    total = sum(np.trace(b).real for b in M + N) + diagonal.sum()
    M = [b / total for b in M]
    N = [b / total for b in N]
    diagonal = diagonal / total
    off = off / total

    def build(t):
        return FamilyParams(dA, dB, np.diag(diagonal) + t * off, M, N)

    scale = 0.0
    if np.any(off):
        scale = _largest_valid_scale(lambda t: assemble(build(t)))
        logger.debug("Sample seed=%s shrunk off-diagonal X by %.6f", seed, scale)
    return build(scale)


def sample_qubit_qudit(dB, seed, entanglement_bias=0.5):
    """Seeded random qubit-qudit member, built like :func:`sample_random`."""
    if dB < 2:
        raise ValueError(f"dB must be at least 2, got {dB}")
    if not 0.0 <= entanglement_bias <= 1.0:
        raise ValueError("entanglement_bias must lie in [0, 1]")
    rng = np.random.default_rng(seed)

    A = _gram(rng, dB - 1)
    B = _gram(rng, dB - 1)
    x00, x11 = rng.uniform(0.0, 1.0, size=2)
    x01 = entanglement_bias * complex(rng.normal(), rng.normal())

    total = np.trace(A).real + np.trace(B).real + x00 + x11
    A, B = A / total, B / total
    x00, x11, x01 = x00 / total, x11 / total, x01 / total

    def build(t):
        return QubitQuditParams(dB, x00, x11, t * x01, A, B)

    scale = 0.0
    if x01 != 0:
        scale = _largest_valid_scale(lambda t: assemble_qubit_qudit(build(t)))
    return build(scale)
