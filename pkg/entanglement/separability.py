"""
Separability certificates for PPT states.

Only sufficient conditions are implemented: a ``PPT_UNDECIDED`` verdict means
none of them applied, not that the state is entangled.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from linalg.hermitian import DEFAULT_TOL, as_matrix, hermitian, hermitian_eigenvalues
from states.family import assemble, block_indices
from states.named import match_isotropic, match_werner, werner_parameter

from .choices import Reason, Verdict, XPattern
from .transpose import negativity, partial_transpose, pt_block_spectrum

logger = logging.getLogger(__name__)

PRODUCT_SUBSPACE_MAX_DIM = 6


class NotSimplySeparableError(ValueError):
    pass


@dataclass
class SeparableTerm:
    """One product term ``weight * |a><a| (x) sigma``."""

    weight: float
    alice: np.ndarray
    bob: np.ndarray


@dataclass
class SeparableDecomposition:
    dA: int
    dB: int
    terms: list = field(default_factory=list)

    def reconstruct(self):
        rho = np.zeros((self.dA * self.dB, self.dA * self.dB), dtype=np.complex128)
        for term in self.terms:
            rho += term.weight * np.kron(term.alice, term.bob)
        return rho


@dataclass
class Classification:
    is_ppt: bool
    verdict: str
    reason: str
    negativity: float

    def as_dict(self):
        return {
            "verdict": str(self.verdict),
            "reason": str(self.reason),
            "negativity": self.negativity,
            "is_ppt": self.is_ppt,
        }


@dataclass
class BlockPartition:
    """SCB index groups in canonical order: X, then M_k and N_k for each k."""

    groups: list

    @property
    def sizes(self):
        return [len(group) for group in self.groups]

    def flat(self):
        return [index for group in self.groups for index in group]


def _alice_blocks(rho, dA, dB):
    return as_matrix(rho).reshape(dA, dB, dA, dB)


def is_simply_separable(rho, dA, dB, tol=DEFAULT_TOL):
    """True when every off-diagonal dB x dB block (in Alice's basis) is below ``tol``."""
    blocks = np.abs(_alice_blocks(rho, dA, dB))
    off = ~np.eye(dA, dtype=bool)
    return bool(np.all(blocks.transpose(0, 2, 1, 3)[off] <= tol))


def decompose_simply_separable(rho, dA, dB, tol=DEFAULT_TOL):
    """
    Write a block-diagonal state as sum_i p_i |i><i| (x) sigma_i.

    Zero-weight blocks are dropped; every sigma_i is a unit-trace density
    matrix on Bob's side.
    """
    if not is_simply_separable(rho, dA, dB, tol):
        raise NotSimplySeparableError(
            "state has off-diagonal blocks in Alice's computational basis"
        )
    blocks = _alice_blocks(rho, dA, dB)
    decomposition = SeparableDecomposition(dA=dA, dB=dB)
    for i in range(dA):
        block = blocks[i, :, i, :]
        weight = float(np.trace(block).real)
        if weight <= tol:
            continue
        alice = np.zeros((dA, dA), dtype=np.complex128)
        alice[i, i] = 1.0
        decomposition.terms.append(SeparableTerm(weight, alice, block / weight))
    return decomposition


def x_pattern(X, tol=DEFAULT_TOL):
    """Recognize the shape of X; ties go to the most specific pattern."""
    X = as_matrix(X)
    nonzero = np.abs(X) > tol
    if not nonzero.any():
        return XPattern.NULL
    if not (nonzero & ~np.eye(len(X), dtype=bool)).any():
        return XPattern.DIAGONAL
    if len(X) % 2 == 0:
        # everything must stay inside the 2x2 diagonal blocks with x_{2i,2i} = 0
        pairs = np.arange(len(X)) // 2
        in_pairs = pairs[:, None] == pairs[None, :]
        if not (nonzero & ~in_pairs).any() and not nonzero[::2, ::2].diagonal().any():
            if not nonzero[1::2, 1::2].diagonal().any():
                return XPattern.ANTIDIAG_2x2
            return XPattern.LOWER_2x2
    return XPattern.GENERAL


def _diagonal_reason(X, tol):
    """A PPT state with diagonal X is simply separable; name the subfamily it came from."""
    diagonal = np.abs(np.diag(X))
    if len(X) % 2 == 0 and np.all(diagonal[::2] <= tol):
        return Reason.X_DIAGONAL
    return Reason.SIMPLY_SEPARABLE


def product_hull(pt, dB, seeds, tol=DEFAULT_TOL):
    """
    Smallest product subspace span{|a>: a in S_A} (x) span{|b>: b in S_B}
    containing ``seeds`` and closed under the nonzero couplings of ``pt``.

    Returns ``(S_A, S_B)``.
    """
    coupled = np.abs(as_matrix(pt)) > tol
    members = set(seeds)
    while True:
        stack = list(members)
        while stack:
            i = stack.pop()
            for j in np.flatnonzero(coupled[i]):
                j = int(j)
                if j not in members:
                    members.add(j)
                    stack.append(j)
        alice = sorted({i // dB for i in members})
        bob = sorted({i % dB for i in members})
        hull = {a * dB + b for a in alice for b in bob}
        if hull == members:
            return alice, bob
        members = hull


def _x_support(p, tol):
    """SCB indices of the X rows holding an entry above ``tol``."""
    rows = np.any(np.abs(as_matrix(p.X)) > tol, axis=1)
    return [index for index, live in zip(block_indices(p).x, rows) if live]


def _product_subspace_applies(p, tol):
    pt = partial_transpose(assemble(p), p.dA, p.dB)
    alice, bob = product_hull(pt, p.dB, _x_support(p, tol), tol)
    logger.debug("product hull of X support: |S_A|=%d |S_B|=%d", len(alice), len(bob))
    return len(alice) * len(bob) <= PRODUCT_SUBSPACE_MAX_DIM


def _ppt_reason(p, tol):
    pattern = x_pattern(p.X, tol)
    if pattern == XPattern.NULL:
        return Reason.X_NULL_FORCED
    if pattern == XPattern.DIAGONAL:
        return _diagonal_reason(p.X, tol)
    if werner_parameter(p) is not None:
        return Reason.WERNER
    if _product_subspace_applies(p, tol):
        return Reason.PRODUCT_SUBSPACE_DIM_LE_6
    return Reason.NONE


def _verdict(reason):
    return Verdict.PPT_SEPARABLE if reason != Reason.NONE else Verdict.PPT_UNDECIDED


def classify(p, tol=DEFAULT_TOL):
    """Classify a family member (general or qubit-qudit) from its block spectrum."""
    result = negativity(pt_block_spectrum(p), tol)
    if not result.is_ppt:
        return Classification(False, Verdict.NPT_ENTANGLED, Reason.NONE, result.negativity)
    reason = _ppt_reason(p, tol)
    return Classification(True, _verdict(reason), reason, 0.0)


def classify_dense(rho, dA, dB, tol=DEFAULT_TOL):
    """Classify an arbitrary dA x dB density matrix from its dense partial transpose."""
    rho = hermitian(rho)
    result = negativity(hermitian_eigenvalues(partial_transpose(rho, dA, dB)), tol)
    if not result.is_ppt:
        return Classification(False, Verdict.NPT_ENTANGLED, Reason.NONE, result.negativity)
    if is_simply_separable(rho, dA, dB, tol):
        reason = Reason.SIMPLY_SEPARABLE
    elif dA * dB <= PRODUCT_SUBSPACE_MAX_DIM:
        reason = Reason.PRODUCT_SUBSPACE_DIM_LE_6
    elif dA == dB and (
        match_werner(rho, dA) is not None or match_isotropic(rho, dA) is not None
    ):
        reason = Reason.WERNER
    else:
        reason = Reason.NONE
    return Classification(True, _verdict(reason), reason, 0.0)


def subspace_partition(p):
    indices = block_indices(p)
    groups = [list(indices.x)]
    for m, n in zip(indices.m, indices.n):
        groups.extend(group for group in (m, n) if group)
    return BlockPartition(groups)
