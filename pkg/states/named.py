"""
Werner and isotropic states on d x d.

Both are built from 0/1 pattern matrices scaled by eps/d, so that the
partial transpose of one is entrywise identical to the other.
"""

from dataclasses import dataclass

import numpy as np

from linalg.hermitian import partial_transpose

from .family import assemble, family_from_matrix

RANGE_SLACK = 1e-12


def werner_eps_range(d):
    """Closed eps interval in which the Werner state is positive semidefinite."""
    return (-1.0 / (d - 1), 1.0 / (d + 1))


def isotropic_eps_range(d):
    return (-1.0 / (d * d - 1), 1.0)


def _check_dimension(d):
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d}")
    return int(d)


@dataclass(frozen=True)
class WernerSpec:
    d: int
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "d", _check_dimension(self.d))
        object.__setattr__(self, "eps", float(self.eps))
        if not np.isfinite(self.eps):
            raise ValueError("eps must be finite")

    @property
    def is_valid(self):
        lo, hi = werner_eps_range(self.d)
        return lo - RANGE_SLACK <= self.eps <= hi + RANGE_SLACK


@dataclass(frozen=True)
class IsotropicSpec:
    d: int
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "d", _check_dimension(self.d))
        object.__setattr__(self, "eps", float(self.eps))
        if not np.isfinite(self.eps):
            raise ValueError("eps must be finite")

    @property
    def is_valid(self):
        lo, hi = isotropic_eps_range(self.d)
        return lo - RANGE_SLACK <= self.eps <= hi + RANGE_SLACK


def flip_operator(d):
    """Swap operator F|i>|j> = |j>|i> on C^d x C^d."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    flip = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            flip[i * d + j, j * d + i] = 1.0
    return flip


def _diagonal_pairs(d):
    """Sum over i, j of |ii><jj| (d times the maximally entangled projector)."""
    pairs = np.zeros((d * d, d * d), dtype=np.complex128)
    diagonal = [i * d + i for i in range(d)]
    pairs[np.ix_(diagonal, diagonal)] = 1.0
    return pairs


def max_entangled_projector(d):
    """P+ = |phi+><phi+| with |phi+> = sum_i |ii> / sqrt(d)."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    return _diagonal_pairs(d) / d


def werner(spec):
    """(1 - eps) I / d^2 + eps F / d."""
    d, eps = spec.d, spec.eps
    return (1 - eps) / d**2 * np.eye(d * d, dtype=np.complex128) + (
        eps / d
    ) * flip_operator(d)


def isotropic(spec):
    """(1 - eps) I / d^2 + eps P+."""
    d, eps = spec.d, spec.eps
    return (1 - eps) / d**2 * np.eye(d * d, dtype=np.complex128) + (
        eps / d
    ) * _diagonal_pairs(d)


def phi_to_eps(phi, d):
    """Werner's expectation value Phi = <F> to the eps parameter."""
    return -(1 - d * phi) / (d * d - 1)


def embed_werner(d, eps):
    """
    Werner state as a family member.

    Every block is read off the Werner matrix itself. The diagonal of X comes
    out as (1 - eps)/d^2 + eps/d, which is what <kk|rho_W|kk> evaluates to;
    the closed form (1 - eps(d+1))/d^2 quoted in some treatments does not
    reproduce the matrix.
    """
    spec = WernerSpec(d, eps)
    if not spec.is_valid:
        lo, hi = werner_eps_range(spec.d)
        raise ValueError(
            f"Werner eps={spec.eps} outside the valid range [{lo}, {hi}] for d={spec.d}"
        )
    return family_from_matrix(werner(spec), spec.d, spec.d)


def isotropic_werner_duality(d, eps):
    """
    Compare the partial transpose of the isotropic state with the Werner-form
    operator (1 - eps) I / d^2 + (eps / d) F. Returns ``(matches, max_deviation)``.
    """
    d = _check_dimension(d)
    transposed = partial_transpose(isotropic(IsotropicSpec(d, eps)), d, d)
    target = werner(WernerSpec(d, eps))
    deviation = float(np.max(np.abs(transposed - target)))
    return deviation == 0.0, deviation


def werner_parameter(p, tol=1e-12):
    """Return eps when family parameters reproduce a Werner state, else ``None``."""
    if p.dA != p.dB:
        return None
    d = p.dA
    eps = float(p.X[0, 1].real) * d
    deviation = np.max(np.abs(assemble(p) - werner(WernerSpec(d, eps))))
    return eps if deviation <= tol else None


def match_werner(rho, d, tol=1e-12):
    """eps of the Werner state equal to ``rho`` (via <F>), or ``None``."""
    phi = float(np.trace(flip_operator(d) @ rho).real)
    eps = phi_to_eps(phi, d)
    deviation = np.max(np.abs(rho - werner(WernerSpec(d, eps))))
    return eps if deviation <= tol else None


def match_isotropic(rho, d, tol=1e-12):
    """eps of the isotropic state equal to ``rho`` (via <P+>), or ``None``."""
    fidelity = float(np.trace(max_entangled_projector(d) @ rho).real)
    eps = (fidelity - 1 / d**2) / (1 - 1 / d**2)
    deviation = np.max(np.abs(rho - isotropic(IsotropicSpec(d, eps))))
    return eps if deviation <= tol else None
