import numpy as np
import pytest

from states.family import FamilyParams, assemble


def _hermitian(diagonal, upper):
    """Hermitian matrix from its diagonal and row-major strict upper triangle."""
    dim = len(diagonal)
    h = np.diag(np.asarray(diagonal, dtype=np.complex128))
    rows, cols = np.triu_indices(dim, 1)
    h[rows, cols] = upper
    h[cols, rows] = np.conj(upper)
    return h


@pytest.fixture
def worked_example_params():
    """
    d = 4 family member with every parameter distinct.

    Diagonally dominant, so both rho and its partial transpose are positive
    definite; the diagonal sums to one.
    """
    X = _hermitian(
        [0.05, 0.06, 0.07, 0.08],
        [0.004 + 0.003j, 0.006 - 0.002j, 0.001 + 0.007j, -0.005 + 0.004j, 0.008j, 0.003 - 0.006j],
    )
    A = _hermitian([0.061, 0.062, 0.063], [0.002 + 0.001j, -0.003j, 0.004])
    B = _hermitian([0.059, 0.058], [0.0025 - 0.0015j])
    C = _hermitian([0.057, 0.066], [-0.0035 + 0.002j])
    D = _hermitian([0.060, 0.0615, 0.0635], [0.0015j, 0.0045, -0.002 - 0.002j])
    return FamilyParams(
        dA=4,
        dB=4,
        X=X,
        M=[[], [[0.064]], C, D],
        N=[A, B, [[0.065]], []],
    )


@pytest.fixture
def worked_example_rho(worked_example_params):
    return assemble(worked_example_params)
