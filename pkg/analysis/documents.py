"""In-memory form of a JSON matrix document."""

from dataclasses import dataclass

import numpy as np
from django.db import models

from linalg.hermitian import as_matrix
from states.family import FamilyParams, QubitQuditParams, assemble, family_from_matrix
from states.named import embed_werner, isotropic, werner


class DocumentKind(models.TextChoices):
    DENSE = "dense", "Dense matrix"
    FAMILY = "family", "Family parameters"
    QUBIT_QUDIT = "qubit_qudit", "Qubit-qudit parameters"
    WERNER = "werner", "Werner state"
    ISOTROPIC = "isotropic", "Isotropic state"


@dataclass(frozen=True, eq=False)
class DenseState:
    dA: int
    dB: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = as_matrix(self.matrix)
        if matrix.shape[0] != self.dA * self.dB:
            raise ValueError(
                f"matrix dimension {matrix.shape[0]} != dA * dB = {self.dA * self.dB}"
            )
        object.__setattr__(self, "matrix", matrix)

    @property
    def dims(self):
        return (self.dA, self.dB)


@dataclass(frozen=True, eq=False)
class MatrixDocument:
    kind: str
    dims: tuple
    state: object

    def density_matrix(self):
        if self.kind == DocumentKind.DENSE:
            return self.state.matrix
        if self.kind in (DocumentKind.FAMILY, DocumentKind.QUBIT_QUDIT):
            return assemble(self.state)
        if self.kind == DocumentKind.WERNER:
            return werner(self.state)
        return isotropic(self.state)

    def family_params(self):
        """Family-structured parameters for this document, or ``None`` if it has none."""
        if isinstance(self.state, (FamilyParams, QubitQuditParams)):
            return self.state
        try:
            if self.kind == DocumentKind.WERNER:
                return embed_werner(self.state.d, self.state.eps)
            if self.kind == DocumentKind.DENSE:
                return family_from_matrix(self.state.matrix, *self.dims)
        except ValueError:
            return None
        return None

    def validation_target(self):
        if isinstance(self.state, (FamilyParams, QubitQuditParams)):
            return self.state
        return self.density_matrix()
