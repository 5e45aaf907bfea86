"""
Analysis, reorder and sweep reports built on top of the library apps.

Each report is a plain dataclass rendered through a DRF serializer.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

import numpy as np
from rest_framework import serializers

from entanglement.reorder import apply_permutation, subspace_permutation, verify_block_diagonal
from entanglement.separability import classify, classify_dense
from entanglement.transpose import (
    dense_pt_spectrum,
    negativity,
    partial_transpose,
    pt_block_spectrum,
    verify_direct_sum,
)
from linalg.hermitian import is_psd
from states.family import validate
from states.named import IsotropicSpec, WernerSpec, isotropic, werner

from .documents import DenseState, DocumentKind, MatrixDocument
from .serializers import MatrixDocumentSerializer

logger = logging.getLogger(__name__)

INVALID_STATE = "INVALID_STATE"
SWEEP_COLUMNS = ("eps", "min_pt_eigenvalue", "negativity", "verdict", "min_eigenvalue")


class NotFamilyStructuredError(ValueError):
    pass


@dataclass
class AnalysisReport:
    kind: str
    dims: tuple
    tolerance: float
    validation: object
    block_spectrum: object
    dense_spectrum: object
    negativity: object
    classification: object
    direct_sum: object


@dataclass
class ReorderReport:
    dims: tuple
    permutation: tuple
    block_sizes: tuple
    block_check: object
    document: MatrixDocument


@dataclass
class SweepRow:
    eps: float
    min_pt_eigenvalue: float
    negativity: float
    verdict: str
    min_eigenvalue: float

    def as_row(self):
        return [getattr(self, column) for column in SWEEP_COLUMNS]


class ValidationReportSerializer(serializers.Serializer):
    hermitian = serializers.BooleanField()
    trace = serializers.FloatField()
    trace_ok = serializers.BooleanField()
    min_eigenvalue = serializers.FloatField()
    psd = serializers.BooleanField()
    pattern_ok = serializers.BooleanField(allow_null=True)
    overall = serializers.BooleanField()


class BlockSpectrumSerializer(serializers.Serializer):
    x_eigs = serializers.ListField(child=serializers.FloatField())
    m_eigs = serializers.ListField(child=serializers.ListField(child=serializers.FloatField()))
    n_eigs = serializers.ListField(child=serializers.ListField(child=serializers.FloatField()))


class ClassificationSerializer(serializers.Serializer):
    verdict = serializers.CharField()
    reason = serializers.CharField()
    negativity = serializers.FloatField()
    is_ppt = serializers.BooleanField()


class DirectSumSerializer(serializers.Serializer):
    verified = serializers.BooleanField()
    max_deviation = serializers.FloatField()


class BlockCheckSerializer(serializers.Serializer):
    is_block_diagonal = serializers.BooleanField()
    max_off_block = serializers.FloatField()


class AnalysisReportSerializer(serializers.Serializer):
    kind = serializers.CharField()
    dims = serializers.ListField(child=serializers.IntegerField())
    tolerance = serializers.FloatField()
    validation = ValidationReportSerializer()
    block_spectrum = BlockSpectrumSerializer(allow_null=True)
    dense_spectrum = serializers.ListField(child=serializers.FloatField(), allow_null=True)
    negativity = serializers.FloatField(source="negativity.negativity")
    negative_eigenvalues = serializers.ListField(
        child=serializers.FloatField(), source="negativity.negative_eigenvalues"
    )
    is_ppt = serializers.BooleanField(source="negativity.is_ppt")
    classification = ClassificationSerializer()
    direct_sum_verified = DirectSumSerializer(source="direct_sum", allow_null=True)


class ReorderReportSerializer(serializers.Serializer):
    dims = serializers.ListField(child=serializers.IntegerField())
    permutation = serializers.ListField(child=serializers.IntegerField())
    block_sizes = serializers.ListField(child=serializers.IntegerField())
    block_check = BlockCheckSerializer()
    document = serializers.SerializerMethodField()

    def get_document(self, report):
        return MatrixDocumentSerializer(report.document).data


def analyze_document(document, tol, dense_max_dim=64):
    dA, dB = document.dims
    params = document.family_params()
    rho = document.density_matrix()
    validation = validate(document.validation_target(), tol)

    if params is None:
        dense = dense_pt_spectrum(rho, dA, dB)
        return AnalysisReport(
            kind=str(document.kind),
            dims=document.dims,
            tolerance=tol,
            validation=validation,
            block_spectrum=None,
            dense_spectrum=dense,
            negativity=negativity(dense, tol),
            classification=classify_dense(rho, dA, dB, tol),
            direct_sum=None,
        )

    spectrum = pt_block_spectrum(params)
    dense = direct_sum = None
    if dA * dB <= dense_max_dim or document.kind == DocumentKind.DENSE:
        dense = dense_pt_spectrum(rho, dA, dB)
        direct_sum = verify_direct_sum(params)
    classification = classify(params, tol)
    logger.debug(
        "analyzed %s document %sx%s: %s (%s)",
        document.kind,
        dA,
        dB,
        classification.verdict,
        classification.reason,
    )
    return AnalysisReport(
        kind=str(document.kind),
        dims=document.dims,
        tolerance=tol,
        validation=validation,
        block_spectrum=spectrum,
        dense_spectrum=dense,
        negativity=negativity(spectrum, tol),
        classification=classification,
        direct_sum=direct_sum,
    )


def reorder_document(document):
    params = document.family_params()
    if params is None:
        raise NotFamilyStructuredError(
            f"{document.kind} document is not family structured; reorder needs family parameters"
        )
    dA, dB = document.dims
    perm = subspace_permutation(params)
    reordered = apply_permutation(partial_transpose(document.density_matrix(), dA, dB), perm)
    return ReorderReport(
        dims=document.dims,
        permutation=perm.mapping,
        block_sizes=perm.block_sizes,
        block_check=verify_block_diagonal(reordered, perm.block_sizes),
        document=MatrixDocument(DocumentKind.DENSE, document.dims, DenseState(dA, dB, reordered)),
    )


def parse_eps_grid(text):
    """``START:STOP:NUM`` (fractions such as ``-1/3`` allowed) to an inclusive grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"eps grid must look like START:STOP:NUM, got {text!r}")
    try:
        start, stop = (float(Fraction(part.strip())) for part in parts[:2])
        count = int(parts[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid eps grid {text!r}: {exc}") from exc
    if count < 1:
        raise ValueError("eps grid needs at least one point")
    return np.linspace(start, stop, count)


def sweep_point(kind, d, eps, tol):
    if kind == DocumentKind.WERNER:
        rho = werner(WernerSpec(d, eps))
    elif kind == DocumentKind.ISOTROPIC:
        rho = isotropic(IsotropicSpec(d, eps))
    else:
        raise ValueError(f"sweep supports werner and isotropic states, got {kind!r}")
    pt_eigenvalues = dense_pt_spectrum(rho, d, d)
    state = is_psd(rho, tol)
    if state.is_psd:
        verdict = str(classify_dense(rho, d, d, tol).verdict)
    else:
        verdict = INVALID_STATE
    return SweepRow(
        eps=float(eps),
        min_pt_eigenvalue=float(pt_eigenvalues[0]),
        negativity=negativity(pt_eigenvalues, tol).negativity,
        verdict=verdict,
        min_eigenvalue=state.min_eigenvalue,
    )


def sweep(kind, d, grid, tol, workers=1):
    """One row per grid point, in grid order."""
    evaluate = partial(sweep_point, kind, d, tol=tol)
    if workers <= 1:
        return [evaluate(eps) for eps in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, grid))
