import json
import math

import numpy as np
from rest_framework import serializers

from states.family import FamilyParams, QubitQuditParams
from states.named import IsotropicSpec, WernerSpec

from .documents import DenseState, DocumentKind, MatrixDocument


class ComplexField(serializers.Field):
    """Complex scalar written as ``[re, im]``; plain real numbers are accepted on input."""

    default_error_messages = {
        "invalid": "Expected a number or an [re, im] pair.",
        "non_finite": "Complex entries must be finite.",
    }

    @staticmethod
    def _is_number(value):
        return isinstance(value, (int, float)) and not isinstance(value, bool)

    def to_internal_value(self, data):
        if self._is_number(data):
            value = complex(float(data), 0.0)
        elif (
            isinstance(data, (list, tuple))
            and len(data) == 2
            and all(self._is_number(part) for part in data)
        ):
            value = complex(float(data[0]), float(data[1]))
        else:
            self.fail("invalid")
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            self.fail("non_finite")
        return value

    def to_representation(self, value):
        value = complex(value)
        return [value.real, value.imag]


class ComplexMatrixField(serializers.Field):
    """Square complex matrix as row-major nested arrays of ``[re, im]`` pairs."""

    default_error_messages = {
        "not_a_list": "Expected a list of rows.",
        "empty": "Matrix may not be empty.",
        "not_square": "Matrix must be square.",
    }

    def __init__(self, *, allow_empty=False, **kwargs):
        self.allow_empty = allow_empty
        self.entry = ComplexField()
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if not isinstance(data, list):
            self.fail("not_a_list")
        if not data:
            if self.allow_empty:
                return np.zeros((0, 0), dtype=np.complex128)
            self.fail("empty")
        rows = []
        for row in data:
            if not isinstance(row, list) or len(row) != len(data):
                self.fail("not_square")
            rows.append([self.entry.to_internal_value(value) for value in row])
        return np.array(rows, dtype=np.complex128)

    def to_representation(self, value):
        return [[self.entry.to_representation(entry) for entry in row] for row in value]


class DensePayloadSerializer(serializers.Serializer):
    matrix = ComplexMatrixField()

    def build(self, dims):
        return DenseState(dims[0], dims[1], self.validated_data["matrix"])


class FamilyPayloadSerializer(serializers.Serializer):
    X = ComplexMatrixField()
    M = serializers.ListField(child=ComplexMatrixField(allow_empty=True))
    N = serializers.ListField(child=ComplexMatrixField(allow_empty=True))

    def build(self, dims):
        data = self.validated_data
        return FamilyParams(dims[0], dims[1], data["X"], data["M"], data["N"])


class QubitQuditPayloadSerializer(serializers.Serializer):
    x00 = serializers.FloatField()
    x11 = serializers.FloatField()
    x01 = ComplexField()
    A = ComplexMatrixField()
    B = ComplexMatrixField()

    def build(self, dims):
        if dims[0] != 2:
            raise ValueError(f"qubit-qudit documents need dA = 2, got {dims[0]}")
        data = self.validated_data
        return QubitQuditParams(
            dims[1], data["x00"], data["x11"], data["x01"], data["A"], data["B"]
        )


class EpsPayloadSerializer(serializers.Serializer):
    eps = serializers.FloatField()

    spec_class = None

    def build(self, dims):
        if dims[0] != dims[1]:
            raise ValueError(f"{self.spec_class.__name__} needs dims [d, d], got {list(dims)}")
        return self.spec_class(dims[0], self.validated_data["eps"])


class WernerPayloadSerializer(EpsPayloadSerializer):
    spec_class = WernerSpec


class IsotropicPayloadSerializer(EpsPayloadSerializer):
    spec_class = IsotropicSpec


PAYLOAD_SERIALIZERS = {
    DocumentKind.DENSE: DensePayloadSerializer,
    DocumentKind.FAMILY: FamilyPayloadSerializer,
    DocumentKind.QUBIT_QUDIT: QubitQuditPayloadSerializer,
    DocumentKind.WERNER: WernerPayloadSerializer,
    DocumentKind.ISOTROPIC: IsotropicPayloadSerializer,
}


def payload_serializer_class(kind):
    return PAYLOAD_SERIALIZERS[DocumentKind(kind)]


class MatrixDocumentSerializer(serializers.Serializer):
    """
    Matrix document ``{"kind", "dims", "payload"}``.

    Validation builds the domain object for the payload; ``save()`` returns a
    :class:`MatrixDocument`.
    """

    kind = serializers.ChoiceField(choices=DocumentKind.choices)
    dims = serializers.ListField(
        child=serializers.IntegerField(min_value=1), min_length=2, max_length=2
    )
    payload = serializers.DictField()

    def validate(self, attrs):
        payload = payload_serializer_class(attrs["kind"])(data=attrs["payload"])
        if not payload.is_valid():
            raise serializers.ValidationError({"payload": payload.errors})
        try:
            attrs["state"] = payload.build(attrs["dims"])
        except ValueError as exc:
            raise serializers.ValidationError({"payload": [str(exc)]}) from exc
        return attrs

    def create(self, validated_data):
        return MatrixDocument(
            kind=DocumentKind(validated_data["kind"]),
            dims=tuple(validated_data["dims"]),
            state=validated_data["state"],
        )

    def to_representation(self, instance):
        return {
            "kind": str(instance.kind),
            "dims": list(instance.dims),
            "payload": payload_serializer_class(instance.kind)(instance.state).data,
        }


def parse_document(text):
    """JSON text to :class:`MatrixDocument`; raises ``ValidationError`` or ``ValueError``."""
    data = json.loads(text)
    if not isinstance(data, dict):
        raise serializers.ValidationError("document must be a JSON object")
    serializer = MatrixDocumentSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def render_document(document):
    return json.dumps(MatrixDocumentSerializer(document).data, indent=2)
