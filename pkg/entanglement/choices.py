from django.db import models


class Verdict(models.TextChoices):
    NPT_ENTANGLED = "NPT_ENTANGLED", "NPT (entangled)"
    PPT_SEPARABLE = "PPT_SEPARABLE", "PPT and separable"
    PPT_UNDECIDED = "PPT_UNDECIDED", "PPT, separability undecided"


class Reason(models.TextChoices):
    """Why a PPT state is known to be separable."""

    X_NULL_FORCED = "X_NULL_FORCED", "PPT forces X to vanish"
    X_DIAGONAL = "X_DIAGONAL", "PPT forces X to be diagonal"
    SIMPLY_SEPARABLE = "SIMPLY_SEPARABLE", "Block diagonal in Alice's basis"
    PRODUCT_SUBSPACE_DIM_LE_6 = (
        "PRODUCT_SUBSPACE_DIM_LE_6",
        "X support inside a product subspace of dimension at most 6",
    )
    WERNER = "WERNER", "Werner state (or isotropic via partial transpose)"
    NONE = "NONE", "No separability certificate"


class XPattern(models.TextChoices):
    NULL = "NULL", "Null matrix"
    DIAGONAL = "DIAGONAL", "Diagonal"
    ANTIDIAG_2x2 = "ANTIDIAG_2x2", "Direct sum of [[0, x], [x*, 0]]"
    LOWER_2x2 = "LOWER_2x2", "Direct sum of [[0, x], [x*, y]]"
    GENERAL = "GENERAL", "General"
