"""Exact dimension tables for the K-theory of cones over smooth projective curves."""

__version__ = "0.1.0"

from .cohomology import CurveModel, bott, cech_dimension, cech_oracle, h_line_bundle, h_twisted_forms, plane_curve, veronese
from .errors import (
    ConsistencyError,
    InvalidInputError,
    KConeError,
    NegativeCellError,
    NonHomogeneousError,
    NotACurveError,
    PolynomialSyntaxError,
    SingularCurveError,
    StabilizationError,
)
from .forms import FormsComplex
from .graded import GradedQuotient, hilbert_profile, plane_curve_ring, skew_lines_ring, smoothness_check, veronese_ring
from .ktheory import BinomDim, KReport, TransDeg, WeightCell, fixture, hc_conic, report
from .linalg import Echelon, ExactMatrix, kernel_basis, rank, span_dims
from .poly import HPoly, RingContext, parse_homogeneous

__all__ = [
    "BinomDim",
    "ConsistencyError",
    "CurveModel",
    "Echelon",
    "ExactMatrix",
    "FormsComplex",
    "GradedQuotient",
    "HPoly",
    "InvalidInputError",
    "KConeError",
    "KReport",
    "NegativeCellError",
    "NonHomogeneousError",
    "NotACurveError",
    "PolynomialSyntaxError",
    "RingContext",
    "SingularCurveError",
    "StabilizationError",
    "TransDeg",
    "WeightCell",
    "bott",
    "cech_dimension",
    "cech_oracle",
    "fixture",
    "h_line_bundle",
    "h_twisted_forms",
    "hc_conic",
    "hilbert_profile",
    "kernel_basis",
    "parse_homogeneous",
    "plane_curve",
    "plane_curve_ring",
    "rank",
    "report",
    "skew_lines_ring",
    "smoothness_check",
    "span_dims",
    "veronese",
    "veronese_ring",
]
