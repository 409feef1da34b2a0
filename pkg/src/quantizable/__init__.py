"""Quantizing surface invariants into two-dimensional TQFTs.

Given the values of an invariant on closed surfaces, find the smallest
almost-Frobenius algebra that computes it, decide whether it extends to a
monoidal TQFT, and predict the invariant at higher genus.
"""
from .frobenius import AlmostFrobeniusAlgebra, WideFrobeniusAlgebra, check_monoidality
from .quantize import InvariantSequence, extract_recurrence, predict, quantization_report

__all__ = [
    "AlmostFrobeniusAlgebra",
    "WideFrobeniusAlgebra",
    "check_monoidality",
    "InvariantSequence",
    "extract_recurrence",
    "predict",
    "quantization_report",
]
