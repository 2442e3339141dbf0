"""Sesquilinear form measures: positive decompositions and spectral W-dilations."""

from ._sfmkit import (
    DEFAULT_TOL,
    Decomposition,
    Dilation,
    Measure,
    arc_moment,
    associated_decomposition,
    build_dilation,
    coherent_vector,
    decompose,
    deflate_diagonalize,
    equivalent,
    phase_measure,
    probabilities,
    random_measure,
    strictify,
    trace_norm,
    verify_decomposition,
    verify_dilation,
)

__all__ = [
    "DEFAULT_TOL",
    "Decomposition",
    "Dilation",
    "Measure",
    "arc_moment",
    "associated_decomposition",
    "build_dilation",
    "coherent_vector",
    "decompose",
    "deflate_diagonalize",
    "equivalent",
    "phase_measure",
    "probabilities",
    "random_measure",
    "strictify",
    "trace_norm",
    "verify_decomposition",
    "verify_dilation",
]
