"""Orthogonal space-time block code designs"""
from .design import (
    DESIGN_NAMES,
    DesignCatalog,
    OrthogonalDesign,
    OrthogonalityReport,
    build_design,
    codeword,
    format_design,
    relay_columns,
    verify_orthogonality,
)

__all__ = [
    "DESIGN_NAMES",
    "DesignCatalog",
    "OrthogonalDesign",
    "OrthogonalityReport",
    "build_design",
    "codeword",
    "format_design",
    "relay_columns",
    "verify_orthogonality",
]
