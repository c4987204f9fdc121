"""Exact homological algebra for the Auslander orders of nodal curves."""

from .algebra_tables import (
    CurveData,
    HomTable,
    QuiverPresentation,
    build_general_nodal_algebra,
    build_kronecker_algebra,
    build_node_algebra,
    minimal_projective_resolution,
)
from .complexes import (
    ChainMap,
    ExtTable,
    ProjComplex,
    cone,
    ext_table,
    is_nullhomotopic,
    quasi_iso_certify,
    regrade,
    shift,
)
from .errors import CertificationError, FlopcatError, InvalidCurveError, NoClassError, NotInSubcategoryError, PreconditionError
from .reports import CheckReport

__all__ = [
    "CertificationError",
    "ChainMap",
    "CheckReport",
    "CurveData",
    "ExtTable",
    "FlopcatError",
    "HomTable",
    "InvalidCurveError",
    "NoClassError",
    "NotInSubcategoryError",
    "PreconditionError",
    "ProjComplex",
    "QuiverPresentation",
    "build_general_nodal_algebra",
    "build_kronecker_algebra",
    "build_node_algebra",
    "cone",
    "ext_table",
    "is_nullhomotopic",
    "minimal_projective_resolution",
    "quasi_iso_certify",
    "regrade",
    "shift",
]
