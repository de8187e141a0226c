"""Exact computer algebra with reproducible serialization.

The heavy lifting lives in the compiled extension; this package just
re-exports its surface.
"""

from ._core import (
    GF,
    Field,
    FieldElement,
    IntMatrix,
    Integer,
    MathreproError,
    Polynomial,
    PolynomialRing,
    Session,
    __version__,
    canonical_bytes,
    content_id,
    load,
    polynomial_ring,
    run_cli,
    save,
    snf,
    snf_generic,
    tree_hash,
    upgrade_file,
    validate_file,
    versioninfo,
)

__all__ = [
    "GF",
    "Field",
    "FieldElement",
    "IntMatrix",
    "Integer",
    "MathreproError",
    "Polynomial",
    "PolynomialRing",
    "Session",
    "__version__",
    "canonical_bytes",
    "content_id",
    "load",
    "polynomial_ring",
    "run_cli",
    "save",
    "snf",
    "snf_generic",
    "tree_hash",
    "upgrade_file",
    "validate_file",
    "versioninfo",
]
