"""Noncommutative residues of model pseudodifferential operators.

Thin wrapper around the compiled core: build operator models from the
catalog, evaluate the classical, graded and zoom-cocycle residues, and run
the cross-method verification suites.
"""

from ._core import (
    CheckResult,
    CocycleSample,
    EquivReport,
    GroupoidalResult,
    OperatorModel,
    OperatorSpec,
    ResidueReport,
    SpecParseError,
    __version__,
    catalog_names,
    cocycle_sample,
    equivalence,
    groupoidal_residue,
    make_model,
    parse_spec_file,
    parse_spec_text,
    ponge_residue,
    residue_report,
    verify,
    verify_suite_names,
    wodzicki_residue,
)

__all__ = [
    "CheckResult",
    "CocycleSample",
    "EquivReport",
    "GroupoidalResult",
    "OperatorModel",
    "OperatorSpec",
    "ResidueReport",
    "SpecParseError",
    "__version__",
    "catalog_names",
    "cocycle_sample",
    "equivalence",
    "groupoidal_residue",
    "make_model",
    "parse_spec_file",
    "parse_spec_text",
    "ponge_residue",
    "residue_report",
    "verify",
    "verify_suite_names",
    "wodzicki_residue",
]
