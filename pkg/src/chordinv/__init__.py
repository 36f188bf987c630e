"""Chord-diagram isomorphism invariants of complex semisimple Lie algebras."""

from .chords import ChordDiagram, canonicalize, enumerate_diagrams, format_diagram, parse_diagram
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvariantViolated,
    MalformedInput,
    NotSemisimple,
    NotSemisimpleFamily,
    SingularMatrix,
)
from .invariants import InvariantVector, Verdict, compare_algebras, invariant_vector, theorem_bound
from .killing import KillingData, casimir_theta, is_semisimple, killing_matrix
from .lie_algebra import (
    BasisChange,
    StructureConstants,
    build_classical,
    change_basis,
    direct_sum,
    random_invertible,
    validate_structure,
)
from .linalg_exact import RationalMatrix, det_exact, invert_exact
from .pictures import ClosedPicture, DiagramCombination, evaluate_picture, reduce_picture
from .tensor_eval import build_network, evaluate_diagram, evaluate_float, evaluate_naive, plan_contraction

__version__ = "0.1.0"

__all__ = [
    "BasisChange",
    "BudgetExceeded",
    "build_classical",
    "build_network",
    "canonicalize",
    "casimir_theta",
    "change_basis",
    "ChordDiagram",
    "ClosedPicture",
    "compare_algebras",
    "det_exact",
    "DiagramCombination",
    "DimensionMismatch",
    "direct_sum",
    "enumerate_diagrams",
    "evaluate_diagram",
    "evaluate_float",
    "evaluate_naive",
    "evaluate_picture",
    "format_diagram",
    "invariant_vector",
    "InvariantVector",
    "InvariantViolated",
    "invert_exact",
    "is_semisimple",
    "killing_matrix",
    "KillingData",
    "MalformedInput",
    "NotSemisimple",
    "NotSemisimpleFamily",
    "parse_diagram",
    "plan_contraction",
    "random_invertible",
    "RationalMatrix",
    "reduce_picture",
    "SingularMatrix",
    "StructureConstants",
    "theorem_bound",
    "validate_structure",
    "Verdict",
]
