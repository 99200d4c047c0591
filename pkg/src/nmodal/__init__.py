"""Finite neighborhood models for modal logic: formulas, frames as box
tables over bitmask subsets, frame transforms, filtrations and bounded
satisfiability search."""

from .formula import (
    And,
    Box,
    BOT,
    Formula,
    Neg,
    ParseError,
    SubformulaSet,
    TOP,
    Var,
    is_variable_free,
    modal_depth,
    node_count,
    parse,
    render,
    subformula_closure,
    substitute,
    variables,
)
from .model import (
    Frame,
    FrameClass,
    Model,
    Subset,
    frame_from_dict,
    frame_to_dict,
    holds_at,
    is_monotonic,
    is_reflexive,
    is_regular,
    is_transitive,
    kripke_to_neighborhood,
    logical_consequence,
    model_from_dict,
    model_to_dict,
    satisfies_class,
    truth_set,
    valid_on_frame,
    validate_frame,
)
from .transform import (
    hat_closure,
    intersection_closure,
    intersection_closure_by_enumeration,
    rm_closure,
    supplement,
)
from .filtration import (
    FiltrationKind,
    FiltrationReport,
    FiltrationResult,
    Partition,
    PreconditionError,
    emc4_filtration,
    filtration_result_to_dict,
    minimal_filtration,
    partition_worlds,
    quotient_subset,
    s04_filtration,
    transitive_filtration,
    verify_filtration,
)
from .decide import (
    AxiomReport,
    SatResult,
    Satisfiable,
    SearchConfig,
    UnknownUpToBound,
    axiom_report,
    bounded_sat,
    countermodel,
)

__version__ = "0.1.0"
