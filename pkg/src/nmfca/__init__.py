"""Formal concept analysis with object preferences.

Concept lattices, classical implications, defeasible conditionals over an
object preference order, KLM postulate checks and typical concepts.
"""

from .conditional import (
    Conditional,
    LLEMode,
    Postulate,
    PostulateReport,
    VerifyMode,
    check_lemma1,
    check_lemma2,
    check_postulate,
    consequences,
    holds,
    verify_klm,
)
from .context import (
    ContextFormat,
    FormalContext,
    Implication,
    attr_equivalent,
    closure,
    derive_attributes,
    derive_objects,
    load_context,
    models_implication,
    parse_context,
    respects_implication,
    serialize_context,
)
from .errors import (
    ArityError,
    BoundExceededError,
    ContextParseError,
    FCAError,
    OrderCycleError,
    UnknownNameError,
)
from .lattice import (
    ConceptLattice,
    FormalConcept,
    concept_from_attrs,
    concept_from_objects,
    enumerate_concepts,
    join,
    lattice_from_json,
    lattice_to_json,
    leq,
    meet,
    to_dot,
)
from .preference import (
    ExtendedContext,
    PreferenceOrder,
    build_order,
    load_preferences,
    minimised_return,
    minimize,
    parse_preferences,
)
from .typicality import (
    TypicalSet,
    enumerate_typical,
    find_join_counterexample,
    is_typical,
    is_valid_order,
    phi,
    typical_concept_from,
    typical_meet_semilattice,
)

__version__ = "0.1.0"
