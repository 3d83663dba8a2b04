"""Cooperative query dialogue engine with one-anaphoric contrastive answers."""

from .dialogue import (
    DiscourseRelation,
    NoActiveSet,
    Polarity,
    SpeechActSpec,
    TurnTrace,
    answer_query,
    elaborate_set,
)
from .discourse import (
    DefiniteNP,
    DiscourseContext,
    IndefiniteNP,
    Mention,
    OneAnaphor,
    Pronoun,
    ReferringForm,
    decide_form,
    update_context,
)
from .kb import (
    ClockTime,
    EntityRef,
    Fact,
    KBLoadError,
    KnowledgeBase,
    Symbol,
    Text,
    Value,
    load_kb,
)
from .parser import (
    ParsedElaborate,
    ParsedQuery,
    ParsedTurn,
    SessionDefaults,
    UnknownCity,
    Unparseable,
    frame_from_parse,
    parse_turn,
)
from .query import (
    Constraint,
    DEFAULT_POLICY,
    ElementStatus,
    QueryElement,
    QueryFrame,
    Relation,
    RelaxationExhausted,
    RelaxationPolicy,
    RelaxationRule,
    evaluate,
    instantiate,
    relax,
    relaxed_deltas,
)
from .realize import realize_np, realize_response, realize_time
from .semantics import (
    PHI,
    IndistinguishableReferent,
    NullType,
    SemanticNP,
    build_distinguishing_sem,
    contrast_np,
    elide_shared,
    license_one_anaphora,
)
from .service import Session, create_app, new_session, repl, run_turn

__all__ = [
    "ClockTime",
    "Constraint",
    "DEFAULT_POLICY",
    "DefiniteNP",
    "DiscourseContext",
    "DiscourseRelation",
    "ElementStatus",
    "EntityRef",
    "Fact",
    "IndefiniteNP",
    "IndistinguishableReferent",
    "KBLoadError",
    "KnowledgeBase",
    "Mention",
    "NoActiveSet",
    "NullType",
    "OneAnaphor",
    "PHI",
    "ParsedElaborate",
    "ParsedQuery",
    "ParsedTurn",
    "Polarity",
    "Pronoun",
    "QueryElement",
    "QueryFrame",
    "ReferringForm",
    "Relation",
    "RelaxationExhausted",
    "RelaxationPolicy",
    "RelaxationRule",
    "SemanticNP",
    "Session",
    "SessionDefaults",
    "SpeechActSpec",
    "Symbol",
    "Text",
    "TurnTrace",
    "UnknownCity",
    "Unparseable",
    "Value",
    "answer_query",
    "build_distinguishing_sem",
    "contrast_np",
    "create_app",
    "decide_form",
    "elaborate_set",
    "elide_shared",
    "evaluate",
    "frame_from_parse",
    "instantiate",
    "license_one_anaphora",
    "load_kb",
    "new_session",
    "parse_turn",
    "realize_np",
    "realize_response",
    "realize_time",
    "relax",
    "relaxed_deltas",
    "repl",
    "run_turn",
    "update_context",
]
