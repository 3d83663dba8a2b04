"""The dialogue manager: cooperative answers with preselected *one*-anaphora.

A query that succeeds right away is affirmed. A query that fails is relaxed
step by step and retried; the first success yields a denial plus a contrast
with the near-miss entity, and when the principal term survived relaxation
the contrastive NP is the empty-headed structure that surfaces as "one".
The manager hands the realizer a speech-act specification and keeps a full
decision trace per turn.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .discourse import (
    DefiniteNP,
    DiscourseContext,
    IndefiniteNP,
    OneAnaphor,
    ReferringForm,
    decide_form,
    update_context,
)
from .kb import ClockTime, EntityRef, KnowledgeBase, Symbol, Value
from .query import (
    QueryFrame,
    RelaxationExhausted,
    RelaxationPolicy,
    DEFAULT_POLICY,
    evaluate,
    instantiate,
    relax,
)
from .semantics import (
    PHI,
    IndistinguishableReferent,
    SemanticNP,
    build_distinguishing_sem,
    contrast_np,
    license_one_anaphora,
)


class Polarity(Enum):
    AFFIRM = "affirm"
    DENY = "deny"
    INFORM = "inform"


class DiscourseRelation(Enum):
    NONE = "none"
    CONTRAST = "contrast"
    ELABORATION = "elaboration"


class NoActiveSet(Exception):
    """Set elaboration was requested but no answer set is active."""


def _np_sem(np: "ReferringForm | SemanticNP") -> SemanticNP | None:
    if isinstance(np, SemanticNP):
        return np
    if isinstance(np, (DefiniteNP, IndefiniteNP, OneAnaphor)):
        return np.sem
    return None


@dataclass(frozen=True)
class SpeechActSpec:
    """What the realizer is asked to say.

    `nps` pairs each referent (when known) with either a decided referring
    form or raw NP semantics; `preselect_one` tells realization that a
    one-anaphoric form has been preselected upstream; `payload` carries
    extra facts, only some of which are verbalized.
    """

    polarity: Polarity
    relation: DiscourseRelation
    nps: tuple[tuple[str | None, "ReferringForm | SemanticNP"], ...] = ()
    preselect_one: bool = False
    payload: tuple[tuple[str, Value], ...] = ()

    def __post_init__(self) -> None:
        if self.preselect_one:
            sems = (_np_sem(np) for _, np in self.nps)
            if not any(s is not None and s.is_elided for s in sems):
                raise ValueError("preselecting one-anaphora requires an empty-headed NP")

    def payload_value(self, attribute: str) -> Value | None:
        for attr, value in self.payload:
            if attr == attribute:
                return value
        return None


@dataclass
class TurnTrace:
    """Everything a turn decided: frame snapshots, relation, licensing, NP sems.

    For query turns the snapshot list is non-empty and starts fully initial;
    elaboration and error turns carry no frames. The answer string is filled
    in once realization has run.
    """

    frames: tuple[QueryFrame, ...]
    relation: DiscourseRelation
    licensed: bool
    sems: tuple[SemanticNP, ...] = ()
    answer: str = ""
    error: str | None = None


def _entity_of(binding: dict[str, Value], frame: QueryFrame) -> str:
    value = binding[frame.entity_element.variable]
    assert isinstance(value, EntityRef)
    return value.entity


def _fact_payload(kb: KnowledgeBase, entity: str, attributes: tuple[str, ...]) -> tuple[tuple[str, Value], ...]:
    payload = []
    for attribute in attributes:
        value = kb.lookup(entity, attribute)
        if value is not None:
            payload.append((attribute, value))
    return tuple(payload)


def _descriptive_form(kb: KnowledgeBase, context: DiscourseContext, entity: str) -> ReferringForm:
    """A full (unelided) description, falling back to a name-based one."""
    try:
        sem = build_distinguishing_sem(entity, context, kb)
    except IndistinguishableReferent:
        head = kb.lookup(entity, "type")
        name = kb.lookup(entity, "name")
        sem = SemanticNP(
            head_type=head.name if isinstance(head, Symbol) else entity,
            given=context.has_mention_of(entity),
            properties=(("name", name),) if name is not None else (),
        )
    return DefiniteNP(sem) if sem.given else IndefiniteNP(sem)


def _mention_record(
    kb: KnowledgeBase, context: DiscourseContext, entity: str, form: "ReferringForm | SemanticNP"
) -> tuple[str, SemanticNP, str]:
    # realize_np lives downstream of this module; imported here to keep the
    # speech-act types importable from the realizer.
    from .realize import realize_np

    surface = realize_np(form)
    sem = _np_sem(form)
    if sem is None or sem.is_elided:
        described = context.latest_sem_of(entity)
        if described is None:
            head = kb.lookup(entity, "type")
            described = SemanticNP(
                head_type=head.name if isinstance(head, Symbol) else entity,
                given=sem.given if sem is not None else True,
                properties=sem.properties if sem is not None else (),
            )
        sem = described
    return (entity, sem, surface)


def answer_query(
    kb: KnowledgeBase,
    frame: QueryFrame,
    context: DiscourseContext,
    policy: RelaxationPolicy = DEFAULT_POLICY,
) -> tuple[SpeechActSpec, TurnTrace, DiscourseContext]:
    """Answer one query frame cooperatively.

    Direct hit: affirm, describing the found entity for the fresh context.
    Failure: relax and retry until something is found, then deny but offer
    the near-miss as a contrast, one-anaphorically whenever the principal
    term licenses it. Policy exhaustion with no success yields a bare denial.
    """
    frames = [frame]
    current = frame
    bindings = evaluate(kb, current)
    while not bindings:
        try:
            current = relax(current, policy)
        except RelaxationExhausted:
            spec = SpeechActSpec(Polarity.DENY, DiscourseRelation.NONE)
            trace = TurnTrace(tuple(frames), DiscourseRelation.NONE, licensed=False)
            return spec, trace, update_context(context, (), ())
        frames.append(current)
        bindings = evaluate(kb, current)

    binding = bindings[0]
    entity = _entity_of(binding, current)
    answer_entities = tuple(_entity_of(b, current) for b in bindings)

    if current is frame:
        # Direct hit, no relaxation.
        try:
            form: ReferringForm = decide_form(entity, context, kb)
        except IndistinguishableReferent:
            form = _descriptive_form(kb, context, entity)
        spec = SpeechActSpec(
            Polarity.AFFIRM,
            DiscourseRelation.NONE,
            nps=((entity, form),),
            payload=_fact_payload(kb, entity, ("name", "starttime", "endtime")),
        )
        sem = _np_sem(form)
        trace = TurnTrace(
            (frame,),
            DiscourseRelation.NONE,
            licensed=False,
            sems=(sem,) if sem is not None else (),
        )
        new_context = update_context(
            context, answer_entities, (_mention_record(kb, context, entity, form),)
        )
        return spec, trace, new_context

    instantiated = instantiate(current, binding)
    frames.append(instantiated)
    licensed = license_one_anaphora(instantiated)
    # Arrival information travels in the payload but is not verbalized.
    payload = _fact_payload(kb, entity, ("endtime",))
    if licensed:
        np: ReferringForm | SemanticNP = contrast_np(instantiated)
        preselect = True
    else:
        np = _descriptive_form(kb, context, entity)
        preselect = False
    spec = SpeechActSpec(
        Polarity.DENY,
        DiscourseRelation.CONTRAST,
        nps=((entity, np),),
        preselect_one=preselect,
        payload=payload,
    )
    sem = _np_sem(np)
    trace = TurnTrace(
        tuple(frames),
        DiscourseRelation.CONTRAST,
        licensed=licensed,
        sems=(sem,) if sem is not None else (),
    )
    new_context = update_context(
        context, answer_entities, (_mention_record(kb, context, entity, np),)
    )
    return spec, trace, new_context


def elaborate_set(
    kb: KnowledgeBase, context: DiscourseContext, selector: str
) -> tuple[SpeechActSpec, DiscourseContext]:
    """Pick the extremal member of the active set by departure time.

    `selector` is "earliest" or "latest". The response is an elaboration
    whose NP is a definite one-anaphor carrying the selector as its only
    property; the member's departure time rides in the payload. The chosen
    member becomes the centre.
    """
    if selector not in ("earliest", "latest"):
        raise ValueError(f"unknown selector {selector!r}")
    if not context.active_set:
        raise NoActiveSet("no answer set is active")
    timed = [
        (member, time)
        for member in context.active_set
        if isinstance(time := kb.lookup(member, "starttime"), ClockTime)
    ]
    if not timed:
        raise NoActiveSet("no member of the active set has a departure time")
    pick = min if selector == "earliest" else max
    member, time = pick(timed, key=lambda pair: pair[1].hhmm)
    sem = SemanticNP(head_type=PHI, given=True, properties=(("selector", Symbol(selector)),))
    form = OneAnaphor(sem, definite=True)
    spec = SpeechActSpec(
        Polarity.INFORM,
        DiscourseRelation.ELABORATION,
        nps=((member, form),),
        preselect_one=True,
        payload=(("starttime", time),),
    )
    new_context = update_context(
        context, (member,), (_mention_record(kb, context, member, form),)
    )
    return spec, new_context
