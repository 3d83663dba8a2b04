"""Per-session discourse state and the referring-form decision.

The context records every entity mention, the centre (the single entity the
previous answer put in focus), and the active set (the entities a
multi-result answer introduced). Form choice walks the classic skeleton:
pronoun for the centre, definite description for mentioned referents,
indefinite description otherwise, with shared structure elided into a
*one*-anaphor in the latter two branches.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kb import KnowledgeBase
from .semantics import SemanticNP, build_distinguishing_sem, elide_shared


@dataclass(frozen=True)
class Mention:
    entity: str
    sem: SemanticNP
    turn: int
    realized_as: str


@dataclass(frozen=True)
class DiscourseContext:
    """Session discourse state; owned by one session, replaced turn by turn.

    Invariants (maintained by `update_context`, not checked on construction
    so that tests may script arbitrary states): the centre appears in the
    history, and active-set entities share a type.
    """

    history: tuple[Mention, ...] = ()
    centre: str | None = None
    active_set: tuple[str, ...] | None = None
    turn: int = 0

    def mentioned_entities(self) -> tuple[str, ...]:
        ordered: list[str] = []
        for mention in self.history:
            if mention.entity not in ordered:
                ordered.append(mention.entity)
        return tuple(ordered)

    def has_mention_of(self, entity: str) -> bool:
        return any(m.entity == entity for m in self.history)

    def sems(self) -> tuple[SemanticNP, ...]:
        return tuple(m.sem for m in self.history)

    def index_of(self, entity: str) -> str | None:
        for mention in self.history:
            if mention.entity == entity and mention.sem.index is not None:
                return mention.sem.index
        return None

    def latest_sem_of(self, entity: str) -> SemanticNP | None:
        for mention in reversed(self.history):
            if mention.entity == entity:
                return mention.sem
        return None


@dataclass(frozen=True)
class Pronoun:
    pass


@dataclass(frozen=True)
class DefiniteNP:
    sem: SemanticNP


@dataclass(frozen=True)
class IndefiniteNP:
    sem: SemanticNP


@dataclass(frozen=True)
class OneAnaphor:
    sem: SemanticNP
    definite: bool

    def __post_init__(self) -> None:
        if not self.sem.is_elided:
            raise ValueError("a one-anaphor requires the null head type")


ReferringForm = Pronoun | DefiniteNP | IndefiniteNP | OneAnaphor


def decide_form(referent: str, context: DiscourseContext, kb: KnowledgeBase) -> ReferringForm:
    """Choose how to refer to the referent in the current context.

    In focus: pronoun. Otherwise build the distinguishing description (given
    when mentioned before, new otherwise) and elide structure shared with
    previous noun phrases; elision yields a one-anaphor, definite exactly
    when the referent was already mentioned.
    """
    if context.centre == referent:
        return Pronoun()
    sem = build_distinguishing_sem(referent, context, kb)
    elided = elide_shared(sem, context.sems())
    definite = context.has_mention_of(referent)
    if elided.is_elided:
        return OneAnaphor(elided, definite=definite)
    return DefiniteNP(elided) if definite else IndefiniteNP(elided)


def _assign_index(
    sem: SemanticNP, entity: str, assigned: dict[str, str], used: set[str]
) -> SemanticNP:
    if sem.index is not None:
        used.add(sem.index)
        assigned.setdefault(entity, sem.index)
        return sem
    existing = assigned.get(entity)
    if existing is not None:
        return SemanticNP(sem.head_type, sem.given, sem.properties, index=existing)
    n = 1
    while f"x{n}" in used:
        n += 1
    used.add(f"x{n}")
    assigned[entity] = f"x{n}"
    return SemanticNP(sem.head_type, sem.given, sem.properties, index=f"x{n}")


def update_context(
    context: DiscourseContext,
    answer_entities: tuple[str, ...],
    realized: tuple[tuple[str, SemanticNP, str], ...],
) -> DiscourseContext:
    """Advance the context by one turn.

    Appends a mention per realized NP (stamping a fresh discourse index on
    first mention), then applies the focus rules: a single answer entity
    becomes the centre and clears the active set; several answer entities
    become the active set and leave the centre alone; an empty answer only
    advances the turn counter.
    """
    turn = context.turn + 1
    used = {m.sem.index for m in context.history if m.sem.index is not None}
    assigned = {
        m.entity: m.sem.index for m in context.history if m.sem.index is not None
    }
    mentions = list(context.history)
    for entity, sem, surface in realized:
        stamped = _assign_index(sem, entity, assigned, used)
        mentions.append(Mention(entity=entity, sem=stamped, turn=turn, realized_as=surface))
    if len(answer_entities) == 1:
        centre: str | None = answer_entities[0]
        active_set: tuple[str, ...] | None = None
    elif len(answer_entities) > 1:
        centre = context.centre
        active_set = tuple(answer_entities)
    else:
        centre = context.centre
        active_set = context.active_set
    return DiscourseContext(
        history=tuple(mentions), centre=centre, active_set=active_set, turn=turn
    )
