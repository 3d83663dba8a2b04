"""Noun-phrase semantics: distinguishing descriptions, shared-structure elision,
and the licensing test for *one*-anaphoric responses.

An NP's semantics is a small attribute-value structure: a head type, a
givenness flag, and an ordered property list. Eliding the structure an NP
shares with an antecedent leaves the head type empty (the null symbol),
which the realizer later takes as its cue to emit the pro-form "one".
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Iterable, Sequence

from .kb import KnowledgeBase, Symbol, Value
from .query import ElementStatus, QueryFrame, Relation, relaxed_deltas

if TYPE_CHECKING:
    from .discourse import DiscourseContext


class NullType:
    """The distinguished empty head type; unequal to every symbol name."""

    _instance: "NullType | None" = None

    def __new__(cls) -> "NullType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "phi"


PHI = NullType()

# Modifier attributes realized (and selected) before anything else, in this
# order; further attributes follow in KB declaration order.
DESCRIPTION_ATTRIBUTE_ORDER = ("colour", "size", "starttime", "endtime")


class IndistinguishableReferent(Exception):
    """No property set separates the referent from every mentioned distractor.

    Callers fall back to a name-based reference.
    """

    def __init__(self, referent: str, distractors: Sequence[str]):
        self.referent = referent
        self.distractors = tuple(distractors)
        super().__init__(f"{referent} cannot be distinguished from {', '.join(distractors)}")


@dataclass(frozen=True)
class SemanticNP:
    """Attribute-value semantics of a noun phrase.

    `given` is True when the hearer already knows the referent and False when
    it is introduced as new. `head_type` is either a type symbol name or the
    null type produced by elision.
    """

    head_type: str | NullType
    given: bool
    properties: tuple[tuple[str, Value], ...] = ()
    index: str | None = None

    def __post_init__(self) -> None:
        attributes = [a for a, _ in self.properties]
        if len(set(attributes)) != len(attributes):
            raise ValueError("property attributes must be pairwise distinct")

    @property
    def is_elided(self) -> bool:
        return isinstance(self.head_type, NullType)


def _candidate_attributes(kb: KnowledgeBase, referent: str) -> list[str]:
    fixed = [a for a in DESCRIPTION_ATTRIBUTE_ORDER if kb.lookup(referent, a) is not None]
    rest = [
        a
        for a in kb.attributes_of(referent)
        if a not in ("type", "name") and a not in DESCRIPTION_ATTRIBUTE_ORDER
    ]
    return fixed + rest


def build_distinguishing_sem(
    referent: str, context: "DiscourseContext", kb: KnowledgeBase
) -> SemanticNP:
    """Semantic content that identifies the referent against mentioned entities.

    Starts from the referent's type and adds properties in the fixed
    description order until no other context-mentioned entity still matches.
    Only properties that actually narrow the distractor set are kept.
    """
    head = kb.lookup(referent, "type")
    if not isinstance(head, Symbol):
        raise ValueError(f"referent {referent!r} has no type fact")
    distractors = [
        e
        for e in context.mentioned_entities()
        if e != referent and kb.lookup(e, "type") == head
    ]
    properties: list[tuple[str, Value]] = []
    for attribute in _candidate_attributes(kb, referent):
        if not distractors:
            break
        value = kb.lookup(referent, attribute)
        if value is None:
            continue
        survivors = [d for d in distractors if kb.lookup(d, attribute) == value]
        if len(survivors) < len(distractors):
            properties.append((attribute, value))
            distractors = survivors
    if distractors:
        raise IndistinguishableReferent(referent, distractors)
    return SemanticNP(
        head_type=head.name,
        given=context.has_mention_of(referent),
        properties=tuple(properties),
        index=context.index_of(referent),
    )


def elide_shared(sem: SemanticNP, antecedents: Iterable[SemanticNP]) -> SemanticNP:
    """Elide the structure `sem` shares with the most recent qualifying antecedent.

    An antecedent qualifies when it has the same head type and at least one
    of `sem`'s properties is not shared with it; the shared head and shared
    properties are then dropped, leaving the null head type and the
    contrastive properties. With no qualifying antecedent (in particular,
    when elision would leave a bare uninformative head) `sem` is returned
    unchanged.
    """
    if sem.is_elided:
        return sem
    for antecedent in reversed(list(antecedents)):
        if antecedent.head_type != sem.head_type:
            continue
        shared = set(antecedent.properties)
        kept = tuple(p for p in sem.properties if p not in shared)
        if not kept:
            continue
        return replace(sem, head_type=PHI, properties=kept)
    return sem


def license_one_anaphora(frame: QueryFrame) -> bool:
    """True iff the frame's type element survived relaxation with its equality given.

    The type constraint is the principal term: only when it is still as the
    user gave it does the answer's head noun have a discourse antecedent,
    making a *one*-anaphoric response possible.
    """
    type_element = frame.type_element
    return (
        type_element.status is ElementStatus.INITIAL
        and type_element.given is not None
        and type_element.given.relation is Relation.EQ
    )


def contrast_np(frame: QueryFrame) -> SemanticNP:
    """NP semantics that is empty except for the frame's relaxed constraints.

    These are exactly the contrasted properties; everything else was in the
    question and presents no news. Only valid for a licensed, instantiated
    frame.
    """
    if not license_one_anaphora(frame):
        raise ValueError("one-anaphora is not licensed for this frame")
    deltas = relaxed_deltas(frame)
    return SemanticNP(head_type=PHI, given=False, properties=deltas)
