"""Query frames: evaluation against the KB, constraint relaxation, instantiation.

A query is a frame of elements, one per attribute of interest. Each element
tracks its variable, whether its constraint is still as the user gave it or
has been relaxed, the given constraint itself, and the new value obtained
from the store once a solution is found. Keeping given and new apart is what
lets the response planner see exactly which constraints had to move.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping

from .kb import ClockTime, EntityRef, KnowledgeBase, Value

ENTITY_ATTRIBUTE = "entity"
TYPE_ATTRIBUTE = "type"

_UNSET = object()


class Relation(Enum):
    EQ = "="
    LT = "<"
    GT = ">"


class ElementStatus(Enum):
    INITIAL = "initial"
    RELAXED = "relaxed"


class RelaxationExhausted(Exception):
    """No element is left that the policy may widen further."""


@dataclass(frozen=True)
class Constraint:
    relation: Relation
    bound: Value

    def __post_init__(self) -> None:
        if self.relation is not Relation.EQ and not isinstance(self.bound, ClockTime):
            raise ValueError("ordering constraints apply only to clock times")

    def satisfied_by(self, value: Value) -> bool:
        if self.relation is Relation.EQ:
            return value == self.bound
        if not isinstance(value, ClockTime):
            return False
        assert isinstance(self.bound, ClockTime)
        if self.relation is Relation.LT:
            return value.hhmm < self.bound.hhmm
        return value.hhmm > self.bound.hhmm


@dataclass(frozen=True)
class QueryElement:
    """One frame row: attribute, variable, status, given constraint, new value.

    `original_given` keeps the pre-relaxation constraint for tracing; it
    defaults to `given` so that a freshly built element is self-consistent.
    """

    attribute: str
    variable: str
    status: ElementStatus = ElementStatus.INITIAL
    given: Constraint | None = None
    original_given: Constraint | None = _UNSET  # type: ignore[assignment]
    new: Value | None = None
    relax_rounds: int = 0

    def __post_init__(self) -> None:
        if self.original_given is _UNSET:
            object.__setattr__(self, "original_given", self.given)
        relaxed = self.given != self.original_given
        if relaxed != (self.status is ElementStatus.RELAXED):
            raise ValueError(
                f"element {self.attribute!r}: status {self.status.value} inconsistent "
                "with given/original_given"
            )


@dataclass(frozen=True)
class QueryFrame:
    """Ordered query elements; the solution variable first, the type second."""

    elements: tuple[QueryElement, ...]

    def __post_init__(self) -> None:
        if len(self.elements) < 2:
            raise ValueError("a query frame needs at least entity and type elements")
        if self.elements[0].attribute != ENTITY_ATTRIBUTE:
            raise ValueError("the first element must be the solution variable (attribute 'entity')")
        if self.elements[1].attribute != TYPE_ATTRIBUTE:
            raise ValueError("the second element must be the principal term (attribute 'type')")
        if sum(1 for e in self.elements if e.attribute == ENTITY_ATTRIBUTE) != 1:
            raise ValueError("exactly one 'entity' element is allowed")
        if sum(1 for e in self.elements if e.attribute == TYPE_ATTRIBUTE) != 1:
            raise ValueError("exactly one 'type' element is allowed")
        variables = [e.variable for e in self.elements]
        if len(set(variables)) != len(variables):
            raise ValueError("frame variables must be pairwise distinct")

    @property
    def entity_element(self) -> QueryElement:
        return self.elements[0]

    @property
    def type_element(self) -> QueryElement:
        return self.elements[1]

    def element(self, attribute: str) -> QueryElement:
        for e in self.elements:
            if e.attribute == attribute:
                return e
        raise KeyError(attribute)

    def with_element(self, new_element: QueryElement) -> "QueryFrame":
        """A copy with the element of the same attribute replaced."""
        return QueryFrame(
            tuple(new_element if e.attribute == new_element.attribute else e for e in self.elements)
        )


Binding = Mapping[str, Value]


@dataclass(frozen=True)
class RelaxationRule:
    attribute: str
    step: int  # HHMM delta; 100 widens by one hour
    max_rounds: int


@dataclass(frozen=True)
class RelaxationPolicy:
    """Which attributes may be widened, by how much, and which never move.

    The type constraint is the head noun of any eventual answer, so it is
    unconditionally non-relaxable.
    """

    rules: tuple[RelaxationRule, ...]
    non_relaxable: tuple[str, ...]

    def __post_init__(self) -> None:
        relaxable = {r.attribute for r in self.rules}
        if TYPE_ATTRIBUTE in relaxable:
            raise ValueError("the type constraint is never relaxable")
        if relaxable & set(self.non_relaxable):
            raise ValueError("relaxable and non-relaxable attribute lists must be disjoint")
        if TYPE_ATTRIBUTE not in self.non_relaxable:
            object.__setattr__(self, "non_relaxable", self.non_relaxable + (TYPE_ATTRIBUTE,))


DEFAULT_POLICY = RelaxationPolicy(
    rules=(RelaxationRule("starttime", step=100, max_rounds=3),),
    non_relaxable=("type", "startpoint", "endpoint", "endtime"),
)


def evaluate(kb: KnowledgeBase, frame: QueryFrame) -> list[dict[str, Value]]:
    """All bindings satisfying the frame, in KB declaration order.

    A candidate entity must carry a fact under every constrained attribute
    (conjunctive semantics) and every given constraint must hold. Variables
    of unconstrained elements with no fact simply stay unbound.
    """
    results: list[dict[str, Value]] = []
    for entity in kb.entities:
        binding: dict[str, Value] = {}
        satisfied = True
        for element in frame.elements:
            if element.attribute == ENTITY_ATTRIBUTE:
                value: Value | None = EntityRef(entity)
            else:
                value = kb.lookup(entity, element.attribute)
            if element.given is not None and (value is None or not element.given.satisfied_by(value)):
                satisfied = False
                break
            if value is not None:
                binding[element.variable] = value
        if satisfied:
            results.append(binding)
    return results


def _widened(bound: ClockTime, relation: Relation, step: int) -> ClockTime:
    delta = (step // 100) * 60 + step % 100
    if relation is Relation.LT:
        return ClockTime.from_minutes(bound.minutes_from_midnight + delta)
    return ClockTime.from_minutes(bound.minutes_from_midnight - delta)


def relax(frame: QueryFrame, policy: RelaxationPolicy) -> QueryFrame:
    """Widen the first eligible constraint by one policy step.

    Eligible means: the attribute appears in the policy's rules, the element
    carries an ordering constraint, its round budget is not spent, and one
    more step actually moves the bound (it is not pinned at a day boundary).
    The input frame is returned untouched; a new frame is built.
    """
    for rule in policy.rules:
        for element in frame.elements:
            if element.attribute != rule.attribute:
                continue
            if element.given is None or element.given.relation is Relation.EQ:
                continue
            if element.relax_rounds >= rule.max_rounds:
                continue
            assert isinstance(element.given.bound, ClockTime)
            new_bound = _widened(element.given.bound, element.given.relation, rule.step)
            if new_bound == element.given.bound:
                continue
            widened = replace(
                element,
                status=ElementStatus.RELAXED,
                given=Constraint(element.given.relation, new_bound),
                original_given=element.original_given,
                relax_rounds=element.relax_rounds + 1,
            )
            return frame.with_element(widened)
    raise RelaxationExhausted("no constraint left to relax under the policy")


def instantiate(frame: QueryFrame, binding: Binding) -> QueryFrame:
    """Fill each element's new value from the binding.

    Elements pinned by an equality given keep their new field empty: the
    value was in the question, so it is not news. A bound value that
    violates its own given constraint is a contract violation.
    """
    for element in frame.elements:
        if element.given is None or element.variable not in binding:
            continue
        if not element.given.satisfied_by(binding[element.variable]):
            raise ValueError(
                f"binding value for {element.variable} violates the given constraint "
                f"on {element.attribute!r}"
            )
    updated = []
    for element in frame.elements:
        pinned = element.given is not None and element.given.relation is Relation.EQ
        if element.variable in binding and not pinned:
            updated.append(replace(element, new=binding[element.variable]))
        else:
            updated.append(element)
    return QueryFrame(tuple(updated))


def relaxed_deltas(frame: QueryFrame) -> tuple[tuple[str, Value], ...]:
    """(attribute, new value) for every relaxed element, in frame order."""
    return tuple(
        (e.attribute, e.new) for e in frame.elements if e.status is ElementStatus.RELAXED
    )
