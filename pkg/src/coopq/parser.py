"""Controlled-language turn parser.

Two patterns are understood (case-insensitively, trailing punctuation
ignored):

    is there a <TYPE> [from <CITY>] to <CITY> [before|after <TIME>]
    which is the (earliest|latest) one
    which is the (earliest|latest) <TYPE>

Times may be written 7am, 715am, 0715am, or bare HHMM digits; 12am is
midnight and 12pm is noon. Anything else comes back as Unparseable with a
hint at the nearest pattern, never as an exception.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .kb import ClockTime, EntityRef, KnowledgeBase, Symbol, Text
from .query import Constraint, QueryElement, QueryFrame, Relation

QUERY_PATTERN = "is there a <TYPE> [from <CITY>] to <CITY> [before|after <TIME>]"
ELABORATE_PATTERN = "which is the (earliest|latest) one"


@dataclass(frozen=True)
class ParsedQuery:
    entity_type: str
    destination: str
    origin: str | None = None
    time_relation: tuple[Relation, ClockTime] | None = None


@dataclass(frozen=True)
class ParsedElaborate:
    selector: str  # "earliest" | "latest"


@dataclass(frozen=True)
class Unparseable:
    text: str
    hint: str


ParsedTurn = ParsedQuery | ParsedElaborate | Unparseable


class UnknownCity(Exception):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown city: {name}")


@dataclass(frozen=True)
class SessionDefaults:
    """Per-session assumptions applied to underspecified queries."""

    home_city: str = "Sydney"


_TIME_RE = re.compile(r"(\d{1,4})\s*(am|pm)?$")


def parse_time(token: str) -> ClockTime | None:
    """A clock time from a compact token, or None when it is not one."""
    m = _TIME_RE.fullmatch(token.strip())
    if not m:
        return None
    digits, meridiem = m.group(1), m.group(2)
    if meridiem:
        if len(digits) <= 2:
            hour, minute = int(digits), 0
        else:
            hour, minute = int(digits[:-2]), int(digits[-2:])
        if not (1 <= hour <= 12) or minute > 59:
            return None
        hour = hour % 12 + (12 if meridiem == "pm" else 0)
    else:
        if len(digits) < 3:
            return None
        hour, minute = int(digits[:-2]), int(digits[-2:])
        if hour > 23 or minute > 59:
            return None
    return ClockTime(hour * 100 + minute)


def _hint_for(words: list[str]) -> str:
    if words[:1] == ["is"]:
        return f'expected "{QUERY_PATTERN}"'
    if words[:1] == ["which"]:
        return f'expected "{ELABORATE_PATTERN}" or "which is the (earliest|latest) <TYPE>"'
    return f'expected "{QUERY_PATTERN}" or "{ELABORATE_PATTERN}"'


def parse_turn(text: str) -> ParsedTurn:
    """Match a user turn against the pattern set; total, never raises."""
    cleaned = text.strip()
    while cleaned and cleaned[-1] in ".?!":
        cleaned = cleaned[:-1].rstrip()
    tokens = cleaned.split()  # original casing, kept for city names
    words = [t.lower() for t in tokens]

    def unparseable() -> Unparseable:
        return Unparseable(text=text, hint=_hint_for(words))

    if words[:3] in (["is", "there", "a"], ["is", "there", "an"]):
        rest = words[3:]
        rest_tokens = tokens[3:]
        if not rest:
            return unparseable()
        entity_type = rest[0]
        rest, rest_tokens = rest[1:], rest_tokens[1:]
        origin: str | None = None
        if rest and rest[0] == "from":
            try:
                to_at = rest.index("to")
            except ValueError:
                return unparseable()
            origin = " ".join(rest_tokens[1:to_at])
            rest, rest_tokens = rest[to_at:], rest_tokens[to_at:]
            if not origin:
                return unparseable()
        if not rest or rest[0] != "to":
            return unparseable()
        rest, rest_tokens = rest[1:], rest_tokens[1:]
        cut = len(rest)
        relation: Relation | None = None
        for i, word in enumerate(rest):
            if word in ("before", "after"):
                cut = i
                relation = Relation.LT if word == "before" else Relation.GT
                break
        destination = " ".join(rest_tokens[:cut])
        if not destination:
            return unparseable()
        time_relation: tuple[Relation, ClockTime] | None = None
        if relation is not None:
            time = parse_time("".join(rest[cut + 1 :]))
            if time is None:
                return unparseable()
            time_relation = (relation, time)
        return ParsedQuery(
            entity_type=entity_type,
            destination=destination,
            origin=origin,
            time_relation=time_relation,
        )

    if words[:3] == ["which", "is", "the"] and len(words) == 5 and words[3] in ("earliest", "latest"):
        return ParsedElaborate(selector=words[3])

    return unparseable()


def _resolve_city(kb: KnowledgeBase, name: str) -> str:
    wanted = name.lower()
    for entity in kb.entities_of_type("city"):
        city_name = kb.lookup(entity, "name")
        if isinstance(city_name, Text) and city_name.value.lower() == wanted:
            return entity
    raise UnknownCity(name)


def frame_from_parse(
    parsed: ParsedQuery, kb: KnowledgeBase, defaults: SessionDefaults
) -> QueryFrame:
    """Populate the standard six-row frame from a parsed query.

    The origin falls back to the session's home city when the query leaves
    it implicit. City names resolve against the store's name facts.
    """
    origin_id = _resolve_city(kb, parsed.origin or defaults.home_city)
    destination_id = _resolve_city(kb, parsed.destination)
    time_given = None
    if parsed.time_relation is not None:
        relation, bound = parsed.time_relation
        time_given = Constraint(relation, bound)
    return QueryFrame(
        (
            QueryElement("entity", "E"),
            QueryElement("type", "T", given=Constraint(Relation.EQ, Symbol(parsed.entity_type))),
            QueryElement("startpoint", "C1", given=Constraint(Relation.EQ, EntityRef(origin_id))),
            QueryElement("endpoint", "C2", given=Constraint(Relation.EQ, EntityRef(destination_id))),
            QueryElement("starttime", "T1", given=time_given),
            QueryElement("endtime", "T2"),
        )
    )
