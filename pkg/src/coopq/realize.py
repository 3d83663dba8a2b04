"""Template surface realizer.

Noun phrases render from their attribute-value semantics; the empty head
type is the cue to emit the pro-form "one". Clock-time properties become a
trailing "at <time>" phrase rather than a premodifier. Responses are fixed
sentence templates keyed on polarity and discourse relation.
"""

from __future__ import annotations

from .dialogue import DiscourseRelation, Polarity, SpeechActSpec
from .discourse import DefiniteNP, IndefiniteNP, OneAnaphor, Pronoun, ReferringForm
from .kb import ClockTime, EntityRef, Symbol, Text, Value
from .semantics import DESCRIPTION_ATTRIBUTE_ORDER, SemanticNP

_VOWELS = "aeiou"


def realize_time(t: ClockTime) -> str:
    """Clock time in compact 12-hour form: 715 -> "715am", 700 -> "7am".

    Minutes print as two digits and are dropped entirely on the hour;
    midnight and noon are "12am" and "12pm".
    """
    hours, minutes = divmod(t.hhmm, 100)
    suffix = "am" if hours < 12 else "pm"
    hour12 = hours % 12 or 12
    if minutes == 0:
        return f"{hour12}{suffix}"
    return f"{hour12}{minutes:02d}{suffix}"


def _modifier_text(value: Value) -> str:
    if isinstance(value, Symbol):
        return value.name.replace("_", "-")
    if isinstance(value, Text):
        return value.value
    if isinstance(value, EntityRef):
        return value.entity
    return str(value.hhmm)


def _ordered_properties(sem: SemanticNP) -> list[tuple[str, Value]]:
    fixed = [p for a in DESCRIPTION_ATTRIBUTE_ORDER for p in sem.properties if p[0] == a]
    rest = [p for p in sem.properties if p[0] not in DESCRIPTION_ATTRIBUTE_ORDER]
    return fixed + rest


def realize_np(form: ReferringForm | SemanticNP) -> str:
    """Render a referring form, or raw NP semantics with givenness-driven determiner."""
    if isinstance(form, Pronoun):
        return "it"
    if isinstance(form, OneAnaphor):
        sem, definite = form.sem, form.definite
    elif isinstance(form, (DefiniteNP, IndefiniteNP)):
        sem, definite = form.sem, isinstance(form, DefiniteNP)
    else:
        sem, definite = form, form.given
    if sem.is_elided and not sem.properties:
        raise ValueError("a bare 'one' with no modifiers is uninformative")

    premodifiers: list[str] = []
    time_phrases: list[str] = []
    for _, value in _ordered_properties(sem):
        if isinstance(value, ClockTime):
            time_phrases.append(f"at {realize_time(value)}")
        else:
            premodifiers.append(_modifier_text(value))
    head = "one" if sem.is_elided else str(sem.head_type)
    body = " ".join(premodifiers + [head])
    if time_phrases:
        body += " " + " and ".join(time_phrases)

    if definite:
        determiner = "the "
    elif sem.is_elided and not premodifiers:
        determiner = ""  # existential one-anaphor: "one at 715am"
    else:
        determiner = "an " if body[0] in _VOWELS else "a "
    return determiner + body


def _capitalized(s: str) -> str:
    return s[:1].upper() + s[1:]


def realize_response(spec: SpeechActSpec) -> str:
    """Render a full response sentence from a speech-act specification."""
    if spec.polarity is Polarity.DENY:
        if spec.relation is DiscourseRelation.CONTRAST and spec.nps:
            _, np = spec.nps[0]
            return f"No, but there is {realize_np(np)}."
        return "No."
    if spec.polarity is Polarity.AFFIRM:
        name = spec.payload_value("name")
        entity, _ = spec.nps[0] if spec.nps else (None, None)
        label = name.value if isinstance(name, Text) else (entity or "it")
        start = spec.payload_value("starttime")
        if isinstance(start, ClockTime):
            return f"Yes, {label} leaves at {realize_time(start)}."
        return f"Yes, {label}."
    # Inform + elaboration.
    _, np = spec.nps[0]
    start = spec.payload_value("starttime")
    phrase = _capitalized(realize_np(np))
    if isinstance(start, ClockTime):
        return f"{phrase} leaves at {realize_time(start)}."
    return f"{phrase}."
