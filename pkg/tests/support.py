"""Shared test machinery: an independent brute-force query oracle and seeded
random generators for stores, frames, and dialogue scripts."""

from __future__ import annotations

import random

from coopq import (
    ClockTime,
    Constraint,
    EntityRef,
    KnowledgeBase,
    QueryElement,
    QueryFrame,
    Relation,
    Symbol,
    load_kb,
)


def oracle_evaluate(kb: KnowledgeBase, frame: QueryFrame) -> list[dict]:
    """Enumerate every entity and check every constraint directly.

    Deliberately naive: collects each entity's facts into a dict and applies
    the relations by hand, independent of the engine's evaluation path.
    """
    solutions = []
    for entity in kb.entities:
        facts = {f.attribute: f.value for f in kb.facts if f.subject == entity}
        facts["entity"] = EntityRef(entity)
        acceptable = True
        for element in frame.elements:
            constraint = element.given
            if constraint is None:
                continue
            value = facts.get(element.attribute)
            if value is None:
                acceptable = False
            elif constraint.relation is Relation.EQ:
                acceptable = value == constraint.bound
            elif not isinstance(value, ClockTime) or not isinstance(constraint.bound, ClockTime):
                acceptable = False
            elif constraint.relation is Relation.LT:
                acceptable = value.hhmm < constraint.bound.hhmm
            else:
                acceptable = value.hhmm > constraint.bound.hhmm
            if not acceptable:
                break
        if acceptable:
            solutions.append(
                {
                    element.variable: facts[element.attribute]
                    for element in frame.elements
                    if element.attribute in facts
                }
            )
    return solutions


def solution_set(bindings: list[dict]) -> set[frozenset]:
    return {frozenset(b.items()) for b in bindings}


CITY_NAMES = ["Sydney", "Melbourne", "Brisbane", "Perth", "Adelaide"]
TYPES = ["flight", "train", "bus"]
COLOURS = ["red", "blue", "green", "magenta"]


def random_clocktime(rng: random.Random) -> int:
    return rng.randrange(0, 24) * 100 + rng.randrange(0, 60)


def random_kb_text(rng: random.Random, max_entities: int = 20) -> str:
    """A random store: a few named cities plus typed vehicles with time facts.

    Attribute pool is capped at six (type, name, startpoint, endpoint,
    starttime, endtime, colour minus whatever the draw omits).
    """
    lines = []
    n_cities = rng.randint(1, min(4, max_entities))
    cities = []
    names = rng.sample(CITY_NAMES, n_cities)
    if "Sydney" not in names:
        names[0] = "Sydney"  # the default home city must resolve
    for i, name in enumerate(names):
        city = f"c{i}"
        cities.append(city)
        lines.append(f"entity({city}).")
        lines.append(f"property({city}, type, city).")
        lines.append(f'property({city}, name, "{name}").')
    n_vehicles = rng.randint(0, max_entities - n_cities)
    for i in range(n_vehicles):
        vehicle = f"v{i}"
        lines.append(f"entity({vehicle}).")
        lines.append(f"property({vehicle}, type, {rng.choice(TYPES)}).")
        if rng.random() < 0.8:
            lines.append(f'property({vehicle}, name, "V{i}").')
        if rng.random() < 0.9:
            lines.append(f"property({vehicle}, startpoint, {rng.choice(cities)}).")
        if rng.random() < 0.9:
            lines.append(f"property({vehicle}, endpoint, {rng.choice(cities)}).")
        if rng.random() < 0.85:
            lines.append(f"property({vehicle}, starttime, {random_clocktime(rng):04d}).")
        if rng.random() < 0.5:
            lines.append(f"property({vehicle}, endtime, {random_clocktime(rng):04d}).")
    return "\n".join(lines) + "\n"


def random_kb(rng: random.Random, max_entities: int = 20) -> KnowledgeBase:
    return load_kb(random_kb_text(rng, max_entities))


def random_frame(rng: random.Random, kb: KnowledgeBase) -> QueryFrame:
    """A random well-formed frame over the store's vocabulary."""
    entities = list(kb.entities)
    elements = [QueryElement("entity", "E")]
    if rng.random() < 0.9:
        elements.append(
            QueryElement("type", "T", given=Constraint(Relation.EQ, Symbol(rng.choice(TYPES + ["city"]))))
        )
    else:
        elements.append(QueryElement("type", "T"))
    for attribute, variable in (("startpoint", "C1"), ("endpoint", "C2")):
        draw = rng.random()
        if draw < 0.45 and entities:
            given = Constraint(Relation.EQ, EntityRef(rng.choice(entities)))
            elements.append(QueryElement(attribute, variable, given=given))
        elif draw < 0.7:
            elements.append(QueryElement(attribute, variable))
    for attribute, variable in (("starttime", "T1"), ("endtime", "T2")):
        draw = rng.random()
        if draw < 0.5:
            relation = rng.choice([Relation.LT, Relation.GT])
            given = Constraint(relation, ClockTime(random_clocktime(rng)))
            elements.append(QueryElement(attribute, variable, given=given))
        elif draw < 0.8:
            elements.append(QueryElement(attribute, variable))
    return QueryFrame(tuple(elements))


def random_time_token(rng: random.Random) -> str:
    hhmm = random_clocktime(rng)
    hours, minutes = divmod(hhmm, 100)
    style = rng.randrange(3)
    if style == 0:
        return f"{hhmm:04d}"
    suffix = "am" if hours < 12 else "pm"
    hour12 = hours % 12 or 12
    if style == 1 and minutes == 0:
        return f"{hour12}{suffix}"
    return f"{hour12}{minutes:02d}{suffix}"


def _city_name(kb: KnowledgeBase, entity) -> str | None:
    name = kb.lookup(entity.entity, "name") if entity is not None else None
    return name.value if name is not None and hasattr(name, "value") else None


def _near_miss_query(rng: random.Random, kb: KnowledgeBase) -> str | None:
    """A query aimed at a real vehicle but with a time bound it just misses."""
    candidates = []
    for entity in kb.entities:
        type_fact = kb.lookup(entity, "type")
        start = kb.lookup(entity, "startpoint")
        end = kb.lookup(entity, "endpoint")
        time = kb.lookup(entity, "starttime")
        if (
            isinstance(type_fact, Symbol)
            and type_fact.name != "city"
            and isinstance(start, EntityRef)
            and isinstance(end, EntityRef)
            and isinstance(time, ClockTime)
        ):
            candidates.append((entity, type_fact, start, end, time))
    if not candidates:
        return None
    _, type_fact, start, end, time = rng.choice(candidates)
    origin = _city_name(kb, start)
    destination = _city_name(kb, end)
    if origin is None or destination is None:
        return None
    total = time.minutes_from_midnight
    if rng.random() < 0.5 and total > 5:
        # "before" a bound at or just under the departure time
        bound = ClockTime.from_minutes(total - rng.randint(1, 120))
        keyword = "before"
    else:
        bound = ClockTime.from_minutes(total + rng.randint(1, 120))
        keyword = "after"
    hours, minutes = divmod(bound.hhmm, 100)
    suffix = "am" if hours < 12 else "pm"
    token = f"{hours % 12 or 12}{minutes:02d}{suffix}"
    return f"Is there a {type_fact.name} from {origin} to {destination} {keyword} {token}?"


def random_query_text(rng: random.Random, kb: KnowledgeBase) -> str:
    """A random turn, mostly inside the grammar, sometimes deliberately not."""
    draw = rng.random()
    if draw < 0.05:
        return rng.choice(["tell me everything", "what is the meaning of life", "??"])
    if draw < 0.55:
        targeted = _near_miss_query(rng, kb)
        if targeted is not None:
            return targeted
    known = [
        n.value  # type: ignore[union-attr]
        for e in kb.entities_of_type("city")
        for n in (kb.lookup(e, "name"),)
        if n is not None
    ]
    cities = known + ["Atlantis"]  # occasionally an unknown city
    entity_type = rng.choice(TYPES + ["boat"])
    destination = rng.choice(cities)
    text = f"Is there a {entity_type}"
    if rng.random() < 0.3:
        text += f" from {rng.choice(cities)}"
    text += f" to {destination}"
    if rng.random() < 0.7:
        keyword = rng.choice(["before", "after"])
        text += f" {keyword} {random_time_token(rng)}"
    return text + "?"
