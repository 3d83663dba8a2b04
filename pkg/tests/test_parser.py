from __future__ import annotations

import pytest

from coopq import (
    ClockTime,
    Constraint,
    ElementStatus,
    EntityRef,
    ParsedElaborate,
    ParsedQuery,
    Relation,
    SessionDefaults,
    Symbol,
    UnknownCity,
    Unparseable,
    frame_from_parse,
    parse_turn,
)
from coopq.parser import parse_time


def test_reference_query_parses():
    parsed = parse_turn("Is there a flight to Melbourne before 7am?")
    assert parsed == ParsedQuery(
        entity_type="flight",
        destination="Melbourne",
        origin=None,
        time_relation=(Relation.LT, ClockTime(700)),
    )


def test_explicit_origin():
    parsed = parse_turn("is there a flight from Melbourne to Sydney")
    assert parsed == ParsedQuery(entity_type="flight", destination="Sydney", origin="Melbourne")


def test_after_gives_a_lower_bound():
    parsed = parse_turn("Is there a train to Sydney after 930am?")
    assert parsed.time_relation == (Relation.GT, ClockTime(930))


def test_elaboration_phrases():
    assert parse_turn("Which is the earliest one?") == ParsedElaborate("earliest")
    assert parse_turn("which is the latest flight") == ParsedElaborate("latest")


def test_case_and_punctuation_are_ignored(flights_kb):
    shouted = parse_turn("IS THERE A FLIGHT TO MELBOURNE BEFORE 7AM???")
    plain = parse_turn("is there a flight to melbourne before 7am")
    assert isinstance(shouted, ParsedQuery) and isinstance(plain, ParsedQuery)
    assert shouted.entity_type == plain.entity_type == "flight"
    assert shouted.time_relation == plain.time_relation
    # City casing is preserved for messages; resolution is case-insensitive.
    defaults = SessionDefaults()
    assert frame_from_parse(shouted, flights_kb, defaults) == frame_from_parse(
        plain, flights_kb, defaults
    )


def test_out_of_grammar_text_is_unparseable():
    parsed = parse_turn("What is the meaning of life?")
    assert isinstance(parsed, Unparseable)
    assert parsed.text == "What is the meaning of life?"
    assert "is there a <TYPE>" in parsed.hint


def test_unparseable_is_total_not_raising():
    for text in ("", "?", "is there", "is there a", "which is the", "to Melbourne"):
        assert isinstance(parse_turn(text), Unparseable)


def test_near_miss_hints_point_at_the_closest_pattern():
    assert "is there a <TYPE>" in parse_turn("is there a flight").hint
    assert "earliest" in parse_turn("which one").hint


TIME_TABLE = {
    "7am": 700,
    "715am": 715,
    "1pm": 1300,
    "12am": 0,
    "12pm": 1200,
    "0715": 715,
    "1130pm": 2330,
    "0715am": 715,
    "12": None,  # bare digits must be HHMM
    "2500": None,
    "1299": None,
    "13pm": None,
    "0am": None,
    "7:15am": None,
}


def test_time_token_table():
    for token, hhmm in TIME_TABLE.items():
        parsed = parse_time(token)
        if hhmm is None:
            assert parsed is None, token
        else:
            assert parsed == ClockTime(hhmm), token


def test_reference_frame_from_parse(flights_kb):
    parsed = parse_turn("Is there a flight to Melbourne before 7am?")
    frame = frame_from_parse(parsed, flights_kb, SessionDefaults())
    rows = [
        (e.attribute, e.variable, e.status, e.given)
        for e in frame.elements
    ]
    assert rows == [
        ("entity", "E", ElementStatus.INITIAL, None),
        ("type", "T", ElementStatus.INITIAL, Constraint(Relation.EQ, Symbol("flight"))),
        ("startpoint", "C1", ElementStatus.INITIAL, Constraint(Relation.EQ, EntityRef("s1"))),
        ("endpoint", "C2", ElementStatus.INITIAL, Constraint(Relation.EQ, EntityRef("m1"))),
        ("starttime", "T1", ElementStatus.INITIAL, Constraint(Relation.LT, ClockTime(700))),
        ("endtime", "T2", ElementStatus.INITIAL, None),
    ]
    assert all(e.new is None for e in frame.elements)


def test_explicit_origin_resolves_both_cities(flights_kb):
    parsed = parse_turn("Is there a flight from Melbourne to Sydney?")
    frame = frame_from_parse(parsed, flights_kb, SessionDefaults())
    assert frame.element("startpoint").given == Constraint(Relation.EQ, EntityRef("m1"))
    assert frame.element("endpoint").given == Constraint(Relation.EQ, EntityRef("s1"))


def test_unknown_city_is_reported(flights_kb):
    parsed = parse_turn("Is there a flight to Perth?")
    with pytest.raises(UnknownCity) as err:
        frame_from_parse(parsed, flights_kb, SessionDefaults())
    assert err.value.name == "Perth"


def test_unknown_home_city_is_reported(flights_kb):
    parsed = parse_turn("Is there a flight to Melbourne?")
    with pytest.raises(UnknownCity):
        frame_from_parse(parsed, flights_kb, SessionDefaults(home_city="Atlantis"))


def test_city_resolution_is_case_insensitive(flights_kb):
    parsed = parse_turn("is there a flight to melbourne")
    frame = frame_from_parse(parsed, flights_kb, SessionDefaults())
    assert frame.element("endpoint").given == Constraint(Relation.EQ, EntityRef("m1"))


def test_round_trip_preserves_the_time_bound(flights_kb):
    parsed = parse_turn("Is there a flight to Melbourne before 1130pm?")
    frame = frame_from_parse(parsed, flights_kb, SessionDefaults())
    assert frame.element("starttime").given == Constraint(Relation.LT, ClockTime(2330))
