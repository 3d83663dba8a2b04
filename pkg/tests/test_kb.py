from __future__ import annotations

import pytest

from coopq import ClockTime, EntityRef, Symbol, Text, load_kb
from coopq.kb import (
    DuplicateFactError,
    KBSyntaxError,
    MalformedClockTimeError,
    UndeclaredEntityError,
)


def test_reference_store_loads(flights_kb):
    assert flights_kb.entities == ("qf400", "s1", "m1")
    assert len(flights_kb.facts) == 10


def test_empty_input_is_an_empty_store():
    kb = load_kb("")
    assert kb.entities == ()
    assert kb.facts == ()


def test_lookup_values(flights_kb):
    assert flights_kb.lookup("qf400", "starttime") == ClockTime(715)
    assert flights_kb.lookup("qf400", "endtime") == ClockTime(830)
    assert flights_kb.lookup("s1", "name") == Text("Sydney")
    assert flights_kb.lookup("qf400", "type") == Symbol("flight")
    assert flights_kb.lookup("qf400", "startpoint") == EntityRef("s1")
    assert flights_kb.lookup("qf400", "gate") is None
    assert flights_kb.lookup("nowhere", "type") is None


def test_entities_of_type(flights_kb):
    assert flights_kb.entities_of_type("flight") == ("qf400",)
    assert flights_kb.entities_of_type("city") == ("s1", "m1")
    assert flights_kb.entities_of_type("hotel") == ()


def test_entity_refs_may_point_forwards(flights_kb):
    # qf400's startpoint names s1, declared later in the file.
    assert flights_kb.lookup("qf400", "startpoint") == EntityRef("s1")


def test_undeclared_subject_is_rejected():
    with pytest.raises(UndeclaredEntityError):
        load_kb("property(x, type, flight).\n")


def test_subject_must_be_declared_before_use():
    text = "property(x, type, flight).\nentity(x).\n"
    with pytest.raises(UndeclaredEntityError) as err:
        load_kb(text)
    assert err.value.line == 1


def test_duplicate_fact_is_rejected():
    text = "entity(x).\nproperty(x, type, flight).\nproperty(x, type, train).\n"
    with pytest.raises(DuplicateFactError) as err:
        load_kb(text)
    assert err.value.line == 3


def test_duplicate_entity_declaration_is_rejected():
    with pytest.raises(DuplicateFactError):
        load_kb("entity(x).\nentity(x).\n")


def test_malformed_clock_time_is_rejected():
    with pytest.raises(MalformedClockTimeError):
        load_kb("entity(x).\nproperty(x, starttime, 0790).\n")
    with pytest.raises(MalformedClockTimeError):
        load_kb("entity(x).\nproperty(x, starttime, 2500).\n")


def test_syntax_error_reports_line_and_column():
    with pytest.raises(KBSyntaxError) as err:
        load_kb("entity(x).\nproperty(x type flight).\n")
    assert err.value.line == 2
    assert err.value.column is not None


def test_garbage_line_is_a_syntax_error():
    with pytest.raises(KBSyntaxError) as err:
        load_kb("hello world\n")
    assert err.value.line == 1


def test_comments_and_blank_lines_are_ignored():
    kb = load_kb("% a comment\n\nentity(x).\n  % indented comment\nproperty(x, type, flight).\n")
    assert kb.entities == ("x",)
    assert len(kb.facts) == 1


def test_leading_zeros_parse_as_decimal():
    kb = load_kb("entity(x).\nproperty(x, starttime, 0715).\n")
    value = kb.lookup("x", "starttime")
    assert value == ClockTime(715)


def test_loading_is_deterministic(flights_text):
    assert load_kb(flights_text) == load_kb(flights_text)


def test_facts_are_functional(flights_kb):
    pairs = [(f.subject, f.attribute) for f in flights_kb.facts]
    assert len(pairs) == len(set(pairs))


def test_entities_of_type_members_have_that_type(flights_kb):
    for type_symbol in ("flight", "city"):
        for entity in flights_kb.entities_of_type(type_symbol):
            assert entity in flights_kb.entities
            assert flights_kb.lookup(entity, "type") == Symbol(type_symbol)


def test_clock_time_validates_minutes():
    with pytest.raises(ValueError):
        ClockTime(775)
    with pytest.raises(ValueError):
        ClockTime(2400)
    assert ClockTime(2359).hhmm == 2359
