"""Entity-property knowledge base.

The store is populated from a flat fact file in which each entity is
declared once (``entity(qf400).``) and then described by functional
attribute facts (``property(qf400, starttime, 0715).``). Attributes are
functional: a subject carries at most one value per attribute, so lookups
are unambiguous. The loaded store is immutable and may be shared freely
across concurrent sessions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class KBLoadError(ValueError):
    """Raised when a knowledge-base file cannot be loaded."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class KBSyntaxError(KBLoadError):
    pass


class UndeclaredEntityError(KBLoadError):
    pass


class DuplicateFactError(KBLoadError):
    pass


class MalformedClockTimeError(KBLoadError):
    pass


@dataclass(frozen=True)
class ClockTime:
    """A time of day stored as the HHMM integer exactly as written (0715 -> 715).

    Plain integer order on `hhmm` is monotone with wall-clock time because
    the minutes part is always < 60.
    """

    hhmm: int

    def __post_init__(self) -> None:
        hours, minutes = divmod(self.hhmm, 100)
        if not (0 <= hours <= 23 and 0 <= minutes <= 59):
            raise ValueError(f"not a valid HHMM clock time: {self.hhmm}")

    @property
    def minutes_from_midnight(self) -> int:
        hours, minutes = divmod(self.hhmm, 100)
        return hours * 60 + minutes

    @staticmethod
    def from_minutes(total: int) -> "ClockTime":
        total = min(max(total, 0), 23 * 60 + 59)
        return ClockTime((total // 60) * 100 + total % 60)


@dataclass(frozen=True)
class Text:
    """A quoted string value, e.g. a display name."""

    value: str


@dataclass(frozen=True)
class Symbol:
    """An unquoted identifier value that is not a declared entity."""

    name: str


@dataclass(frozen=True)
class EntityRef:
    """An unquoted value that names a declared entity."""

    entity: str


Value = ClockTime | Text | Symbol | EntityRef


def value_text(value: Value) -> str:
    """Plain display form of a value (entity id, symbol name, raw text, HHMM integer)."""
    if isinstance(value, ClockTime):
        return str(value.hhmm)
    if isinstance(value, Text):
        return value.value
    if isinstance(value, Symbol):
        return value.name
    return value.entity


@dataclass(frozen=True)
class Fact:
    subject: str
    attribute: str
    value: Value


@dataclass(frozen=True)
class KnowledgeBase:
    """Immutable store of entities and functional attribute-value facts.

    `entities` preserves declaration order, which is the canonical
    iteration order everywhere (query results, tie-breaking, traces).
    """

    entities: tuple[str, ...]
    facts: tuple[Fact, ...]
    _index: dict[tuple[str, str], Value] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        declared = set(self.entities)
        index: dict[tuple[str, str], Value] = {}
        for fact in self.facts:
            if fact.subject not in declared:
                raise UndeclaredEntityError(f"fact subject {fact.subject!r} is not a declared entity")
            if isinstance(fact.value, EntityRef) and fact.value.entity not in declared:
                raise UndeclaredEntityError(f"value {fact.value.entity!r} is not a declared entity")
            key = (fact.subject, fact.attribute)
            if key in index:
                raise DuplicateFactError(f"duplicate fact for ({fact.subject}, {fact.attribute})")
            index[key] = fact.value
        object.__setattr__(self, "_index", index)

    def lookup(self, subject: str, attribute: str) -> Value | None:
        """The unique value of (subject, attribute), or None if no such fact."""
        return self._index.get((subject, attribute))

    def entities_of_type(self, type_symbol: str) -> tuple[str, ...]:
        """All entities whose type fact equals `type_symbol`, in declaration order."""
        wanted = Symbol(type_symbol)
        return tuple(e for e in self.entities if self.lookup(e, "type") == wanted)

    def attributes_of(self, subject: str) -> tuple[str, ...]:
        """The subject's fact attributes in declaration order."""
        return tuple(f.attribute for f in self.facts if f.subject == subject)


_ID_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_DIGITS_RE = re.compile(r"[0-9]+")


class _RawValue:
    __slots__ = ("kind", "lexeme", "line", "column")

    def __init__(self, kind: str, lexeme: str, line: int, column: int):
        self.kind = kind  # "id" | "quoted" | "digits"
        self.lexeme = lexeme
        self.line = line
        self.column = column


class _LineParser:
    """Cursor over one source line, reporting 1-based columns on error."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str) -> KBSyntaxError:
        return KBSyntaxError(message, line=self.lineno, column=self.pos + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def take_id(self) -> str:
        m = _ID_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected an identifier")
        self.pos = m.end()
        return m.group()

    def take_value(self) -> _RawValue:
        col = self.pos + 1
        if self.pos < len(self.text) and self.text[self.pos] == '"':
            end = self.text.find('"', self.pos + 1)
            if end == -1:
                raise self.error("unterminated string")
            lexeme = self.text[self.pos + 1 : end]
            self.pos = end + 1
            return _RawValue("quoted", lexeme, self.lineno, col)
        m = _DIGITS_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return _RawValue("digits", m.group(), self.lineno, col)
        m = _ID_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return _RawValue("id", m.group(), self.lineno, col)
        raise self.error("expected a value (identifier, quoted string, or digits)")

    def expect_end(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing characters")


def load_kb(source_text: str) -> KnowledgeBase:
    """Parse and validate a fact file, returning an immutable KnowledgeBase.

    Grammar, line by line: blank lines, ``%`` comments, ``entity(<id>).``
    declarations, and ``property(<id>, <token>, <value>).`` facts, where a
    value is an identifier, a quoted string, or digits. A subject must be
    declared before it carries facts; entity-valued facts may refer
    forwards. All-digit values are clock times and must be valid HHMM.
    """
    entities: list[str] = []
    declared: set[str] = set()
    raw_facts: list[tuple[str, str, _RawValue, int]] = []

    for lineno, line in enumerate(source_text.splitlines(), start=1):
        p = _LineParser(line, lineno)
        p.skip_ws()
        if p.pos == len(line):
            continue
        if line[p.pos] == "%":
            continue
        if line.startswith("entity(", p.pos):
            p.expect("entity(")
            name = p.take_id()
            p.expect(").")
            p.expect_end()
            if name in declared:
                raise DuplicateFactError(f"entity {name!r} declared more than once", line=lineno)
            declared.add(name)
            entities.append(name)
        elif line.startswith("property(", p.pos):
            p.expect("property(")
            subject = p.take_id()
            p.expect(",")
            p.skip_ws()
            attribute = p.take_id()
            p.expect(",")
            p.skip_ws()
            raw = p.take_value()
            p.expect(").")
            p.expect_end()
            if subject not in declared:
                raise UndeclaredEntityError(
                    f"subject {subject!r} used before its entity declaration", line=lineno
                )
            raw_facts.append((subject, attribute, raw, lineno))
        else:
            raise p.error("expected an entity declaration or a property fact")

    facts: list[Fact] = []
    seen: set[tuple[str, str]] = set()
    for subject, attribute, raw, lineno in raw_facts:
        if raw.kind == "quoted":
            value: Value = Text(raw.lexeme)
        elif raw.kind == "digits":
            try:
                value = ClockTime(int(raw.lexeme))
            except ValueError:
                raise MalformedClockTimeError(
                    f"{raw.lexeme!r} is not a valid HHMM clock time", line=raw.line, column=raw.column
                ) from None
        elif raw.lexeme in declared:
            value = EntityRef(raw.lexeme)
        else:
            value = Symbol(raw.lexeme)
        key = (subject, attribute)
        if key in seen:
            raise DuplicateFactError(f"duplicate fact for ({subject}, {attribute})", line=lineno)
        seen.add(key)
        facts.append(Fact(subject, attribute, value))

    return KnowledgeBase(entities=tuple(entities), facts=tuple(facts))
