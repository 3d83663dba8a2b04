"""Session front door: CLI REPL and HTTP API with full decision traces.

Every turn flows parse -> frame -> dialogue manager -> realizer; the trace
captures each frame snapshot (five columns, rows in frame order), the
discourse relation, the licensing flag, and the NP semantics used, in a
JSON shape directly comparable to the engine's internal tables.

HTTP surface (JSON bodies):
    POST   /api/sessions                {"home_city"?}  -> {"session_id"}
    POST   /api/sessions/{id}/turns     {"text"}        -> {"answer", "trace"}
    GET    /api/sessions/{id}                           -> {"session_id", "transcript"}
    DELETE /api/sessions/{id}                           -> {"deleted"}
"""

from __future__ import annotations

import argparse
import os
import sys
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from pydantic import BaseModel

from .dialogue import (
    DiscourseRelation,
    NoActiveSet,
    TurnTrace,
    answer_query,
    elaborate_set,
)
from .discourse import DiscourseContext, update_context
from .kb import ClockTime, KBLoadError, KnowledgeBase, Value, load_kb, value_text
from .parser import (
    ELABORATE_PATTERN,
    QUERY_PATTERN,
    ParsedElaborate,
    ParsedQuery,
    SessionDefaults,
    UnknownCity,
    Unparseable,
    frame_from_parse,
    parse_turn,
)
from .query import DEFAULT_POLICY, ElementStatus, QueryElement, QueryFrame, RelaxationPolicy
from .realize import realize_response
from .semantics import SemanticNP

APOLOGY = "Sorry, I didn't understand that."
NO_ACTIVE_SET_ANSWER = "Sorry, there is no current set of results to choose from."

FRAME_COLUMNS = ("attribute", "variable", "status", "given", "new")


@dataclass
class TurnRecord:
    user: str
    answer: str
    trace: TurnTrace


@dataclass
class Session:
    """One conversation: its context, defaults, policy, and transcript.

    Turns within a session are strictly sequential (guarded by the lock);
    distinct sessions share only the immutable KB.
    """

    id: str
    kb: KnowledgeBase
    defaults: SessionDefaults = field(default_factory=SessionDefaults)
    policy: RelaxationPolicy = DEFAULT_POLICY
    context: DiscourseContext = field(default_factory=DiscourseContext)
    transcript: list[TurnRecord] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


def new_session(
    kb: KnowledgeBase,
    home_city: str = "Sydney",
    policy: RelaxationPolicy = DEFAULT_POLICY,
) -> Session:
    return Session(id=uuid.uuid4().hex[:12], kb=kb, defaults=SessionDefaults(home_city), policy=policy)


def _given_text(element: QueryElement) -> str:
    if element.given is None:
        return ""
    bound = element.given.bound
    if isinstance(bound, ClockTime) and element.status is ElementStatus.RELAXED:
        # Relaxation-computed bounds print in full HHMM; user-given ones as written.
        bound_text = f"{bound.hhmm:04d}"
    else:
        bound_text = value_text(bound)
    return f"{element.variable} {element.given.relation.value} {bound_text}"


def _new_text(element: QueryElement) -> str:
    if element.new is None:
        return ""
    return f"{element.variable} = {value_text(element.new)}"


def frame_rows(frame: QueryFrame) -> list[dict[str, str]]:
    """The five-column table of a frame snapshot, rows in frame order."""
    return [
        {
            "attribute": e.attribute,
            "variable": e.variable,
            "status": e.status.value,
            "given": _given_text(e),
            "new": _new_text(e),
        }
        for e in frame.elements
    ]


def _value_json(value: Value) -> str:
    if isinstance(value, ClockTime):
        return f"{value.hhmm:04d}"
    return value_text(value)


def sem_json(sem: SemanticNP) -> dict:
    return {
        "index": sem.index,
        "given": sem.given,
        "type": "phi" if sem.is_elided else sem.head_type,
        "properties": [
            {"attribute": attribute, "value": _value_json(value)}
            for attribute, value in sem.properties
        ],
    }


def trace_json(trace: TurnTrace) -> dict:
    payload = {
        "frames": [frame_rows(f) for f in trace.frames],
        "relation": trace.relation.value,
        "licensed": trace.licensed,
        "sems": [sem_json(s) for s in trace.sems],
        "answer": trace.answer,
    }
    if trace.error is not None:
        payload["error"] = trace.error
    return payload


def run_turn(session: Session, text: str) -> tuple[str, TurnTrace]:
    """Process one user turn; always yields an answer string and a trace."""
    with session.lock:
        parsed = parse_turn(text)
        if isinstance(parsed, Unparseable):
            answer = APOLOGY
            trace = TurnTrace((), DiscourseRelation.NONE, licensed=False, error="unparseable")
            session.context = update_context(session.context, (), ())
        elif isinstance(parsed, ParsedElaborate):
            try:
                spec, new_context = elaborate_set(session.kb, session.context, parsed.selector)
            except NoActiveSet:
                answer = NO_ACTIVE_SET_ANSWER
                trace = TurnTrace((), DiscourseRelation.NONE, licensed=False, error="no_active_set")
                session.context = update_context(session.context, (), ())
            else:
                answer = realize_response(spec)
                _, form = spec.nps[0]
                trace = TurnTrace(
                    (),
                    DiscourseRelation.ELABORATION,
                    licensed=True,
                    sems=(form.sem,),  # type: ignore[union-attr]
                )
                session.context = new_context
        else:
            assert isinstance(parsed, ParsedQuery)
            try:
                frame = frame_from_parse(parsed, session.kb, session.defaults)
            except UnknownCity as err:
                answer = f"Sorry, I don't know the city {err.name}."
                trace = TurnTrace((), DiscourseRelation.NONE, licensed=False, error="unknown_city")
                session.context = update_context(session.context, (), ())
            else:
                spec, trace, new_context = answer_query(
                    session.kb, frame, session.context, session.policy
                )
                answer = realize_response(spec)
                session.context = new_context
        trace.answer = answer
        session.transcript.append(TurnRecord(user=text, answer=answer, trace=trace))
        return answer, trace


def frame_table(frame: QueryFrame) -> str:
    """Plain-text rendering of a frame snapshot's five-column table."""
    headers = tuple(c.capitalize() for c in FRAME_COLUMNS)
    rows = [tuple(row[c] for c in FRAME_COLUMNS) for row in frame_rows(frame)]
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


def repl(
    kb: KnowledgeBase,
    show_trace: bool = False,
    home_city: str = "Sydney",
    input_stream: TextIO | None = None,
    output_stream: TextIO | None = None,
) -> None:
    """Line-oriented loop: read a turn, print the answer (and trace tables)."""
    stdin = input_stream if input_stream is not None else sys.stdin
    stdout = output_stream if output_stream is not None else sys.stdout
    session = new_session(kb, home_city=home_city)
    interactive = stdin.isatty() if hasattr(stdin, "isatty") else False
    while True:
        if interactive:
            stdout.write("> ")
            stdout.flush()
        line = stdin.readline()
        if line == "":
            break
        text = line.strip()
        if not text:
            continue
        answer, trace = run_turn(session, text)
        stdout.write(answer + "\n")
        if show_trace:
            for i, frame in enumerate(trace.frames, start=1):
                stdout.write(f"-- frame {i} --\n{frame_table(frame)}\n")
            stdout.write(
                f"-- relation: {trace.relation.value}  licensed: {trace.licensed}"
                + (f"  error: {trace.error}" if trace.error else "")
                + " --\n"
            )
        stdout.flush()


class SessionRequest(BaseModel):
    home_city: str | None = None


class TurnRequest(BaseModel):
    text: str


def create_app(
    kb: KnowledgeBase,
    default_home_city: str = "Sydney",
    policy: RelaxationPolicy = DEFAULT_POLICY,
):
    """The HTTP application; sessions live in memory for the app's lifetime."""
    from fastapi import FastAPI, HTTPException
    from fastapi.middleware.cors import CORSMiddleware

    from .parser import _resolve_city

    app = FastAPI(title="coopq")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def get_session(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no such session: {session_id}")
        return session

    @app.post("/api/sessions")
    def create_session(request: SessionRequest | None = None) -> dict:
        home_city = (request.home_city if request else None) or default_home_city
        try:
            _resolve_city(kb, home_city)
        except UnknownCity:
            raise HTTPException(status_code=400, detail=f"unknown home city: {home_city}")
        session = new_session(kb, home_city=home_city, policy=policy)
        with registry_lock:
            sessions[session.id] = session
        return {"session_id": session.id}

    @app.post("/api/sessions/{session_id}/turns")
    def post_turn(session_id: str, request: TurnRequest) -> dict:
        session = get_session(session_id)
        answer, trace = run_turn(session, request.text)
        return {"answer": answer, "trace": trace_json(trace)}

    @app.get("/api/sessions/{session_id}")
    def read_session(session_id: str) -> dict:
        session = get_session(session_id)
        with session.lock:
            transcript = [
                {"user": r.user, "answer": r.answer, "trace": trace_json(r.trace)}
                for r in session.transcript
            ]
        return {"session_id": session_id, "transcript": transcript}

    @app.delete("/api/sessions/{session_id}")
    def delete_session(session_id: str) -> dict:
        with registry_lock:
            if session_id not in sessions:
                raise HTTPException(status_code=404, detail=f"no such session: {session_id}")
            del sessions[session_id]
        return {"deleted": session_id}

    return app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="coopq",
        description="Cooperative query dialogue over an entity-property knowledge base.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "understood turns:\n"
            f"  {QUERY_PATTERN}\n"
            f"  {ELABORATE_PATTERN}\n"
            "  which is the (earliest|latest) <TYPE>\n"
            "times: 7am, 715am, 0715am, or bare HHMM digits; 12am is midnight, 12pm is noon."
        ),
    )
    parser.add_argument("--kb", help="knowledge base file (env COOPQ_KB overrides)")
    parser.add_argument("--serve", type=int, metavar="PORT", help="run the HTTP API instead of the REPL")
    parser.add_argument("--trace", action="store_true", help="print frame tables after each REPL turn")
    parser.add_argument("--home-city", default="Sydney", help='implicit origin city (default "Sydney")')
    args = parser.parse_args(argv)

    kb_path = os.environ.get("COOPQ_KB") or args.kb
    if not kb_path:
        parser.error("--kb is required (or set COOPQ_KB)")
    try:
        kb = load_kb(Path(kb_path).read_text())
    except OSError as err:
        print(f"coopq: cannot read {kb_path}: {err}", file=sys.stderr)
        return 2
    except KBLoadError as err:
        print(f"coopq: invalid knowledge base {kb_path}: {err}", file=sys.stderr)
        return 2

    if args.serve is not None:
        import uvicorn

        uvicorn.run(create_app(kb, default_home_city=args.home_city), host="127.0.0.1", port=args.serve)
        return 0
    repl(kb, show_trace=args.trace, home_city=args.home_city)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
