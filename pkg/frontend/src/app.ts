// DOM bootstrap for the chat client. All engine data shown here comes
// straight from the server responses; the inspector panel renders whichever
// turn is selected (the latest by default).

import { ApiClient, ApiError } from "./api.js";
import { renderTurnView } from "./render.js";
import type { TraceJson } from "./types.js";

interface TurnEntry {
  user: string;
  answer: string;
  trace: TraceJson;
}

const apiBase = new URLSearchParams(location.search).get("api") ?? "";
const api = new ApiClient(apiBase);

const messages = document.getElementById("messages") as HTMLElement;
const inspector = document.getElementById("inspector") as HTMLElement;
const input = document.getElementById("input") as HTMLInputElement;
const sendButton = document.getElementById("send") as HTMLButtonElement;
const newButton = document.getElementById("new-session") as HTMLButtonElement;
const resetButton = document.getElementById("reset-session") as HTMLButtonElement;
const homeCityInput = document.getElementById("home-city") as HTMLInputElement;
const sessionLabel = document.getElementById("session-label") as HTMLElement;

let sessionId: string | null = null;
let turns: TurnEntry[] = [];
let selected = -1;

function note(text: string, kind: "system" | "error"): void {
  const el = document.createElement("div");
  el.className = `msg ${kind}`;
  el.textContent = text;
  messages.appendChild(el);
  messages.scrollTop = messages.scrollHeight;
}

function bubble(text: string, role: "user" | "answer", turnIndex: number): void {
  const el = document.createElement("div");
  el.className = `msg ${role}`;
  el.textContent = text;
  el.addEventListener("click", () => selectTurn(turnIndex));
  messages.appendChild(el);
  messages.scrollTop = messages.scrollHeight;
}

function selectTurn(index: number): void {
  if (index < 0 || index >= turns.length) {
    inspector.innerHTML = `<p class="placeholder">No turn selected.</p>`;
    return;
  }
  selected = index;
  inspector.innerHTML = renderTurnView(turns[index]!);
}

function errorText(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  return err instanceof Error ? `network error: ${err.message}` : String(err);
}

async function startSession(): Promise<void> {
  const homeCity = homeCityInput.value.trim() || undefined;
  try {
    sessionId = await api.createSession(homeCity);
  } catch (err) {
    sessionId = null;
    sessionLabel.textContent = "no session";
    note(errorText(err), "error");
    return;
  }
  turns = [];
  selected = -1;
  messages.innerHTML = "";
  selectTurn(-1);
  sessionLabel.textContent = `session ${sessionId}`;
  note(`New session (home city: ${homeCityInput.value.trim() || "Sydney"}).`, "system");
}

async function resetSession(): Promise<void> {
  if (sessionId !== null) {
    try {
      await api.deleteSession(sessionId);
    } catch {
      // a stale session id is fine to abandon
    }
  }
  await startSession();
}

async function send(): Promise<void> {
  const text = input.value.trim();
  if (!text || sessionId === null) return;
  sendButton.disabled = true;
  try {
    const response = await api.sendTurn(sessionId, text);
    const entry: TurnEntry = { user: text, answer: response.answer, trace: response.trace };
    turns.push(entry);
    const index = turns.length - 1;
    bubble(text, "user", index);
    bubble(response.answer, "answer", index);
    selectTurn(index);
    input.value = ""; // cleared only on success so a failed send can be retried
  } catch (err) {
    note(errorText(err), "error");
  } finally {
    sendButton.disabled = false;
    input.focus();
  }
}

sendButton.addEventListener("click", () => void send());
input.addEventListener("keydown", (event) => {
  if (event.key === "Enter") {
    event.preventDefault();
    void send();
  }
});
newButton.addEventListener("click", () => void startSession());
resetButton.addEventListener("click", () => void resetSession());

void startSession();
