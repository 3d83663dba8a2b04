// Wire types of the engine's HTTP API. The UI renders these untouched:
// frames and semantics are never recomputed client-side.

export interface FrameRow {
  attribute: string;
  variable: string;
  status: string; // exactly "initial" or "relaxed", as served
  given: string;
  new: string;
}

export interface SemProperty {
  attribute: string;
  value: string;
}

export interface SemJson {
  index: string | null;
  given: boolean;
  type: string; // "phi" for the empty head type
  properties: SemProperty[];
}

export interface TraceJson {
  frames: FrameRow[][];
  relation: string;
  licensed: boolean;
  sems: SemJson[];
  answer: string;
  error?: string;
}

export interface TurnResponse {
  answer: string;
  trace: TraceJson;
}

export interface TranscriptEntry {
  user: string;
  answer: string;
  trace: TraceJson;
}
