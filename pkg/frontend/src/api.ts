import type { TranscriptEntry, TurnResponse } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function detailOf(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
  } catch {
    // fall through to the status line
  }
  return `${response.status} ${response.statusText}`;
}

/** Thin client over the engine's session API. */
export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      throw new ApiError(response.status, await detailOf(response));
    }
    return response.json();
  }

  async createSession(homeCity?: string): Promise<string> {
    const body = homeCity ? JSON.stringify({ home_city: homeCity }) : "{}";
    const data = (await this.request("/api/sessions", { method: "POST", body })) as {
      session_id: string;
    };
    return data.session_id;
  }

  async sendTurn(sessionId: string, text: string): Promise<TurnResponse> {
    return (await this.request(`/api/sessions/${sessionId}/turns`, {
      method: "POST",
      body: JSON.stringify({ text }),
    })) as TurnResponse;
  }

  async getTranscript(sessionId: string): Promise<TranscriptEntry[]> {
    const data = (await this.request(`/api/sessions/${sessionId}`)) as {
      transcript: TranscriptEntry[];
    };
    return data.transcript;
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.request(`/api/sessions/${sessionId}`, { method: "DELETE" });
  }
}
