/**
 * Typed client for the mathpar HTTP API.  Every displayed result string in
 * the workbook originates from a RunResponse; the client does no math of
 * its own.
 */

export type OutputMode = "both" | "mathpar" | "latex";

export interface RunOutput {
  label: string | null;
  mathpar: string;
  latex: string;
}

export interface RunDiagnostic {
  severity: string;
  message: string;
  line: number;
  column: number;
}

export interface RunResponse {
  outputs: RunOutput[];
  diagnostics: RunDiagnostic[];
  spaceName: string;
  floatpos: number;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class MathparClient {
  private readonly fetchImpl: FetchLike;

  constructor(readonly baseUrl: string = "", fetchImpl?: FetchLike) {
    // bind so a bare global fetch keeps its expected receiver
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async json<T>(path: string, init: RequestInit = {}): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      throw new ApiError(`${init.method ?? "GET"} ${path} failed: ` +
        `${response.status} ${response.statusText}`, response.status);
    }
    return response.json() as Promise<T>;
  }

  async createSession(): Promise<string> {
    const body = await this.json<{ sessionId: string }>(
      "/api/sessions", { method: "POST", body: "{}" });
    return body.sessionId;
  }

  async run(sessionId: string, source: string,
            outputMode: OutputMode = "both"): Promise<RunResponse> {
    return this.json<RunResponse>(`/api/sessions/${sessionId}/run`, {
      method: "POST",
      body: JSON.stringify({ source, outputMode }),
    });
  }

  async clear(sessionId: string): Promise<void> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/api/sessions/${sessionId}/clear`, { method: "POST" });
    if (!response.ok) {
      throw new ApiError(`clear failed: ${response.status}`, response.status);
    }
  }

  async deleteSession(sessionId: string): Promise<void> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/api/sessions/${sessionId}`, { method: "DELETE" });
    if (!response.ok) {
      throw new ApiError(`delete failed: ${response.status}`, response.status);
    }
  }

  async health(): Promise<{ status: string; version: string }> {
    return this.json("/api/health");
  }
}
