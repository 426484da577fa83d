// Typed client for the mathpar HTTP service. Every mathematical result shown
// by the notebook comes back through this module; nothing is computed locally.

export interface Output {
  label: string | null;
  display: string;
  source: string;
}

export interface Diagnostic {
  severity: string;
  code: string;
  message: string;
  span: [number, number] | null;
}

export interface CellResult {
  ok: boolean;
  outputs: Output[];
  diagnostics: Diagnostic[];
}

export interface SessionInfo {
  session_id: string;
  precision: number;
  unknown: string;
  bindings: string[];
}

export interface SessionSettings {
  precision?: number;
  unknown?: string;
}

// The narrow surface the notebook state machine needs. Tests substitute a
// recording fake; production uses ServiceClient below.
export interface Transport {
  createSession(settings?: SessionSettings): Promise<SessionInfo>;
  deleteSession(sessionId: string): Promise<void>;
  evalSource(sessionId: string, source: string): Promise<CellResult[]>;
  split(text: string): Promise<string[]>;
  join(cells: string[]): Promise<string>;
}

export class ServiceError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

interface EvalResponse {
  results: CellResult[];
}

export class ServiceClient implements Transport {
  constructor(
    public baseUrl: string,
    private fetchFn: typeof fetch = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = `http-${response.status}`;
      let message = response.statusText || code;
      try {
        const data = await response.json();
        if (typeof data.error === "string") code = data.error;
        if (typeof data.message === "string") message = data.message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ServiceError(response.status, code, message);
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  async health(): Promise<{ status: string; version: string }> {
    return this.request("GET", "/health");
  }

  async createSession(settings: SessionSettings = {}): Promise<SessionInfo> {
    return this.request("POST", "/sessions", settings);
  }

  async getSession(sessionId: string): Promise<SessionInfo> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.request<void>("DELETE", `/sessions/${sessionId}`);
  }

  async resetSession(sessionId: string): Promise<SessionInfo> {
    return this.request("POST", `/sessions/${sessionId}/reset`, {});
  }

  async updateSettings(sessionId: string, settings: SessionSettings): Promise<SessionInfo> {
    return this.request("POST", `/sessions/${sessionId}/settings`, settings);
  }

  async evalSource(sessionId: string, source: string): Promise<CellResult[]> {
    const data = await this.request<EvalResponse>("POST", `/sessions/${sessionId}/eval`, { source });
    return data.results;
  }

  async split(text: string): Promise<string[]> {
    const data = await this.request<{ cells: string[] }>("POST", "/split", { source: text });
    return data.cells;
  }

  async join(cells: string[]): Promise<string> {
    const data = await this.request<{ source: string }>("POST", "/join", { cells });
    return data.source;
  }
}
