/**
 * HTTP client for the beam lab session service.
 *
 * The service speaks JSON everywhere except POST .../script, which takes
 * raw script text.  A stack arrives as {"beams": [{"intensity": ...}]}
 * from bottom to top in full precision, and errors arrive as
 * {"error": message, "code": tag} with status 400, 404 or 409.
 *
 * The one piece of configuration is the base URL.  A fetch impostor can
 * be injected for tests; nothing here ever computes an intensity.
 */

export interface BeamView {
  intensity: number;
}

export interface StackView {
  beams: BeamView[];
}

/** One executed script line and the beams right after it. */
export interface ScriptStep {
  command: string;
  beams: BeamView[];
}

export interface RunReport {
  steps: ScriptStep[];
  final: StackView;
}

export type CommandKind =
  | "source"
  | "split"
  | "filter"
  | "recombine"
  | "bfield"
  | "drop"
  | "flip"
  | "show";

export type Axis = "x" | "y" | "z";
export type Sign = "+" | "-";

/**
 * Wire form of one command, matching the service's JSON schema: a named
 * axis or an explicit theta/phi pair, a sign only on filters, an omega
 * only on field coils.
 */
export interface CommandBody {
  kind: CommandKind;
  axis?: Axis;
  theta?: number;
  phi?: number;
  sign?: Sign;
  omega?: number;
}

/** A non-2xx response, carrying the server's error code verbatim. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, message: string, code: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

const defaultFetch: FetchLike = (url, init) => fetch(url, init);

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl: FetchLike = defaultFetch) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl;
  }

  async createSession(): Promise<string> {
    const data = await this.request<{ id: string }>("POST", "/sessions", {});
    return data.id;
  }

  getStack(sessionId: string): Promise<StackView> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  applyCommand(sessionId: string, command: CommandBody): Promise<StackView> {
    return this.request("POST", `/sessions/${sessionId}/commands`, command);
  }

  undo(sessionId: string): Promise<StackView> {
    return this.request("POST", `/sessions/${sessionId}/undo`);
  }

  /** Run script text from scratch; the session takes the end state. */
  runScript(sessionId: string, text: string): Promise<RunReport> {
    return this.request("POST", `/sessions/${sessionId}/script`, text, "text/plain");
  }

  /** True when GET /healthz answers "ok"; false on any failure. */
  async health(): Promise<boolean> {
    try {
      const response = await this.fetchImpl(`${this.base}/healthz`);
      return response.ok;
    } catch {
      return false;
    }
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    contentType?: string,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      const type = contentType ?? "application/json";
      init.headers = { "content-type": type };
      init.body = type === "application/json" ? JSON.stringify(body) : (body as string);
    }
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      throw await readError(response);
    }
    return (await response.json()) as T;
  }
}

async function readError(response: Response): Promise<ApiError> {
  let message = `HTTP ${response.status}`;
  let code = `http-${response.status}`;
  try {
    const data = (await response.json()) as { error?: unknown; code?: unknown };
    if (typeof data.error === "string") {
      message = data.error;
    }
    if (typeof data.code === "string") {
      code = data.code;
    }
  } catch {
    // body was not the service's JSON error shape; keep the fallback
  }
  return new ApiError(response.status, message, code);
}
