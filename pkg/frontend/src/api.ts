/** Typed client for the graphnim session service.
 *
 * The service is the only backend: six endpoints, JSON both ways.  Non-2xx
 * responses become ApiError with the server's reason string; network-level
 * failures propagate as whatever fetch threw.
 */

export interface EdgeDoc {
  u: string;
  v: string;
  w: number;
}

export interface StateDoc {
  vertices: string[];
  edges: EdgeDoc[];
  position: string;
  moveCount: number;
  toMove: "P1" | "P2";
  terminal: boolean;
  levels?: Record<string, number>;
}

export interface MoveDoc {
  to: string;
  amount: number;
  fallback?: boolean;
}

export interface SessionBody {
  id: string;
  state: StateDoc;
  toMove: "P1" | "P2";
  mode: string;
  history: MoveDoc[];
  humanMove?: MoveDoc | null;
  engineMove?: MoveDoc | null;
}

export interface SolveBody {
  aborted: boolean;
  outcome?: "MoverWins" | "MoverLoses";
  bestMove?: MoveDoc | null;
  nodesExpanded: number;
  abortReason?: string;
}

export interface GraphDoc {
  name: string;
  vertices: string[];
  edges: { u: number; v: number; w: number }[];
  start: number;
}

export interface NewSessionRequest {
  graph?: GraphDoc;
  mode?: string;
  engine?: string;
  humanFirst?: boolean;
  seed?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    readonly base: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    const data: any = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      const detail = typeof data?.detail === "string" ? data.detail : resp.statusText;
      throw new ApiError(resp.status, detail);
    }
    return data as T;
  }

  newSession(req: NewSessionRequest): Promise<SessionBody> {
    return this.request("POST", "/new", req);
  }

  state(id: string): Promise<SessionBody> {
    return this.request("GET", `/state/${id}`);
  }

  move(id: string, to: string, amount: number): Promise<SessionBody> {
    return this.request("POST", `/move/${id}`, { to, amount });
  }

  engineMove(id: string): Promise<SessionBody> {
    return this.request("POST", `/engine-move/${id}`);
  }

  solve(id: string): Promise<SolveBody> {
    return this.request("GET", `/solve/${id}`);
  }

  deleteSession(id: string): Promise<{ deleted: boolean }> {
    return this.request("DELETE", `/session/${id}`);
  }
}
