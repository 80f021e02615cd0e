/** Thin fetch client for the evaluation service.
 *
 * Numbers pass through JSON.parse untouched; nothing here recomputes or
 * rounds a value the server produced.
 */

import type {
  ConstantsResponse,
  DualDragResponse,
  ErrorBody,
  EvaluateResponse,
  Mechanism,
} from "./types.js";

export class ApiError extends Error {
  /** HTTP status, or 0 when the service was unreachable. */
  readonly status: number;
  readonly field?: string;

  constructor(status: number, message: string, field?: string) {
    super(message);
    this.status = status;
    this.field = field;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch {
    throw new ApiError(0, "service unreachable");
  }
  if (!response.ok) {
    let message = `request failed with status ${response.status}`;
    let field: string | undefined;
    try {
      const body = (await response.json()) as ErrorBody;
      if (body && typeof body.error === "string") {
        message = body.error;
        field = body.field;
      }
    } catch {
      // keep the generic message when the body is not JSON
    }
    throw new ApiError(response.status, message, field);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  evaluate(
    positions: number[],
    mechanism: Mechanism,
    lambda: number,
  ): Promise<EvaluateResponse> {
    return request<EvaluateResponse>(`${this.base}/evaluate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ positions, mechanism, lambda }),
    });
  }

  dualDrag(
    positions: number[],
    agents: [number, number],
    displacement: number,
  ): Promise<DualDragResponse> {
    return request<DualDragResponse>(`${this.base}/dual-drag`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ positions, agents, displacement }),
    });
  }

  constants(): Promise<ConstantsResponse> {
    return request<ConstantsResponse>(`${this.base}/constants`);
  }
}
