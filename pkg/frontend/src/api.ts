import type { EstimateResponse, HealthResponse } from "./types.js";

/** Error carrying the machine-readable code returned by the service. */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, code: string, detail: string) {
    super(detail);
    this.code = code;
    this.status = status;
  }
}

async function getJSON<T>(url: string): Promise<T> {
  let res: Response;
  try {
    res = await fetch(url);
  } catch {
    throw new ApiError(0, "network_error", "could not reach the calculator service");
  }
  if (!res.ok) {
    let code = "http_error";
    let detail = `request failed with status ${res.status}`;
    try {
      const body = (await res.json()) as { error?: string; detail?: string };
      if (body.error) code = body.error;
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body; keep the generic message
    }
    throw new ApiError(res.status, code, detail);
  }
  return (await res.json()) as T;
}

export function fetchEstimate(
  ifTarget: number,
  ifReference: number,
  baseUrl = "",
): Promise<EstimateResponse> {
  const params = new URLSearchParams({
    if_t: String(ifTarget),
    if_r: String(ifReference),
  });
  return getJSON<EstimateResponse>(`${baseUrl}/v1/estimate?${params}`);
}

export function fetchHealth(baseUrl = ""): Promise<HealthResponse> {
  return getJSON<HealthResponse>(`${baseUrl}/v1/health`);
}
