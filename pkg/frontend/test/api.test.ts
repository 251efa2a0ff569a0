import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, fetchEstimate, fetchHealth } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("fetchEstimate", () => {
  it("builds the query and returns the parsed body", async () => {
    const payload = { s_forward: 0.93, s_backward: 0.07 };
    const mock = vi.fn().mockResolvedValue(jsonResponse(payload));
    vi.stubGlobal("fetch", mock);
    const body = await fetchEstimate(35.5, 4.46);
    expect(mock).toHaveBeenCalledWith("/v1/estimate?if_t=35.5&if_r=4.46");
    expect(body.s_forward).toBe(0.93);
  });

  it("maps service errors to ApiError with the machine-readable code", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        jsonResponse({ error: "invalid_parameter", detail: "must be positive" }, 400),
      ),
    );
    const err = await fetchEstimate(-1, 2).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe("invalid_parameter");
    expect((err as ApiError).status).toBe(400);
  });

  it("maps unreachable hosts to a network_error", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("fetch failed")));
    const err = await fetchEstimate(1, 2).catch((e: unknown) => e);
    expect((err as ApiError).code).toBe("network_error");
  });

  it("survives non-JSON error bodies", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(new Response("<html>teapot</html>", { status: 418 })),
    );
    const err = await fetchEstimate(1, 2).catch((e: unknown) => e);
    expect((err as ApiError).code).toBe("http_error");
    expect((err as ApiError).status).toBe(418);
  });
});

describe("fetchHealth", () => {
  it("hits the health endpoint with the base URL prefix", async () => {
    const mock = vi.fn().mockResolvedValue(jsonResponse({ status: "ok" }));
    vi.stubGlobal("fetch", mock);
    await fetchHealth("http://127.0.0.1:9");
    expect(mock).toHaveBeenCalledWith("http://127.0.0.1:9/v1/health");
  });
});
