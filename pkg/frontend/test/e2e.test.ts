/** End to end against the real service: spawn the Python backend, drive the
 * calculator state machine through actual HTTP, and check the headline flow:
 * 35.5 vs 4.46 reads ~93%, the swap shows ~7%, and the curve marker lands on
 * the printed number. */
import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { fetchEstimate, fetchHealth } from "../src/api.js";
import { curveView, successCurveValue } from "../src/curve.js";
import { formatPercent } from "../src/format.js";
import {
  applyResponse,
  beginRequest,
  canRequest,
  initialState,
  setField,
  swapJournals,
  type CalculatorState,
} from "../src/state.js";

const PORT = 8700 + (process.pid % 900);
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 120; attempt++) {
    try {
      const health = await fetchHealth(BASE);
      if (health.status === "ok") return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service did not come up on ${BASE}`);
}

beforeAll(async () => {
  service = spawn("python3", ["-m", "citesuccess.service"], {
    env: { ...process.env, CS_PORT: String(PORT) },
    stdio: "ignore",
  });
  await waitForService();
}, 40_000);

afterAll(() => {
  service?.kill();
});

/** The request/response cycle main.ts performs, without the debounce timer. */
async function requestCycle(state: CalculatorState): Promise<CalculatorState> {
  expect(canRequest(state)).toBe(true);
  const begun = beginRequest(state);
  const response = await fetchEstimate(
    begun.state.target.value as number,
    begun.state.reference.value as number,
    BASE,
  );
  return applyResponse(begun.state, begun.seq, response);
}

describe("calculator against the live service", () => {
  it("shows ~93% for 35.5 over 4.46, ~7% after swapping, marker on the readout", async () => {
    let state = setField(initialState(), "target", "35.5");
    state = setField(state, "reference", "4.46");
    state = await requestCycle(state);

    const first = state.lastResponse!;
    expect(first.s_forward * 100).toBeGreaterThan(90);
    expect(first.s_forward * 100).toBeLessThan(95);
    expect(formatPercent(first.s_forward)).toMatch(/^9[23]\./);

    // the marked point coincides with the numeric readout within one display unit
    const view = curveView(first);
    const curveAtMarker = successCurveValue(
      first.ratio_x, first.f0_reference, first.constants_used.k, first.mode,
    );
    expect(Math.abs(curveAtMarker - view.marker.s) * 100).toBeLessThan(0.1);

    state = swapJournals(state);
    expect(state.lastResponse).toBeNull(); // stale result cleared by the swap
    state = await requestCycle(state);
    const swapped = state.lastResponse!;
    expect(swapped.s_forward * 100).toBeGreaterThan(5);
    expect(swapped.s_forward * 100).toBeLessThan(9);

    // the displayed forward value after the swap is the same server number
    // that was reported as backward before it
    expect(swapped.s_forward).toBe(first.s_backward);
    expect(formatPercent(swapped.s_forward)).toBe(formatPercent(first.s_backward));
  });

  it("equal impact factors read 50.0% both ways", async () => {
    let state = setField(initialState(), "target", "7.0");
    state = setField(state, "reference", "7.0");
    state = await requestCycle(state);
    expect(formatPercent(state.lastResponse!.s_forward)).toBe("50.0%");
    expect(formatPercent(state.lastResponse!.s_backward)).toBe("50.0%");
  });

  it("low-IF references raise the plateau guide", async () => {
    const low = await fetchEstimate(0.5, 1.7, BASE); // PRSA-like reference
    const high = await fetchEstimate(0.5, 28.9, BASE);
    expect(curveView(low).plateau).toBeGreaterThan(0.1);
    expect(curveView(high).plateau).toBeLessThan(0.01);
  });
});
