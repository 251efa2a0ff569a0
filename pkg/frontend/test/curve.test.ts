import { describe, expect, it } from "vitest";

import { curveView, successCurveValue } from "../src/curve.js";
import { formatPercent } from "../src/format.js";
import type { EstimateResponse } from "../src/types.js";

const CONSTANTS = { alpha: 0.94, beta: 2.37, q: 0.33, k: 1.23 };

function response(overrides: Partial<EstimateResponse> = {}): EstimateResponse {
  return {
    s_forward: 0.5,
    s_backward: 0.5,
    ratio_x: 1,
    f0_reference: 0.133,
    f0_target: 0.133,
    mode: "plateau",
    mode_backward: "plateau",
    constants_used: CONSTANTS,
    ...overrides,
  };
}

describe("successCurveValue", () => {
  it("is exactly one half at ratio 1 in both modes", () => {
    expect(successCurveValue(1, 0.2, 1.23, "plateau")).toBe(0.5);
    expect(successCurveValue(1, 0, 1.23, "ratio_only")).toBe(0.5);
  });

  it("approaches 100% at large ratios", () => {
    expect(successCurveValue(1e6, 0.2, 1.23, "plateau")).toBeGreaterThan(0.999);
    expect(successCurveValue(1e6, 0, 1.23, "ratio_only")).toBeGreaterThan(0.999);
  });

  it("falls to the plateau f0/2 as the ratio goes to zero", () => {
    expect(successCurveValue(0, 0.36, 1.23, "plateau")).toBeCloseTo(0.18, 12);
    expect(successCurveValue(1e-9, 0.36, 1.23, "plateau")).toBeCloseTo(0.18, 4);
    expect(successCurveValue(0, 0.36, 1.23, "ratio_only")).toBe(0);
  });

  it("a low-IF reference (larger f0) raises the plateau", () => {
    const low = successCurveValue(1e-6, 0.36, 1.23, "plateau");
    const high = successCurveValue(1e-6, 0.01, 1.23, "plateau");
    expect(low).toBeGreaterThan(high);
  });

  it("is monotone in the ratio", () => {
    let prev = -1;
    for (let logRatio = -3; logRatio <= 3; logRatio += 0.1) {
      const s = successCurveValue(Math.pow(10, logRatio), 0.2, 1.23, "plateau");
      expect(s).toBeGreaterThan(prev);
      prev = s;
    }
  });
});

describe("curveView", () => {
  it("marks ratio 1 at 50%", () => {
    const view = curveView(response());
    expect(view.marker.logRatio).toBe(0);
    expect(view.marker.s).toBe(0.5);
  });

  it("marker coincides with the numeric readout within one display unit", () => {
    // the served value and the re-plotted curve must agree to < 0.1 percentage
    // points at the marked ratio, so the dot sits on the printed number
    const served = response({ ratio_x: 7.959641255605381, s_forward: 0.9229969093511154 });
    const view = curveView(served);
    const curveAtMarker = successCurveValue(
      served.ratio_x, served.f0_reference, served.constants_used.k, served.mode,
    );
    expect(Math.abs(curveAtMarker - view.marker.s) * 100).toBeLessThan(0.1);
    expect(formatPercent(curveAtMarker)).toBe(formatPercent(view.marker.s));
  });

  it("window always contains the marker", () => {
    const view = curveView(response({ ratio_x: 5000, s_forward: 0.999 }));
    expect(view.logMin).toBeLessThan(view.marker.logRatio);
    expect(view.logMax).toBeGreaterThan(view.marker.logRatio);
  });

  it("plateau guide sits at half the reference uncited share", () => {
    expect(curveView(response({ f0_reference: 0.36 })).plateau).toBeCloseTo(0.18, 12);
    expect(curveView(response({ mode: "ratio_only" })).plateau).toBe(0);
  });
});

describe("formatPercent", () => {
  it("renders one decimal, matching the published table precision", () => {
    expect(formatPercent(0.9229969)).toBe("92.3%");
    expect(formatPercent(0.5)).toBe("50.0%");
    expect(formatPercent(0.072326)).toBe("7.2%");
  });
});
