import { describe, expect, it } from "vitest";

import {
  applyFailure,
  applyResponse,
  beginRequest,
  canRequest,
  initialState,
  setField,
  swapJournals,
} from "../src/state.js";
import type { EstimateResponse } from "../src/types.js";

function response(sForward: number): EstimateResponse {
  return {
    s_forward: sForward,
    s_backward: 1 - sForward,
    ratio_x: 2,
    f0_reference: 0.1,
    f0_target: 0.05,
    mode: "plateau",
    mode_backward: "plateau",
    constants_used: { alpha: 0.94, beta: 2.37, q: 0.33, k: 1.23 },
  };
}

describe("field validation", () => {
  it("accepts positive reals", () => {
    const s = setField(initialState(), "target", "35.5");
    expect(s.target.value).toBe(35.5);
    expect(s.target.error).toBeNull();
  });

  it("rejects non-numeric text with a message and blocks requests", () => {
    let s = setField(initialState(), "target", "abc");
    s = setField(s, "reference", "4.46");
    expect(s.target.value).toBeNull();
    expect(s.target.error).toBe("enter a number");
    expect(canRequest(s)).toBe(false);
  });

  it("rejects zero and negatives", () => {
    expect(setField(initialState(), "target", "0").target.error).toBe("must be positive");
    expect(setField(initialState(), "target", "-3").target.error).toBe("must be positive");
  });

  it("treats empty text as incomplete, not an error", () => {
    const s = setField(initialState(), "target", "");
    expect(s.target.error).toBeNull();
    expect(canRequest(s)).toBe(false);
  });
});

describe("result lifecycle", () => {
  it("shows a result only after the matching response arrives", () => {
    let s = setField(initialState(), "target", "7");
    s = setField(s, "reference", "7");
    expect(canRequest(s)).toBe(true);
    const begun = beginRequest(s);
    s = applyResponse(begun.state, begun.seq, response(0.5));
    expect(s.lastResponse?.s_forward).toBe(0.5);
    expect(s.pending).toBe(false);
  });

  it("clears a stale result as soon as an input is edited", () => {
    let s = setField(setField(initialState(), "target", "7"), "reference", "7");
    const begun = beginRequest(s);
    s = applyResponse(begun.state, begun.seq, response(0.5));
    s = setField(s, "target", "8");
    expect(s.lastResponse).toBeNull();
  });

  it("discards responses that arrive out of order", () => {
    let s = setField(setField(initialState(), "target", "7"), "reference", "7");
    const first = beginRequest(s);
    const second = beginRequest(first.state);
    s = applyResponse(second.state, second.seq, response(0.9));
    s = applyResponse(s, first.seq, response(0.1)); // late reply from the older request
    expect(s.lastResponse?.s_forward).toBe(0.9);
  });

  it("a failure clears the previous result and sets the banner", () => {
    let s = setField(setField(initialState(), "target", "7"), "reference", "7");
    let begun = beginRequest(s);
    s = applyResponse(begun.state, begun.seq, response(0.5));
    begun = beginRequest(s);
    s = applyFailure(begun.state, begun.seq, "could not reach the calculator service");
    expect(s.lastResponse).toBeNull();
    expect(s.errorMessage).toMatch(/could not reach/);
  });

  it("ignores failures from superseded requests", () => {
    let s = setField(setField(initialState(), "target", "7"), "reference", "7");
    const first = beginRequest(s);
    const second = beginRequest(first.state);
    s = applyResponse(second.state, second.seq, response(0.7));
    s = applyFailure(s, first.seq, "boom");
    expect(s.errorMessage).toBeNull();
    expect(s.lastResponse?.s_forward).toBe(0.7);
  });
});

describe("swap", () => {
  it("exchanges the two inputs and clears the shown result", () => {
    let s = setField(setField(initialState(), "target", "35.5"), "reference", "4.46");
    const begun = beginRequest(s);
    s = applyResponse(begun.state, begun.seq, response(0.93));
    s = swapJournals(s);
    expect(s.target.text).toBe("4.46");
    expect(s.reference.text).toBe("35.5");
    expect(s.lastResponse).toBeNull();
  });

  it("swapping twice restores the original inputs", () => {
    const s0 = setField(setField(initialState(), "target", "9"), "reference", "2.5");
    const s2 = swapJournals(swapJournals(s0));
    expect(s2.target).toEqual(s0.target);
    expect(s2.reference).toEqual(s0.reference);
  });

  it("equal inputs are unchanged by swap", () => {
    const s = setField(setField(initialState(), "target", "7.0"), "reference", "7.0");
    const swapped = swapJournals(s);
    expect(swapped.target.text).toBe("7.0");
    expect(swapped.reference.text).toBe("7.0");
  });
});
