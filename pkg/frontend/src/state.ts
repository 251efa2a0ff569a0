/** Calculator state machine, kept pure so every transition is testable.
 *
 * Invariants maintained here:
 * - a result is shown only while both inputs parse and the latest request
 *   succeeded; any edit clears the previous (now stale) result;
 * - no request is issued while either field fails local validation;
 * - responses arriving out of order are discarded by sequence number.
 */
import { parsePositiveReal } from "./format.js";
import type { EstimateResponse } from "./types.js";

export interface FieldState {
  text: string;
  value: number | null;
  error: string | null;
}

export type FieldName = "target" | "reference";

export interface CalculatorState {
  target: FieldState;
  reference: FieldState;
  lastResponse: EstimateResponse | null;
  errorMessage: string | null;
  /** sequence number of the most recently issued request */
  requestSeq: number;
  /** true while a request newer than lastResponse is outstanding */
  pending: boolean;
}

export function initialState(): CalculatorState {
  const empty: FieldState = { text: "", value: null, error: null };
  return {
    target: { ...empty },
    reference: { ...empty },
    lastResponse: null,
    errorMessage: null,
    requestSeq: 0,
    pending: false,
  };
}

function parseField(text: string): FieldState {
  const { value, error } = parsePositiveReal(text);
  return { text, value, error };
}

/** Edit one input: reparse it and drop any stale result or error banner. */
export function setField(
  state: CalculatorState,
  field: FieldName,
  text: string,
): CalculatorState {
  return {
    ...state,
    [field]: parseField(text),
    lastResponse: null,
    errorMessage: null,
  };
}

/** Both fields locally valid: a request may be issued. */
export function canRequest(state: CalculatorState): boolean {
  return state.target.value !== null && state.reference.value !== null;
}

/** Allocate the next request sequence number. */
export function beginRequest(state: CalculatorState): { state: CalculatorState; seq: number } {
  const seq = state.requestSeq + 1;
  return { state: { ...state, requestSeq: seq, pending: true }, seq };
}

/** Apply a success response unless a newer request has been issued since. */
export function applyResponse(
  state: CalculatorState,
  seq: number,
  response: EstimateResponse,
): CalculatorState {
  if (seq !== state.requestSeq) {
    return state; // out-of-order response: discard
  }
  return { ...state, lastResponse: response, errorMessage: null, pending: false };
}

/** Apply a request failure unless a newer request has been issued since. */
export function applyFailure(
  state: CalculatorState,
  seq: number,
  message: string,
): CalculatorState {
  if (seq !== state.requestSeq) {
    return state;
  }
  return { ...state, lastResponse: null, errorMessage: message, pending: false };
}

/** Exchange the two journals; the caller re-queries. */
export function swapJournals(state: CalculatorState): CalculatorState {
  return {
    ...state,
    target: state.reference,
    reference: state.target,
    lastResponse: null,
    errorMessage: null,
  };
}
