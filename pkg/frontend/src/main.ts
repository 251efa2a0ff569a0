/** DOM wiring for the calculator page. All state changes flow through the
 * pure transitions in state.ts; this module only renders and schedules
 * requests (debounced 250 ms, one in flight per burst). */
import { ApiError, fetchEstimate } from "./api.js";
import { curveView } from "./curve.js";
import { debounce } from "./debounce.js";
import { formatPercent, formatRatio } from "./format.js";
import {
  applyFailure,
  applyResponse,
  beginRequest,
  canRequest,
  initialState,
  setField,
  swapJournals,
  type CalculatorState,
  type FieldName,
} from "./state.js";

const DEBOUNCE_MS = 250;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

let state: CalculatorState = initialState();

const targetInput = el<HTMLInputElement>("if-target");
const referenceInput = el<HTMLInputElement>("if-reference");
const targetError = el<HTMLSpanElement>("if-target-error");
const referenceError = el<HTMLSpanElement>("if-reference-error");
const swapButton = el<HTMLButtonElement>("swap");
const banner = el<HTMLDivElement>("error-banner");
const results = el<HTMLDivElement>("results");
const forwardOut = el<HTMLSpanElement>("s-forward");
const backwardOut = el<HTMLSpanElement>("s-backward");
const ratioOut = el<HTMLSpanElement>("ratio");
const f0Out = el<HTMLSpanElement>("f0-reference");
const modeNote = el<HTMLSpanElement>("mode-note");
const canvas = el<HTMLCanvasElement>("curve");

function issueRequest(): void {
  if (!canRequest(state)) return;
  const begun = beginRequest(state);
  state = begun.state;
  const seq = begun.seq;
  const ifT = state.target.value as number;
  const ifR = state.reference.value as number;
  fetchEstimate(ifT, ifR)
    .then((response) => {
      state = applyResponse(state, seq, response);
      render();
    })
    .catch((err: unknown) => {
      const message = err instanceof ApiError ? err.message : "request failed";
      state = applyFailure(state, seq, message);
      render();
    });
}

const debouncedRequest = debounce(issueRequest, DEBOUNCE_MS);

function onInput(field: FieldName, input: HTMLInputElement): void {
  state = setField(state, field, input.value);
  render();
  if (canRequest(state)) {
    debouncedRequest();
  } else {
    debouncedRequest.cancel();
  }
}

targetInput.addEventListener("input", () => onInput("target", targetInput));
referenceInput.addEventListener("input", () => onInput("reference", referenceInput));

swapButton.addEventListener("click", () => {
  debouncedRequest.cancel();
  state = swapJournals(state);
  targetInput.value = state.target.text;
  referenceInput.value = state.reference.text;
  render();
  issueRequest();
});

function drawCurve(): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const w = canvas.width;
  const h = canvas.height;
  ctx.clearRect(0, 0, w, h);
  const pad = { left: 44, right: 12, top: 10, bottom: 28 };
  const plotW = w - pad.left - pad.right;
  const plotH = h - pad.top - pad.bottom;

  const response = state.lastResponse;
  if (!response) {
    ctx.fillStyle = "#888";
    ctx.font = "13px sans-serif";
    ctx.fillText("enter two impact factors to draw the curve", pad.left, h / 2);
    return;
  }
  const view = curveView(response);
  const xPix = (logRatio: number) =>
    pad.left + ((logRatio - view.logMin) / (view.logMax - view.logMin)) * plotW;
  const yPix = (s: number) => pad.top + (1 - s) * plotH;

  // frame and gridlines at 0 / 50 / 100%
  ctx.strokeStyle = "#ccc";
  ctx.lineWidth = 1;
  ctx.strokeRect(pad.left, pad.top, plotW, plotH);
  ctx.fillStyle = "#666";
  ctx.font = "11px sans-serif";
  for (const s of [0, 0.5, 1]) {
    ctx.beginPath();
    ctx.moveTo(pad.left, yPix(s));
    ctx.lineTo(pad.left + plotW, yPix(s));
    ctx.stroke();
    ctx.fillText(`${(s * 100).toFixed(0)}%`, 6, yPix(s) + 4);
  }
  for (let logRatio = Math.ceil(view.logMin); logRatio <= view.logMax; logRatio++) {
    ctx.fillText(`10^${logRatio}`, xPix(logRatio) - 10, h - 8);
  }

  // plateau asymptote (dashed guide at half the reference's uncited fraction)
  ctx.strokeStyle = "#c0392b";
  ctx.setLineDash([5, 4]);
  ctx.beginPath();
  ctx.moveTo(pad.left, yPix(view.plateau));
  ctx.lineTo(pad.left + plotW, yPix(view.plateau));
  ctx.stroke();
  ctx.setLineDash([]);

  // the curve itself
  ctx.strokeStyle = "#2c6fb3";
  ctx.lineWidth = 2;
  ctx.beginPath();
  view.points.forEach((p, i) => {
    if (i === 0) ctx.moveTo(xPix(p.logRatio), yPix(p.s));
    else ctx.lineTo(xPix(p.logRatio), yPix(p.s));
  });
  ctx.stroke();

  // current pair
  ctx.fillStyle = "#e67e22";
  ctx.beginPath();
  ctx.arc(xPix(view.marker.logRatio), yPix(view.marker.s), 5, 0, 2 * Math.PI);
  ctx.fill();
}

function render(): void {
  targetError.textContent = state.target.error ?? "";
  referenceError.textContent = state.reference.error ?? "";
  banner.textContent = state.errorMessage ?? "";
  banner.hidden = state.errorMessage === null;

  const response = state.lastResponse;
  results.hidden = response === null;
  if (response) {
    forwardOut.textContent = formatPercent(response.s_forward);
    backwardOut.textContent = formatPercent(response.s_backward);
    ratioOut.textContent = formatRatio(response.ratio_x);
    f0Out.textContent = formatPercent(response.f0_reference);
    modeNote.textContent =
      response.mode === "ratio_only"
        ? "reference is rarely uncited: estimate depends on the IF ratio only"
        : "";
  }
  drawCurve();
}

render();
