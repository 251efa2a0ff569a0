/** Client-side re-plot of the success curve from the constants echoed by the
 * service, so the drawn curve passes through the server's number at the
 * marked point.  All other math stays server-side.
 *
 * plateau mode:     S(x) = f0/2 + (1 - f0/2) / (1 + Q x^-k),  Q = 1/(1 - f0)
 * ratio_only mode:  S(x) = 1 / (1 + x^-k)
 */
import type { EstimateMode, EstimateResponse } from "./types.js";

export function successCurveValue(
  x: number,
  f0Reference: number,
  k: number,
  mode: EstimateMode,
): number {
  if (mode === "ratio_only") {
    if (x === 0) return 0;
    if (x === 1) return 0.5;
    return 1 / (1 + Math.pow(x, -k));
  }
  if (x === 0) return f0Reference / 2;
  if (x === 1) return 0.5;
  const q = 1 / (1 - f0Reference);
  return f0Reference / 2 + (1 - f0Reference / 2) / (1 + q * Math.pow(x, -k));
}

export interface CurvePoint {
  logRatio: number;
  s: number;
}

export interface CurveView {
  points: CurvePoint[];
  marker: CurvePoint;
  /** lower asymptote f0/2 (ties against the reference's uncited articles) */
  plateau: number;
  logMin: number;
  logMax: number;
}

/** Sample the curve for the response's constants over a log-ratio window
 * that always contains the marked pair. */
export function curveView(response: EstimateResponse, nPoints = 241): CurveView {
  const markerLog = Math.log10(response.ratio_x);
  const logMin = Math.min(-2.5, Math.floor(markerLog - 0.5));
  const logMax = Math.max(2.5, Math.ceil(markerLog + 0.5));
  const k = response.constants_used.k;
  const points: CurvePoint[] = [];
  for (let i = 0; i < nPoints; i++) {
    const logRatio = logMin + ((logMax - logMin) * i) / (nPoints - 1);
    points.push({
      logRatio,
      s: successCurveValue(Math.pow(10, logRatio), response.f0_reference, k, response.mode),
    });
  }
  return {
    points,
    marker: { logRatio: markerLog, s: response.s_forward },
    plateau: response.mode === "ratio_only" ? 0 : response.f0_reference / 2,
    logMin,
    logMax,
  };
}
