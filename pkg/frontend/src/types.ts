/** Wire types of the estimate service. */

export interface ConstantsUsed {
  alpha: number;
  beta: number;
  q: number;
  k: number;
}

export type EstimateMode = "plateau" | "ratio_only";

export interface EstimateResponse {
  s_forward: number;
  s_backward: number;
  ratio_x: number;
  f0_reference: number;
  f0_target: number;
  mode: EstimateMode;
  mode_backward: EstimateMode;
  constants_used: ConstantsUsed;
}

export interface HealthResponse {
  status: string;
  version: string;
  constants: ConstantsUsed;
}
