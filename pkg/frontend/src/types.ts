/** Wire types mirroring the evaluation service payloads. */

export type Mechanism = "pcd" | "rd" | "mix";

export type DragMode = "single" | "dual";

export interface EvaluateResponse {
  arcs: number[];
  facing: number[];
  costs: number[];
  sc: number;
  opt_index: number;
  opt_cost: number;
  gamma: number;
  median_optimal_index: number;
  large_arc_index: number | null;
}

export interface DualDragResponse extends EvaluateResponse {
  preserved_opt: boolean;
  positions: number[];
}

export interface ConstantsResponse {
  alpha: number;
  sc_bound: number;
  hypothesis: Record<string, number>;
}

export interface ErrorBody {
  error: string;
  field?: string;
}
