/** Session state. Positions always mirror the last server-confirmed
 * instance in canonical clockwise order, and every numeric field is the
 * parsed service value without client-side arithmetic. */

import type {
  DragMode,
  DualDragResponse,
  EvaluateResponse,
  Mechanism,
} from "./types.js";

export const HISTORY_LIMIT = 240;

export interface UiState {
  positions: number[];
  mechanism: Mechanism;
  lambda: number;
  dragMode: DragMode;
  /** partner agent (0-based) for dual drag, if armed */
  partner: number | null;
  last: EvaluateResponse | null;
  /** worst ratio seen this session; monotone non-decreasing */
  worstGamma: number | null;
  gammaHistory: number[];
  /** outcome of the most recent dual drag, cleared by other updates */
  preservedOpt: boolean | null;
  error: string | null;
  alpha: number | null;
}

export function initialState(): UiState {
  return {
    positions: [],
    mechanism: "pcd",
    lambda: 1,
    dragMode: "single",
    partner: null,
    last: null,
    worstGamma: null,
    gammaHistory: [],
    preservedOpt: null,
    error: null,
    alpha: null,
  };
}

function sortedCanonical(positions: number[]): number[] {
  return [...positions].sort((a, b) => a - b);
}

function pushHistory(history: number[], gamma: number): number[] {
  const next = [...history, gamma];
  return next.length > HISTORY_LIMIT ? next.slice(next.length - HISTORY_LIMIT) : next;
}

function maxGamma(current: number | null, gamma: number): number {
  return current === null || gamma > current ? gamma : current;
}

/** A confirmed /evaluate round trip: adopt the instance we sent (in
 * canonical order) together with the server's numbers. */
export function applyEvaluate(
  state: UiState,
  sentPositions: number[],
  response: EvaluateResponse,
): UiState {
  return {
    ...state,
    positions: sortedCanonical(sentPositions),
    last: response,
    worstGamma: maxGamma(state.worstGamma, response.gamma),
    gammaHistory: pushHistory(state.gammaHistory, response.gamma),
    preservedOpt: null,
    error: null,
  };
}

/** A confirmed /dual-drag round trip: the server reports the moved
 * positions itself. */
export function applyDualDrag(state: UiState, response: DualDragResponse): UiState {
  return {
    ...state,
    positions: sortedCanonical(response.positions),
    last: response,
    worstGamma: maxGamma(state.worstGamma, response.gamma),
    gammaHistory: pushHistory(state.gammaHistory, response.gamma),
    preservedOpt: response.preserved_opt,
    error: null,
  };
}

/** Failed round trip: nothing moves, only the banner changes. */
export function applyError(state: UiState, message: string): UiState {
  return { ...state, error: message };
}

export function setMechanism(state: UiState, mechanism: Mechanism): UiState {
  return { ...state, mechanism };
}

export function setLambda(state: UiState, lambda: number): UiState {
  return { ...state, lambda };
}

export function setDragMode(state: UiState, dragMode: DragMode): UiState {
  return { ...state, dragMode, partner: null, preservedOpt: null };
}

export function setPartner(state: UiState, partner: number | null): UiState {
  return { ...state, partner };
}

export function setAlpha(state: UiState, alpha: number): UiState {
  return { ...state, alpha };
}
