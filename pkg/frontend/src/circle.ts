/** Circle geometry for the SVG scene: position fractions to screen
 * points, pointer hit mapping, and drag clamping that preserves the
 * cyclic agent order. */

export interface Point {
  x: number;
  y: number;
}

const TAU = Math.PI * 2;

/** Gap kept between a dragged agent and its neighbor; visually "at"
 * the neighbor but numerically distinct. */
export const DRAG_GAP = 1e-6;

function mod1(x: number): number {
  const r = x % 1;
  return r < 0 ? r + 1 : r;
}

/** Fraction 0 sits at twelve o'clock; fractions grow clockwise. */
export function positionToPoint(
  position: number,
  cx: number,
  cy: number,
  r: number,
): Point {
  const angle = position * TAU - Math.PI / 2;
  return { x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) };
}

export function pointToPosition(x: number, y: number, cx: number, cy: number): number {
  const angle = Math.atan2(y - cy, x - cx) + Math.PI / 2;
  return mod1(angle / TAU);
}

/** Clockwise distance from a to b. */
export function cwDistance(a: number, b: number): number {
  return mod1(b - a);
}

function shortestDistance(a: number, b: number): number {
  return Math.min(cwDistance(a, b), cwDistance(b, a));
}

/** Neighbors of agent `index` in cyclic (position, index) order. */
export function neighborPositions(
  positions: number[],
  index: number,
): { prev: number; next: number } {
  const order = positions
    .map((_, i) => i)
    .sort((a, b) => (positions[a]! - positions[b]!) || (a - b));
  const rank = order.indexOf(index);
  const n = positions.length;
  const prev = positions[order[(rank + n - 1) % n]!]!;
  const next = positions[order[(rank + 1) % n]!]!;
  return { prev, next };
}

/** Clamp a drag candidate so the agent stays strictly between its
 * cyclic neighbors: blocked at the neighbor, never past or onto it. */
export function clampDrag(
  positions: number[],
  index: number,
  candidate: number,
): number {
  const n = positions.length;
  if (n <= 1) {
    return mod1(candidate);
  }
  const { prev, next } = neighborPositions(positions, index);
  const span = cwDistance(prev, next);
  if (span <= 2 * DRAG_GAP) {
    // neighbors (co)incident around the agent: locked in place
    return positions[index]!;
  }
  const offset = cwDistance(prev, mod1(candidate));
  if (offset >= DRAG_GAP && offset <= span - DRAG_GAP) {
    return mod1(candidate);
  }
  const low = mod1(prev + DRAG_GAP);
  const high = mod1(prev + span - DRAG_GAP);
  const c = mod1(candidate);
  return shortestDistance(c, low) <= shortestDistance(c, high) ? low : high;
}

/** Index of the agent nearest to a circle fraction, for pointer picks. */
export function nearestAgent(positions: number[], target: number): number {
  let best = 0;
  let bestDist = Number.POSITIVE_INFINITY;
  positions.forEach((p, i) => {
    const d = shortestDistance(p, target);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  });
  return best;
}
