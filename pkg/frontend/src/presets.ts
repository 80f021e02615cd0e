/** Preset instance builders. These construct input positions only;
 * every displayed number still comes from the service. */

export const S_WORST = (2 - Math.SQRT2) / 2;

function mod1(x: number): number {
  const r = x % 1;
  return r < 0 ? r + 1 : r;
}

export function equidistant(n: number): number[] {
  return Array.from({ length: n }, (_, i) => i / n);
}

/** Two coincident pairs half a circle apart with the lone agent at
 * distance S_WORST from one of them; the tight five-agent instance. */
export function worstN5(): number[] {
  return twoPair(S_WORST, 0.5);
}

/** Pair at 0, lone agent at s, second pair at s+t (clockwise). */
export function twoPair(s: number, t: number): number[] {
  return [0, 0, mod1(s), mod1(s + t), mod1(s + t)];
}

/** k agents at 0, k agents at t, lone agent antipodal to the second
 * cluster. n = 2k+1. */
export function clustering(k: number, t: number): number[] {
  const positions: number[] = [];
  for (let i = 0; i < k; i++) positions.push(0);
  for (let i = 0; i < k; i++) positions.push(mod1(t));
  positions.push(mod1(t + 0.5));
  return positions;
}

export interface PresetControl {
  id: string;
  label: string;
  min: number;
  max: number;
  step: number;
  value: number;
}

export interface Preset {
  id: string;
  label: string;
  /** n this preset produces given the current selector value */
  size(n: number): number;
  build(n: number, params: Record<string, number>): number[];
  controls: PresetControl[];
}

export const PRESETS: Preset[] = [
  {
    id: "equidistant",
    label: "equidistant",
    size: (n) => n,
    build: (n) => equidistant(n),
    controls: [],
  },
  {
    id: "worst-n5",
    label: "worst n=5",
    size: () => 5,
    build: () => worstN5(),
    controls: [],
  },
  {
    id: "two-pair",
    label: "two-pair (s, t)",
    size: () => 5,
    build: (_n, params) => twoPair(params["s"] ?? S_WORST, params["t"] ?? 0.5),
    controls: [
      { id: "s", label: "s", min: 0.01, max: 0.49, step: 0.005, value: S_WORST },
      { id: "t", label: "t", min: 0.01, max: 0.5, step: 0.005, value: 0.5 },
    ],
  },
  {
    id: "clustering",
    label: "clustering (k, t)",
    size: (n) => n,
    build: (n, params) => clustering((n - 1) / 2, params["ct"] ?? 0.2),
    controls: [
      { id: "ct", label: "t", min: 0.02, max: 0.48, step: 0.005, value: 0.2 },
    ],
  },
];
