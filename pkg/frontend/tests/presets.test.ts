import { describe, expect, it } from "vitest";

import {
  PRESETS,
  S_WORST,
  clustering,
  equidistant,
  twoPair,
  worstN5,
} from "../src/presets.js";

describe("preset builders", () => {
  it("equidistant spreads n agents evenly", () => {
    expect(equidistant(5)).toEqual([0, 0.2, 0.4, 0.6, 0.8]);
    expect(equidistant(3)).toEqual([0, 1 / 3, 2 / 3]);
  });

  it("worst n=5 is the tight two-pair instance", () => {
    const s = (2 - Math.SQRT2) / 2;
    expect(S_WORST).toBe(s);
    expect(worstN5()).toEqual([0, 0, s, s + 0.5, s + 0.5]);
  });

  it("two-pair places pair, lone agent, pair", () => {
    expect(twoPair(0.2, 0.3)).toEqual([0, 0, 0.2, 0.5, 0.5]);
  });

  it("two-pair wraps past the full circle", () => {
    const built = twoPair(0.4, 0.7);
    expect(built[3]).toBeCloseTo(0.1, 12);
    expect(built[4]).toBeCloseTo(0.1, 12);
  });

  it("clustering builds k + k + antipodal lone agent", () => {
    expect(clustering(2, 0.2)).toEqual([0, 0, 0.2, 0.2, 0.7]);
    expect(clustering(1, 0.3)).toEqual([0, 0.3, 0.8]);
  });

  it("the preset registry covers the contract families", () => {
    expect(PRESETS.map((p) => p.id)).toEqual([
      "equidistant",
      "worst-n5",
      "two-pair",
      "clustering",
    ]);
  });

  it("preset sizes respect the n selector", () => {
    const byId = Object.fromEntries(PRESETS.map((p) => [p.id, p]));
    expect(byId["equidistant"]!.size(7)).toBe(7);
    expect(byId["worst-n5"]!.size(7)).toBe(5);
    expect(byId["clustering"]!.build(7, { ct: 0.2 })).toHaveLength(7);
  });
});
