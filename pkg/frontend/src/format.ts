/** Readout formatting. Display text truncates; the underlying state
 * keeps the parsed server value bit for bit (full precision lives in
 * title attributes). */

/** Decimal truncation, never rounding: 1.34314575... at 7 places reads
 * "1.3431457". Falls back over scientific notation for tiny values. */
export function truncateDecimals(value: number, places: number): string {
  if (!Number.isFinite(value)) {
    return String(value);
  }
  const sign = value < 0 ? "-" : "";
  let text = String(Math.abs(value));
  if (text.includes("e") || text.includes("E")) {
    // shortest repr went scientific; 20 fractional digits is the
    // toFixed ceiling and enough for any readout we truncate
    text = Math.abs(value).toFixed(20);
  }
  const dot = text.indexOf(".");
  const whole = dot === -1 ? text : text.slice(0, dot);
  const frac = dot === -1 ? "" : text.slice(dot + 1);
  return `${sign}${whole}.${frac.slice(0, places).padEnd(places, "0")}`;
}

export function formatGamma(gamma: number): string {
  return truncateDecimals(gamma, 7);
}

export function formatShort(value: number): string {
  return truncateDecimals(value, 4);
}
