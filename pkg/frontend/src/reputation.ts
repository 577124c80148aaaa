/** Parse a displayed reputation score like "2,345", "1.2k" or "987". */

const SUFFIX_FACTORS: Record<string, number> = {
  k: 1_000,
  m: 1_000_000,
};

export function parseReputation(display: string): number | null {
  const cleaned = display.trim().toLowerCase().replace(/,/g, "");
  if (cleaned === "") {
    return null;
  }
  const match = /^(\d+(?:\.\d+)?)([km]?)$/.exec(cleaned);
  if (!match) {
    return null;
  }
  const value = parseFloat(match[1]);
  const factor = match[2] ? SUFFIX_FACTORS[match[2]] : 1;
  const result = Math.round(value * factor);
  return Number.isSafeInteger(result) && result >= 0 ? result : null;
}
