import { describe, expect, it } from "vitest";

import { parseReputation } from "../src/reputation.js";

describe("parseReputation", () => {
  it("parses comma-grouped scores", () => {
    expect(parseReputation("2,345")).toBe(2345);
    expect(parseReputation("1,234,567")).toBe(1234567);
  });

  it("parses k-suffixed scores", () => {
    expect(parseReputation("1.2k")).toBe(1200);
    expect(parseReputation("12k")).toBe(12000);
    expect(parseReputation("10.1K")).toBe(10100);
  });

  it("parses m-suffixed scores", () => {
    expect(parseReputation("1.1m")).toBe(1_100_000);
  });

  it("parses plain integers and trims whitespace", () => {
    expect(parseReputation("987")).toBe(987);
    expect(parseReputation("  42 ")).toBe(42);
    expect(parseReputation("1")).toBe(1);
  });

  it("rejects garbage", () => {
    expect(parseReputation("")).toBeNull();
    expect(parseReputation("n/a")).toBeNull();
    expect(parseReputation("-50")).toBeNull();
    expect(parseReputation("1.2x")).toBeNull();
  });
});
