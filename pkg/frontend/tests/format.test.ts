import { describe, expect, it } from "vitest";

import { formatMm, formatPercent, formatPx, formatSize } from "../src/format.js";

describe("formatPercent", () => {
  it("renders two decimals", () => {
    expect(formatPercent(0.996977454564899)).toBe("99.70%");
    expect(formatPercent(0)).toBe("0.00%");
    expect(formatPercent(0.5)).toBe("50.00%");
  });
});

describe("formatMm", () => {
  it("renders three decimals", () => {
    expect(formatMm(19.878260869565217)).toBe("19.878 mm");
    expect(formatMm(0)).toBe("0.000 mm");
  });
});

describe("formatPx", () => {
  it("trims whole numbers", () => {
    expect(formatPx(120)).toBe("120");
    expect(formatPx(54.330708661417326)).toBe("54.33");
  });
});

describe("formatSize", () => {
  it("labels the unit", () => {
    expect(formatSize(120, 44, "px")).toBe("120 x 44 px");
    expect(formatSize(19.878260869565217, 7.288695652173913, "mm")).toBe(
      "19.878 x 7.289 mm",
    );
  });
});
