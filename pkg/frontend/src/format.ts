// Display formatting. Conventions match the CLI: percentages with 2
// decimals, millimetres with 3, logical px trimmed of a trailing ".0".

export function formatPercent(rate: number): string {
  return `${(rate * 100).toFixed(2)}%`;
}

/** Three decimals, for values that would misleadingly round to 100.00%. */
export function formatPercentPrecise(rate: number): string {
  return `${(rate * 100).toFixed(3)}%`;
}

export function formatMm(mm: number): string {
  return `${mm.toFixed(3)} mm`;
}

export function formatPx(px: number): string {
  return Number.isInteger(px) ? String(px) : String(Math.round(px * 100) / 100);
}

export function formatSize(w: number, h: number, unit: "px" | "mm"): string {
  if (unit === "px") return `${formatPx(w)} x ${formatPx(h)} px`;
  return `${w.toFixed(3)} x ${h.toFixed(3)} mm`;
}
