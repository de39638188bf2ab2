// "Size for rate" helper: find the smallest square reaching a target rate.
// The search only *queries* the service for rates (the UI never evaluates
// the model); it bisects on the answers.

export interface SizeForResult {
  kind: "ok";
  sideMm: number;
}

export interface SizeForUnattainable {
  kind: "unattainable";
  /** Best rate the service reports for an absurdly large square. */
  ceiling: number;
}

const BRACKET_MM = 1000;
const CEILING_PROBE_MM = 10000;
const TOLERANCE_MM = 1e-4;

export async function sizeForRate(
  rateOfSquare: (sideMm: number) => Promise<number>,
  targetRate: number,
): Promise<SizeForResult | SizeForUnattainable> {
  if (!(targetRate > 0) || targetRate >= 1) {
    return { kind: "unattainable", ceiling: await rateOfSquare(CEILING_PROBE_MM) };
  }
  if ((await rateOfSquare(BRACKET_MM)) < targetRate) {
    return { kind: "unattainable", ceiling: await rateOfSquare(CEILING_PROBE_MM) };
  }
  let lo = 0;
  let hi = BRACKET_MM;
  while (hi - lo > TOLERANCE_MM) {
    const mid = (lo + hi) / 2;
    if ((await rateOfSquare(mid)) >= targetRate) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return { kind: "ok", sideMm: hi };
}

/** Logical px for a physical length on a device; used to position sliders. */
export function mmToPx(
  mm: number,
  device: { ppi: number; scale_factor: number },
): number {
  return (mm / 25.4) * (device.ppi / device.scale_factor);
}
