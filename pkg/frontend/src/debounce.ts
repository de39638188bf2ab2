// Trailing-edge debounce for what-if slider fetches (live feedback without
// a request per pixel of drag).

export const WHATIF_DEBOUNCE_MS = 150;

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number = WHATIF_DEBOUNCE_MS,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, waitMs);
  };
}
