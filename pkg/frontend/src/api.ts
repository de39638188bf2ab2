// Thin client for the tappy service. The inspector never computes a rate
// itself; every displayed number originates from one of these calls.

import type {
  AnalyzeResponse,
  ApiErrorBody,
  DeviceProfile,
  LayoutDocument,
  PredictResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.error;
  }
}

/** Network-level failure (service down), as opposed to a 4xx/5xx reply. */
export class ServiceUnreachableError extends Error {}

type FetchLike = typeof fetch;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl: FetchLike = fetch) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ServiceUnreachableError(`service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      const errorBody = (await response.json()) as ApiErrorBody;
      throw new ApiError(response.status, errorBody);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string; version: string }> {
    return this.request("GET", "/v1/health");
  }

  devices(): Promise<DeviceProfile[]> {
    return this.request("GET", "/v1/devices");
  }

  predictPx(deviceId: string, widthPx: number, heightPx: number): Promise<PredictResponse> {
    return this.request("POST", "/v1/predict", {
      device_id: deviceId,
      width_px: widthPx,
      height_px: heightPx,
    });
  }

  predictMm(widthMm: number, heightMm: number): Promise<PredictResponse> {
    return this.request("POST", "/v1/predict", {
      width_mm: widthMm,
      height_mm: heightMm,
    });
  }

  analyze(
    document: LayoutDocument,
    deviceId: string,
    threshold?: number,
  ): Promise<AnalyzeResponse> {
    return this.request("POST", "/v1/analyze", {
      document,
      device_id: deviceId,
      ...(threshold === undefined ? {} : { threshold }),
    });
  }
}

/**
 * Wrap an async getter so that out-of-order completions are ignored: only
 * the most recently started call may deliver. Stale results resolve to null.
 */
export function latestOnly<A extends unknown[], R>(
  run: (...args: A) => Promise<R>,
): (...args: A) => Promise<R | null> {
  let token = 0;
  return async (...args: A) => {
    const mine = ++token;
    const result = await run(...args);
    return mine === token ? result : null;
  };
}
