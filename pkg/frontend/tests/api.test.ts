import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, ServiceUnreachableError, latestOnly } from "../src/api.js";

function fakeFetch(
  handler: (url: string, init?: RequestInit) => { status: number; body: unknown },
): typeof fetch {
  return (async (url: RequestInfo | URL, init?: RequestInit) => {
    const { status, body } = handler(String(url), init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }) as typeof fetch;
}

describe("ApiClient", () => {
  it("posts predict bodies with the wire field names", async () => {
    let captured: unknown;
    const client = new ApiClient(
      "http://x",
      fakeFetch((url, init) => {
        captured = JSON.parse(String(init?.body));
        expect(url).toBe("http://x/v1/predict");
        expect((init?.headers as Record<string, string>)["Content-Type"]).toBe(
          "application/json",
        );
        return {
          status: 200,
          body: { width_mm: 9, height_mm: 9, sigma_x_mm: 1, sigma_y_mm: 1, success_rate: 0.5 },
        };
      }),
    );
    await client.predictMm(9, 9);
    expect(captured).toEqual({ width_mm: 9, height_mm: 9 });
    await client.predictPx("iphone-16", 120, 44);
    expect(captured).toEqual({ device_id: "iphone-16", width_px: 120, height_px: 44 });
  });

  it("raises ApiError with the machine-readable code", async () => {
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => ({
        status: 400,
        body: { error: "MIXED_UNITS", message: "no mixing" },
      })),
    );
    await expect(client.predictMm(1, 1)).rejects.toSatisfy(
      (err: unknown) => err instanceof ApiError && err.code === "MIXED_UNITS",
    );
  });

  it("maps network failures to ServiceUnreachableError", async () => {
    const failing = (async () => {
      throw new TypeError("fetch failed");
    }) as unknown as typeof fetch;
    const client = new ApiClient("http://x", failing);
    await expect(client.health()).rejects.toBeInstanceOf(ServiceUnreachableError);
  });
});

describe("latestOnly", () => {
  it("drops out-of-order completions", async () => {
    const resolvers: ((value: number) => void)[] = [];
    const slow = latestOnly(
      () => new Promise<number>((resolve) => resolvers.push(resolve)),
    );
    const first = slow();
    const second = slow();
    // Resolve in reverse order: the late first call must be discarded.
    resolvers[1]!(2);
    resolvers[0]!(1);
    expect(await second).toBe(2);
    expect(await first).toBeNull();
  });
});
