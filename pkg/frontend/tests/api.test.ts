import { describe, expect, it } from "vitest";

import { ApiError, Client } from "../src/api.js";
import type { FetchLike } from "../src/api.js";

interface Call {
  url: string;
  init?: RequestInit;
}

function fakeFetch(status: number, body: unknown): { fetchFn: FetchLike; calls: Call[] } {
  const calls: Call[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

describe("client", () => {
  it("posts moves as JSON to the session path", async () => {
    const { fetchFn, calls } = fakeFetch(200, { id: "abc" });
    const client = new Client("http://x", fetchFn);
    await client.move("abc", "v4", 4);
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("http://x/move/abc");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(calls[0].init?.body as string)).toEqual({ to: "v4", amount: 4 });
  });

  it("turns error responses into ApiError with the server detail", async () => {
    const { fetchFn } = fakeFetch(409, { detail: "engine to move" });
    const client = new Client("http://x", fetchFn);
    const err = await client.move("abc", "v4", 1).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.detail).toBe("engine to move");
  });

  it("copes with error bodies that are not JSON", async () => {
    const fetchFn: FetchLike = async () => new Response("boom", { status: 500 });
    const client = new Client("http://x", fetchFn);
    const err = await client.state("abc").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(500);
  });

  it("returns parsed bodies on success", async () => {
    const { fetchFn } = fakeFetch(200, { aborted: false, outcome: "MoverWins" });
    const client = new Client("http://x", fetchFn);
    const result = await client.solve("abc");
    expect(result.outcome).toBe("MoverWins");
  });
});
