import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { jsonResponse } from "./helpers.js";

interface Recorded {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: unknown;
}

function clientWith(
  responder: (url: string, init?: RequestInit) => Response,
): { client: ApiClient; calls: Recorded[] } {
  const calls: Recorded[] = [];
  const client = new ApiClient("http://test", async (url, init) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    return responder(url, init);
  });
  return { client, calls };
}

describe("ApiClient", () => {
  it("posts query bodies to the right route", async () => {
    const { client, calls } = clientWith(() =>
      jsonResponse(200, { verdict: "yes", substitutions: null, text: "yes\n" }),
    );
    const result = await client.query("program text", "p(a)");
    expect(result.verdict).toBe("yes");
    expect(calls[0].url).toBe("http://test/api/query");
    expect(calls[0].method).toBe("POST");
    expect(calls[0].body).toEqual({ program: "program text", query: "p(a)" });
    expect(calls[0].headers["Content-Type"]).toBe("application/json");
  });

  it("stores the session token and sends it as a bearer header", async () => {
    const { client, calls } = clientWith((url) =>
      url.endsWith("/api/session")
        ? jsonResponse(200, { token: "tok123", username: "alice" })
        : jsonResponse(200, { folder: null, folders: [], files: [] }),
    );
    await client.login("alice", "pw");
    expect(client.token).toBe("tok123");
    await client.tree();
    expect(calls[1].headers["Authorization"]).toBe("Bearer tok123");
  });

  it("logout clears the token", async () => {
    const { client } = clientWith(() => jsonResponse(200, { ok: true }));
    client.token = "tok";
    await client.logout();
    expect(client.token).toBeNull();
  });

  it("unwraps the error envelope", async () => {
    const { client } = clientWith(() =>
      jsonResponse(409, {
        error: { code: "MultipleAnswerSets", message: "6 answer sets", count: 6 },
      }),
    );
    const failure = await client.execute("program").catch((e) => e as ApiError);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(409);
    expect(failure.code).toBe("MultipleAnswerSets");
    expect(failure.count).toBe(6);
  });

  it("carries diagnostics through", async () => {
    const { client } = clientWith(() =>
      jsonResponse(400, {
        error: {
          code: "SortCheckError",
          message: "2 problems",
          diagnostics: [
            { code: "SortMismatch", line: 6, column: 1, message: "m", severity: "error" },
          ],
        },
      }),
    );
    const failure = await client.answerSets("p").catch((e) => e as ApiError);
    expect(failure.diagnostics).toHaveLength(1);
    expect(failure.diagnostics[0].code).toBe("SortMismatch");
  });

  it("maps fetch failures to a network error", async () => {
    const client = new ApiClient("http://test", async () => {
      throw new TypeError("fetch failed");
    });
    const failure = await client.tree().catch((e) => e as ApiError);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.code).toBe("NetworkError");
    expect(failure.status).toBe(0);
  });

  it("exposes the share url", async () => {
    const { client, calls } = clientWith(() =>
      jsonResponse(200, { url: "/share/abc" }),
    );
    const url = await client.shareFile("f1");
    expect(url).toBe("/share/abc");
    expect(calls[0].url).toBe("http://test/api/files/f1/share");
  });
});
