import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, MathparClient } from "../src/api";
import { LiveServer, startServer } from "./server";

let server: LiveServer;
let client: MathparClient;

beforeAll(async () => {
  server = await startServer();
  client = new MathparClient(server.base, (input, init) => fetch(input, init));
}, 30_000);

afterAll(() => {
  server?.stop();
});

describe("kernel client against the live service", () => {
  it("reports health", async () => {
    const body = await client.health();
    expect(body.status).toBe("ok");
  });

  it("creates distinct sessions", async () => {
    const a = await client.createSession();
    const b = await client.createSession();
    expect(a).toHaveLength(32);
    expect(a).not.toBe(b);
  });

  it("runs the tropical script and reflects the space", async () => {
    const sid = await client.createSession();
    const response = await client.run(
      sid,
      "SPACE = ZMaxMult[x, y];\na = 2; b = 9;\nc = a + b; d = a b;\n" +
      "\\print(c, d)");
    expect(response.outputs.map(o => [o.label, o.mathpar])).toEqual(
      [["c", "9"], ["d", "18"]]);
    expect(response.spaceName).toBe("ZMaxMult[x, y]");
    expect(response.floatpos).toBe(2);
  });

  it("keeps bindings within a session and clears on demand", async () => {
    const sid = await client.createSession();
    await client.run(sid, "f = 5;");
    const before = await client.run(sid, "\\print(f);");
    expect(before.diagnostics).toHaveLength(0);
    await client.clear(sid);
    const after = await client.run(sid, "\\print(f);");
    expect(after.diagnostics.some(
      d => d.message.toLowerCase().includes("unbound"))).toBe(true);
  });

  it("maps deleted sessions to ApiError 404", async () => {
    const sid = await client.createSession();
    await client.deleteSession(sid);
    await expect(client.run(sid, "1;")).rejects.toMatchObject(
      { status: 404 } satisfies Partial<ApiError>);
  });
});
