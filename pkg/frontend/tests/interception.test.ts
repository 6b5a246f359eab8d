// @vitest-environment jsdom
//
// Intercepts the network layer with a stub to assert the invariant that
// every displayed result string originates from a RunResponse.

import { describe, expect, it } from "vitest";

import { FetchLike, MathparClient } from "../src/api";
import { WorkbookApp } from "../src/app";

function stubFetch(): { fetch: FetchLike; calls: string[] } {
  const calls: string[] = [];
  const fetchImpl: FetchLike = async (input, init) => {
    calls.push(`${init?.method ?? "GET"} ${input}`);
    if (String(input).endsWith("/api/sessions")) {
      return new Response(JSON.stringify({ sessionId: "deadbeef".repeat(4) }),
        { status: 201, headers: { "Content-Type": "application/json" } });
    }
    if (String(input).includes("/run")) {
      return new Response(JSON.stringify({
        outputs: [
          { label: "c", mathpar: "SERVER-MATHPAR", latex: "SERVER-LATEX" },
        ],
        diagnostics: [],
        spaceName: "SERVER-SPACE[q]",
        floatpos: 7,
      }), { status: 200, headers: { "Content-Type": "application/json" } });
    }
    return new Response(null, { status: 204 });
  };
  return { fetch: fetchImpl, calls };
}

describe("rendering uses server strings verbatim", () => {
  it("shows exactly what the response carried, in both modes", async () => {
    const root = document.createElement("div");
    document.body.append(root);
    const stub = stubFetch();
    const app = new WorkbookApp(root, new MathparClient("", stub.fetch));
    app.mount();
    const textarea = root.querySelector<HTMLTextAreaElement>(".source")!;
    textarea.value = "anything;";
    textarea.dispatchEvent(new Event("input", { bubbles: true }));
    await app.runSection(app.model.sections[0]!.localId);

    // latex mode renders the latex string (KaTeX output of plain text
    // keeps the characters)
    const latexNode = root.querySelector(".output-latex")!;
    expect(latexNode.textContent).toContain("SERVER");
    expect(latexNode.textContent).toContain("LATEX");
    // the SPACE indicator mirrors the response verbatim
    expect(root.querySelector("#space-indicator")!.textContent)
      .toBe("SERVER-SPACE[q]");
    // mathpar mode shows the raw string verbatim
    root.querySelector<HTMLButtonElement>(".toggle")!.click();
    expect(root.querySelector(".output-text")!.textContent)
      .toBe("c = SERVER-MATHPAR");
    // a session was created lazily, then one run happened
    expect(stub.calls.filter(c => c.includes("/api/sessions")).length)
      .toBeGreaterThanOrEqual(2);
    root.remove();
  });

  it("display toggle never issues network calls", async () => {
    const root = document.createElement("div");
    document.body.append(root);
    const stub = stubFetch();
    const app = new WorkbookApp(root, new MathparClient("", stub.fetch));
    app.mount();
    const textarea = root.querySelector<HTMLTextAreaElement>(".source")!;
    textarea.value = "anything;";
    textarea.dispatchEvent(new Event("input", { bubbles: true }));
    await app.runSection(app.model.sections[0]!.localId);
    const before = stub.calls.length;
    const toggle = root.querySelector<HTMLButtonElement>(".toggle")!;
    toggle.click();
    toggle.click();
    expect(stub.calls.length).toBe(before);
    root.remove();
  });
});
