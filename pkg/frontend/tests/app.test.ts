// @vitest-environment jsdom
//
// Drives the real workbook DOM against the live kernel service: paste the
// tropical script, run it, check the typeset outputs, the raw-text toggle,
// the SPACE indicator, and the behaviour of clear-all.

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { MathparClient } from "../src/api";
import { WorkbookApp } from "../src/app";
import { LiveServer, startServer } from "./server";

let server: LiveServer;

beforeAll(async () => {
  server = await startServer();
}, 30_000);

afterAll(() => {
  server?.stop();
});

const TROPICAL_SCRIPT =
  "SPACE = ZMaxMult[x, y];\na = 2; b = 9;\nc = a + b; d = a b;\n" +
  "\\print(c, d)";

function mountApp(): { app: WorkbookApp; root: HTMLElement } {
  const root = document.createElement("div");
  document.body.append(root);
  const client = new MathparClient(server.base,
    (input, init) => fetch(input, init));
  const app = new WorkbookApp(root, client);
  app.mount();
  return { app, root };
}

function typeInto(root: HTMLElement, text: string): HTMLTextAreaElement {
  const textarea = root.querySelector<HTMLTextAreaElement>(".source");
  if (!textarea) {
    throw new Error("no section textarea");
  }
  textarea.value = text;
  textarea.dispatchEvent(new Event("input", { bubbles: true }));
  return textarea;
}

describe("workbook against the live service", () => {
  it("runs the tropical script: LaTeX outputs, toggle, SPACE indicator",
     async () => {
    const { app, root } = mountApp();
    typeInto(root, TROPICAL_SCRIPT);
    const section = app.model.sections[0]!;
    await app.runSection(section.localId);

    // typeset outputs in LaTeX mode
    expect(section.displayMode).toBe("latex");
    const latexOutputs = [...root.querySelectorAll(".output-latex")];
    expect(latexOutputs).toHaveLength(2);
    expect(latexOutputs[0]!.querySelector(".katex")).not.toBeNull();
    const texts = latexOutputs.map(n => n.textContent ?? "");
    expect(texts[0]).toContain("c");
    expect(texts[0]).toContain("9");
    expect(texts[1]).toContain("d");
    expect(texts[1]).toContain("18");

    // the indicator mirrors the response's space
    const indicator = root.querySelector("#space-indicator");
    expect(indicator?.textContent).toBe("ZMaxMult[x, y]");

    // toggling shows the raw Mathpar strings, no re-execution
    const toggle = root.querySelector<HTMLButtonElement>(".toggle");
    toggle!.click();
    const raw = [...root.querySelectorAll(".output-text")]
      .map(n => n.textContent);
    expect(raw).toEqual(["c = 9", "d = 18"]);
    // and back: identical DOM text for the same outputs
    toggle!.click();
    const again = [...root.querySelectorAll(".output-latex")]
      .map(n => n.textContent ?? "");
    expect(again).toEqual(texts);
    root.remove();
  }, 30_000);

  it("clear-all empties server bindings; diagnostics render inline",
     async () => {
    const { app, root } = mountApp();
    typeInto(root, TROPICAL_SCRIPT);
    const section = app.model.sections[0]!;
    await app.runSection(section.localId);
    expect(root.querySelectorAll(".output-latex").length).toBe(2);

    await app.clearAll();
    expect(root.querySelectorAll(".output-latex").length).toBe(0);

    typeInto(root, "\\print(c);");
    await app.runSection(section.localId);
    const diagnostic = root.querySelector<HTMLElement>(".diagnostic-error");
    expect(diagnostic).not.toBeNull();
    expect(diagnostic!.textContent).toContain("unbound identifier c");
    expect(diagnostic!.textContent).toContain("line 1");
    expect(diagnostic!.dataset.line).toBe("1");
    root.remove();
  }, 30_000);

  it("editing a section clears its stale outputs", async () => {
    const { app, root } = mountApp();
    typeInto(root, "1 + 1;");
    const section = app.model.sections[0]!;
    await app.runSection(section.localId);
    expect(root.querySelectorAll(".output").length).toBe(1);
    typeInto(root, "1 + 2;");
    expect(root.querySelectorAll(".output").length).toBe(0);
    root.remove();
  }, 30_000);

  it("network failure shows a banner and keeps the source", async () => {
    const root = document.createElement("div");
    document.body.append(root);
    const dead = new MathparClient("http://127.0.0.1:1",
      (input, init) => fetch(input, init));
    const app = new WorkbookApp(root, dead);
    app.mount();
    typeInto(root, "a = 1;");
    const section = app.model.sections[0]!;
    await app.runSection(section.localId);
    const banner = root.querySelector<HTMLElement>("#banner");
    expect(banner!.hidden).toBe(false);
    expect(banner!.textContent).toContain("unreachable");
    expect(section.sourceText).toBe("a = 1;");
    root.remove();
  }, 30_000);

  it("command insertion needs a focused section", () => {
    const { app, root } = mountApp();
    app.insertCommand("\\sin( )");
    expect(root.querySelector("#hint")?.textContent).toContain("section");
    const textarea = root.querySelector<HTMLTextAreaElement>(".source")!;
    textarea.focus();
    textarea.dispatchEvent(new Event("focus"));
    app.insertCommand("\\gbasis( )");
    expect(app.model.sections[0]!.sourceText).toBe("\\gbasis( )");
    root.remove();
  });

  it("add below and remove are local operations", () => {
    const { app, root } = mountApp();
    const first = app.model.sections[0]!;
    app.addBelow(first.localId);
    expect(app.model.sections).toHaveLength(2);
    expect(root.querySelectorAll(".section")).toHaveLength(2);
    app.remove(app.model.sections[1]!.localId);
    app.remove(first.localId);
    expect(root.querySelectorAll(".section")).toHaveLength(0);
    // the empty workbook still offers an add affordance
    expect(root.querySelector(".add-first")).not.toBeNull();
    root.remove();
  });
});

describe("keyboard shortcut", () => {
  it("ctrl+enter runs the focused section", async () => {
    const root = document.createElement("div");
    document.body.append(root);
    const client = new MathparClient(server.base,
      (input, init) => fetch(input, init));
    const app = new WorkbookApp(root, client);
    app.mount();
    const textarea = root.querySelector<HTMLTextAreaElement>(".source")!;
    textarea.value = "7 + 1;";
    textarea.dispatchEvent(new Event("input", { bubbles: true }));
    textarea.dispatchEvent(new KeyboardEvent("keydown",
      { key: "Enter", ctrlKey: true, bubbles: true }));
    // the handler fires an async run; poll briefly for the output
    for (let i = 0; i < 100 && !root.querySelector(".output"); i++) {
      await new Promise(resolve => setTimeout(resolve, 50));
    }
    expect(root.querySelector(".output")?.textContent).toContain("8");
    root.remove();
  }, 30_000);
});
