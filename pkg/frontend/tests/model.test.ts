import { describe, expect, it } from "vitest";

import {
  addSectionBelow,
  insertAtCursor,
  newWorkbook,
  removeSection,
  setSource,
  toggleDisplayMode,
} from "../src/model";

describe("workbook model", () => {
  it("starts with one empty section and the default space", () => {
    const wb = newWorkbook();
    expect(wb.sections).toHaveLength(1);
    expect(wb.sessionId).toBeNull();
    expect(wb.spaceName).toBe("R64[x, y, z, t]");
  });

  it("addSectionBelow inserts at k+1", () => {
    const wb = newWorkbook();
    const first = wb.sections[0]!;
    addSectionBelow(wb, 0);
    const inserted = addSectionBelow(wb, 0);
    expect(wb.sections[0]!.localId).toBe(first.localId);
    expect(wb.sections[1]!.localId).toBe(inserted.localId);
    expect(wb.sections).toHaveLength(3);
  });

  it("removeSection is a local list mutation", () => {
    const wb = newWorkbook();
    const only = wb.sections[0]!;
    removeSection(wb, only.localId);
    expect(wb.sections).toHaveLength(0);
  });

  it("editing the source clears stale outputs", () => {
    const wb = newWorkbook();
    const section = wb.sections[0]!;
    section.lastOutputs = [{ label: "c", mathpar: "9", latex: "9" }];
    section.diagnostics = [
      { severity: "error", message: "x", line: 1, column: 1 }];
    setSource(section, "a = 1;");
    expect(section.lastOutputs).toHaveLength(0);
    expect(section.diagnostics).toHaveLength(0);
  });

  it("an unchanged source keeps outputs", () => {
    const wb = newWorkbook();
    const section = wb.sections[0]!;
    setSource(section, "a = 1;");
    section.lastOutputs = [{ label: "a", mathpar: "1", latex: "1" }];
    setSource(section, "a = 1;");
    expect(section.lastOutputs).toHaveLength(1);
  });

  it("display toggle never touches outputs", () => {
    const wb = newWorkbook();
    const section = wb.sections[0]!;
    section.lastOutputs = [{ label: "c", mathpar: "9", latex: "9" }];
    expect(section.displayMode).toBe("latex");
    toggleDisplayMode(section);
    expect(section.displayMode).toBe("mathpar");
    toggleDisplayMode(section);
    expect(section.displayMode).toBe("latex");
    expect(section.lastOutputs).toHaveLength(1);
  });

  it("insertAtCursor splices the template and reports the new caret", () => {
    const wb = newWorkbook();
    const section = wb.sections[0]!;
    setSource(section, "g = ;");
    const caret = insertAtCursor(section, "\\sin( )", 4);
    expect(section.sourceText).toBe("g = \\sin( );");
    expect(caret).toBe(4 + "\\sin( )".length);
  });
});
