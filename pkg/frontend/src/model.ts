/**
 * Workbook state: an ordered list of sections bound to one server session.
 * Pure functions mutate the models; the DOM layer re-renders from them.
 */

import type { RunDiagnostic, RunOutput } from "./api";

export type DisplayMode = "mathpar" | "latex";

export interface SectionModel {
  localId: number;
  sourceText: string;
  lastOutputs: RunOutput[];
  diagnostics: RunDiagnostic[];
  displayMode: DisplayMode;
  running: boolean;
}

export interface WorkbookModel {
  sessionId: string | null;
  sections: SectionModel[];
  spaceName: string;
  floatpos: number;
  nextId: number;
}

export function newWorkbook(): WorkbookModel {
  const workbook: WorkbookModel = {
    sessionId: null,
    sections: [],
    spaceName: "R64[x, y, z, t]",
    floatpos: 2,
    nextId: 1,
  };
  addSectionBelow(workbook, -1);
  return workbook;
}

export function newSection(workbook: WorkbookModel): SectionModel {
  return {
    localId: workbook.nextId++,
    sourceText: "",
    lastOutputs: [],
    diagnostics: [],
    displayMode: "latex",
    running: false,
  };
}

/** Insert after the given index; -1 prepends, large indexes append. */
export function addSectionBelow(workbook: WorkbookModel, index: number): SectionModel {
  const section = newSection(workbook);
  const at = Math.min(Math.max(index + 1, 0), workbook.sections.length);
  workbook.sections.splice(at, 0, section);
  return section;
}

/** Purely local: removing a section never talks to the server. */
export function removeSection(workbook: WorkbookModel, localId: number): void {
  workbook.sections = workbook.sections.filter(s => s.localId !== localId);
}

/** Editing invalidates stale outputs for that section. */
export function setSource(section: SectionModel, text: string): void {
  if (text !== section.sourceText) {
    section.sourceText = text;
    section.lastOutputs = [];
    section.diagnostics = [];
  }
}

/** Rendering-only switch; never re-executes. */
export function toggleDisplayMode(section: SectionModel): void {
  section.displayMode = section.displayMode === "latex" ? "mathpar" : "latex";
}

export function insertAtCursor(section: SectionModel, template: string,
                               cursor: number): number {
  const before = section.sourceText.slice(0, cursor);
  const after = section.sourceText.slice(cursor);
  setSource(section, before + template + after);
  return cursor + template.length;
}
