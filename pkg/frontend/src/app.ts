/**
 * The workbook: editable sections with per-section toolbars, a Mathpar/
 * LaTeX output toggle, a command-insertion sidebar, and a live SPACE
 * indicator.  All math comes from the HTTP API; this layer only renders.
 */

import { MathparClient, RunDiagnostic, RunOutput } from "./api";
import { COMMAND_GROUPS } from "./commands";
import {
  SectionModel,
  WorkbookModel,
  addSectionBelow,
  insertAtCursor,
  newWorkbook,
  removeSection,
  setSource,
  toggleDisplayMode,
} from "./model";
import { renderLatexHtml } from "./render";

interface SectionElements {
  root: HTMLElement;
  textarea: HTMLTextAreaElement;
  outputs: HTMLElement;
  runButton: HTMLButtonElement;
  toggleButton: HTMLButtonElement;
}

export class WorkbookApp {
  readonly model: WorkbookModel;
  private readonly elements = new Map<number, SectionElements>();
  private focusedSection: number | null = null;
  private sectionsHost!: HTMLElement;
  private spaceIndicator!: HTMLElement;
  private banner!: HTMLElement;
  private hint!: HTMLElement;

  constructor(private readonly root: HTMLElement,
              private readonly client: MathparClient) {
    this.model = newWorkbook();
  }

  mount(): void {
    this.root.innerHTML = "";
    const header = el("header", "workbook-header");
    header.append(el("h1", "", "mathpar workbook"));
    this.spaceIndicator = el("span", "space-indicator", this.model.spaceName);
    this.spaceIndicator.id = "space-indicator";
    const clearAll = button("clear all", "clear-all",
      () => void this.clearAll());
    header.append(this.spaceIndicator, clearAll);
    this.banner = el("div", "banner");
    this.banner.id = "banner";
    this.banner.setAttribute("role", "alert");
    this.banner.hidden = true;
    this.hint = el("div", "hint");
    this.hint.id = "hint";

    const sidebar = this.buildSidebar();
    this.sectionsHost = el("main", "sections");
    const layout = el("div", "layout");
    layout.append(sidebar, this.sectionsHost);
    this.root.append(header, this.banner, this.hint, layout);
    this.render();
  }

  private buildSidebar(): HTMLElement {
    const aside = el("aside", "sidebar");
    for (const group of COMMAND_GROUPS) {
      const panel = document.createElement("details");
      panel.className = "panel";
      panel.open = group.title === "Functions";
      const summary = document.createElement("summary");
      summary.textContent = group.title;
      panel.append(summary);
      for (const entry of group.entries) {
        panel.append(button(entry.label, "command",
          () => this.insertCommand(entry.template)));
      }
      aside.append(panel);
    }
    return aside;
  }

  insertCommand(template: string): void {
    const id = this.focusedSection;
    const section = this.model.sections.find(s => s.localId === id);
    const elements = id === null ? undefined : this.elements.get(id);
    if (!section || !elements) {
      this.hint.textContent = "click into a section first, then insert";
      return;
    }
    const caret = elements.textarea.selectionStart ?? section.sourceText.length;
    const position = insertAtCursor(section, template, caret);
    this.updateSection(section);
    elements.textarea.focus();
    elements.textarea.setSelectionRange(position, position);
    this.hint.textContent = "";
  }

  async runSection(localId: number): Promise<void> {
    const section = this.model.sections.find(s => s.localId === localId);
    if (!section || section.running) {
      return;
    }
    section.running = true;
    this.updateSection(section);
    try {
      if (!this.model.sessionId) {
        this.model.sessionId = await this.client.createSession();
      }
      const response = await this.client.run(
        this.model.sessionId, section.sourceText);
      section.lastOutputs = response.outputs;
      section.diagnostics = response.diagnostics;
      this.model.spaceName = response.spaceName;
      this.model.floatpos = response.floatpos;
      this.hideBanner();
    } catch (error) {
      // the section source stays untouched; report and carry on
      this.showBanner(`the kernel is unreachable: ${String(error)}`);
    } finally {
      section.running = false;
      this.spaceIndicator.textContent = this.model.spaceName;
      this.updateSection(section);
    }
  }

  async clearAll(): Promise<void> {
    try {
      if (this.model.sessionId) {
        await this.client.clear(this.model.sessionId);
      }
      for (const section of this.model.sections) {
        section.lastOutputs = [];
        section.diagnostics = [];
        this.updateSection(section);
      }
      this.hideBanner();
    } catch (error) {
      this.showBanner(`clear failed, nothing was changed: ${String(error)}`);
    }
  }

  addBelow(localId: number): void {
    const index = this.model.sections.findIndex(s => s.localId === localId);
    addSectionBelow(this.model, index);
    this.render();
  }

  remove(localId: number): void {
    removeSection(this.model, localId);
    this.elements.delete(localId);
    if (this.focusedSection === localId) {
      this.focusedSection = null;
    }
    this.render();
  }

  render(): void {
    const seen = new Set<number>();
    this.sectionsHost.innerHTML = "";
    for (const section of this.model.sections) {
      seen.add(section.localId);
      let elements = this.elements.get(section.localId);
      if (!elements) {
        elements = this.buildSection(section);
        this.elements.set(section.localId, elements);
      }
      this.sectionsHost.append(elements.root);
      this.updateSection(section);
    }
    for (const id of [...this.elements.keys()]) {
      if (!seen.has(id)) {
        this.elements.delete(id);
      }
    }
    if (this.model.sections.length === 0) {
      const empty = el("div", "empty-workbook");
      empty.append(button("add section", "add-first", () => {
        addSectionBelow(this.model, -1);
        this.render();
      }));
      this.sectionsHost.append(empty);
    }
  }

  private buildSection(section: SectionModel): SectionElements {
    const root = el("section", "section");
    root.dataset.localId = String(section.localId);
    const toolbar = el("div", "toolbar");
    const runButton = button("run", "run",
      () => void this.runSection(section.localId));
    const toggleButton = button("", "toggle", () => {
      toggleDisplayMode(section);
      this.updateSection(section);
    });
    toolbar.append(
      runButton,
      toggleButton,
      button("add below", "add-below", () => this.addBelow(section.localId)),
      button("remove", "remove", () => this.remove(section.localId)),
    );
    const textarea = document.createElement("textarea");
    textarea.className = "source";
    textarea.rows = 4;
    textarea.spellcheck = false;
    textarea.addEventListener("input", () => {
      setSource(section, textarea.value);
      this.renderOutputs(section);
    });
    textarea.addEventListener("focus", () => {
      this.focusedSection = section.localId;
    });
    // convenience only: execution stays explicit, never on blur
    textarea.addEventListener("keydown", event => {
      if (event.key === "Enter" && (event.ctrlKey || event.metaKey)) {
        event.preventDefault();
        void this.runSection(section.localId);
      }
    });
    const outputs = el("div", "outputs");
    root.append(toolbar, textarea, outputs);
    return { root, textarea, outputs, runButton, toggleButton };
  }

  private updateSection(section: SectionModel): void {
    const elements = this.elements.get(section.localId);
    if (!elements) {
      return;
    }
    if (elements.textarea.value !== section.sourceText) {
      elements.textarea.value = section.sourceText;
    }
    elements.runButton.disabled = section.running;
    elements.toggleButton.textContent =
      section.displayMode === "latex" ? "show Mathpar" : "show LaTeX";
    this.renderOutputs(section);
  }

  private renderOutputs(section: SectionModel): void {
    const elements = this.elements.get(section.localId);
    if (!elements) {
      return;
    }
    elements.outputs.innerHTML = "";
    for (const output of section.lastOutputs) {
      elements.outputs.append(this.renderOutput(output, section.displayMode));
    }
    for (const diagnostic of section.diagnostics) {
      elements.outputs.append(renderDiagnostic(diagnostic));
    }
  }

  private renderOutput(output: RunOutput,
                       mode: "mathpar" | "latex"): HTMLElement {
    const row = el("div", "output");
    if (mode === "latex") {
      const joined = output.label
        ? `${output.label} = ${output.latex}`
        : output.latex;
      const span = el("span", "output-latex");
      span.innerHTML = renderLatexHtml(joined);
      row.append(span);
    } else {
      const joined = output.label
        ? `${output.label} = ${output.mathpar}`
        : output.mathpar;
      const code = el("code", "output-text", joined);
      row.append(code);
    }
    return row;
  }

  private showBanner(message: string): void {
    this.banner.textContent = message;
    this.banner.hidden = false;
  }

  private hideBanner(): void {
    this.banner.textContent = "";
    this.banner.hidden = true;
  }
}

function renderDiagnostic(diagnostic: RunDiagnostic): HTMLElement {
  const row = el("div", `diagnostic diagnostic-${diagnostic.severity}`,
    `line ${diagnostic.line}, column ${diagnostic.column}: ` +
    diagnostic.message);
  row.dataset.line = String(diagnostic.line);
  row.dataset.column = String(diagnostic.column);
  return row;
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function button(label: string, className: string,
                onClick: () => void): HTMLButtonElement {
  const node = document.createElement("button");
  node.type = "button";
  node.className = className;
  node.textContent = label;
  node.addEventListener("click", onClick);
  return node;
}
