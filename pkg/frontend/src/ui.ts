/** DOM wiring for the authoring page.  Mounts into a root element so the
 * test harness can drive it inside jsdom against a live service. */

import { ApiClient, Question, Suggestion } from "./api.js";
import { EditorState, bindingsOf, debounce } from "./state.js";

export interface AppOptions {
  debounceMs?: number;
}

export class App {
  readonly state = new EditorState();
  private templatesByRef = new Map<string, import("./api.js").TemplateInfo>();

  // elements
  banner!: HTMLDivElement;
  titleInput!: HTMLInputElement;
  docSelect!: HTMLSelectElement;
  input!: HTMLInputElement;
  modeToggle!: HTMLInputElement;
  suggestionList!: HTMLUListElement;
  slotForm!: HTMLDivElement;
  lintBox!: HTMLDivElement;
  questionList!: HTMLOListElement;
  statusLine!: HTMLDivElement;

  constructor(private root: HTMLElement, private api: ApiClient,
              private options: AppOptions = {}) {}

  async start(): Promise<void> {
    this.render();
    try {
      const ts = await this.api.templates();
      for (const t of ts.templates) this.templatesByRef.set(t.ref, t);
      await this.refreshDocumentList();
      this.setOnline(true);
    } catch {
      this.setOnline(false);
    }
  }

  private el<K extends keyof HTMLElementTagNameMap>(
      tag: K, className: string, parent: HTMLElement,
      text = ""): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    node.className = className;
    if (text) node.textContent = text;
    parent.appendChild(node);
    return node;
  }

  private render(): void {
    this.root.innerHTML = "";
    const shell = this.el("div", "claro-app", this.root);

    this.banner = this.el("div", "banner hidden", shell,
      "Service unreachable; editing disabled, your document is kept locally.");

    const bar = this.el("div", "docbar", shell);
    this.titleInput = this.el("input", "doc-title", bar);
    this.titleInput.value = this.state.document.title;
    this.titleInput.addEventListener("input", () => {
      this.state.document.title = this.titleInput.value;
      this.state.document.dirty = true;
      this.renderStatus();
    });
    const newBtn = this.el("button", "doc-new", bar, "New");
    newBtn.addEventListener("click", () => this.newDocument());
    const saveBtn = this.el("button", "doc-save", bar, "Save");
    saveBtn.addEventListener("click", () => void this.saveDocument());
    this.docSelect = this.el("select", "doc-select", bar);
    this.docSelect.appendChild(new Option("(open a saved document)", ""));
    const loadBtn = this.el("button", "doc-load", bar, "Load");
    loadBtn.addEventListener("click", () => void this.loadSelected());
    const exportBtn = this.el("button", "doc-export", bar, "Export XML");
    exportBtn.addEventListener("click", () => void this.exportDocument());
    this.statusLine = this.el("div", "status", bar);

    const modeRow = this.el("label", "mode-row", shell,
      " also show templates that contain the input");
    this.modeToggle = document.createElement("input");
    this.modeToggle.type = "checkbox";
    this.modeToggle.className = "mode-toggle";
    modeRow.prepend(this.modeToggle);
    this.modeToggle.addEventListener("change", () => {
      this.state.mode = this.modeToggle.checked ? "contains" : "starts_with";
      void this.refreshSuggestions();
    });

    this.input = this.el("input", "cq-input", shell);
    this.input.placeholder = "Start typing a competency question...";
    const onType = debounce(this.options.debounceMs ?? 150,
      () => void this.refreshSuggestions());
    this.input.addEventListener("input", () => {
      this.state.input = this.input.value;
      this.state.clearSelection();
      this.renderSlotForm();
      onType();
    });

    const freeBtn = this.el("button", "commit-free", shell, "Add as written");
    freeBtn.addEventListener("click", () => void this.commitFreeForm());

    this.suggestionList = this.el("ul", "suggestions", shell);
    this.slotForm = this.el("div", "slot-form", shell);
    this.lintBox = this.el("div", "lint", shell);
    this.el("h2", "questions-heading", shell, "Created questions");
    this.questionList = this.el("ol", "questions", shell);
    this.renderQuestions();
    this.renderStatus();
  }

  private setOnline(online: boolean): void {
    this.state.online = online;
    this.banner.classList.toggle("hidden", online);
    this.input.disabled = !online;
  }

  async refreshSuggestions(): Promise<void> {
    const seq = ++this.state.suggestSeq;
    try {
      const suggestions = await this.api.suggest(this.state.input, this.state.mode);
      if (seq !== this.state.suggestSeq) return; // stale response, drop it
      this.state.suggestions = suggestions;
      this.setOnline(true);
      this.renderSuggestions();
    } catch {
      this.setOnline(false);
    }
  }

  private renderSuggestions(): void {
    this.suggestionList.innerHTML = "";
    for (const s of this.state.suggestions) {
      const li = this.el("li", "suggestion", this.suggestionList);
      li.dataset.ref = s.ref;
      li.textContent = s.display;
      li.addEventListener("click", () => this.selectSuggestion(s));
    }
  }

  selectSuggestion(s: Suggestion): void {
    const template = this.templatesByRef.get(s.ref);
    if (!template) return;
    this.state.select(template);
    this.renderSlotForm();
  }

  private renderSlotForm(): void {
    this.slotForm.innerHTML = "";
    const t = this.state.selected;
    if (!t) return;
    this.el("div", "slot-template", this.slotForm, t.display);
    this.state.fields.forEach((field, i) => {
      const row = this.el("label", "slot-row", this.slotForm,
        ` ${field.name} (${field.label})`);
      const input = document.createElement("input");
      input.className = "slot-input";
      input.dataset.slot = field.name;
      input.dataset.part = String(field.part);
      input.addEventListener("input", () => {
        this.state.fields[i].value = input.value;
      });
      row.prepend(input);
    });
    const commit = this.el("button", "commit-template", this.slotForm,
      "Add question");
    commit.addEventListener("click", () => void this.commitTemplate());
  }

  async commitTemplate(): Promise<void> {
    const t = this.state.selected;
    if (!t) return;
    try {
      const result = await this.api.instantiate(t.id, t.variant,
        bindingsOf(this.state.fields));
      const bindings: Record<string, string[]> = {};
      for (const f of this.state.fields) {
        (bindings[f.name] ??= []).push(f.value.trim());
      }
      this.appendQuestion({
        text: result.text,
        created: null,
        modified: null,
        instantiations: [{ template: t.ref, bindings }],
        ontologies: [],
      });
      this.state.clearSelection();
      this.renderSlotForm();
      this.showLint([]);
    } catch (e) {
      this.showError(e);
    }
  }

  async commitFreeForm(): Promise<void> {
    const text = this.state.input.trim();
    if (!text) return;
    try {
      const findings = await this.api.lint(text);
      this.showLint(findings);
      this.appendQuestion({
        text, created: null, modified: null, instantiations: [], ontologies: [],
      });
    } catch (e) {
      this.showError(e);
    }
  }

  private appendQuestion(q: Question): void {
    this.state.addQuestion(q);
    this.renderQuestions();
    this.renderStatus();
  }

  private showLint(findings: import("./api.js").LintFinding[]): void {
    this.lintBox.innerHTML = "";
    for (const f of findings) {
      const row = this.el("div", `finding finding-${f.kind}`, this.lintBox,
        `${f.kind}: ${f.message}`);
      for (const rewrite of f.rewrites) {
        this.el("div", "rewrite", row, `try: ${rewrite}`);
      }
    }
  }

  private showError(e: unknown): void {
    this.lintBox.innerHTML = "";
    this.el("div", "finding finding-error", this.lintBox, String(e));
  }

  private renderQuestions(): void {
    this.questionList.innerHTML = "";
    this.state.document.questions.forEach((q, i) => {
      const li = this.el("li", "question", this.questionList);
      this.el("span", "question-text", li, q.text);
      if (q.instantiations.length) {
        this.el("span", "question-template", li,
          ` [template ${q.instantiations[0].template}]`);
      }
      const del = this.el("button", "question-delete", li, "Delete");
      del.addEventListener("click", () => {
        this.state.removeQuestion(i);
        this.renderQuestions();
        this.renderStatus();
      });
    });
  }

  private renderStatus(): void {
    const d = this.state.document;
    const name = d.id ? `${d.id}.cqd.xml` : "(unsaved)";
    this.statusLine.textContent =
      `${name}${d.dirty ? " *" : ""} - ${d.questions.length} question(s)`;
  }

  newDocument(): void {
    this.state.document = {
      id: null, revision: null, title: "Untitled", questions: [], dirty: false,
    };
    this.titleInput.value = "Untitled";
    this.renderQuestions();
    this.renderStatus();
  }

  async saveDocument(): Promise<void> {
    const d = this.state.document;
    try {
      if (!d.id) {
        const created = await this.api.createDocument(d.title);
        d.id = created.id!;
        d.revision = created.revision!;
      }
      const saved = await this.api.putDocument(d.id, {
        id: d.id,
        revision: d.revision ?? undefined,
        title: d.title,
        templateSetName: "CLaRO",
        templateSetVersion: "1.0",
        questions: d.questions,
      });
      d.revision = saved.revision!;
      d.questions = saved.questions;
      d.dirty = false;
      await this.refreshDocumentList();
      this.renderQuestions();
      this.renderStatus();
    } catch (e) {
      this.showError(e);
    }
  }

  async refreshDocumentList(): Promise<void> {
    const docs = await this.api.listDocuments();
    const current = this.docSelect.value;
    this.docSelect.innerHTML = "";
    this.docSelect.appendChild(new Option("(open a saved document)", ""));
    for (const doc of docs) {
      this.docSelect.appendChild(
        new Option(`${doc.title} (${doc.questionCount})`, doc.id));
    }
    this.docSelect.value = current;
  }

  async loadSelected(): Promise<void> {
    const id = this.docSelect.value;
    if (!id) return;
    await this.loadDocument(id);
  }

  async loadDocument(id: string): Promise<void> {
    try {
      const doc = await this.api.getDocument(id);
      this.state.document = {
        id: doc.id ?? id,
        revision: doc.revision ?? null,
        title: doc.title,
        questions: doc.questions,
        dirty: false,
      };
      this.titleInput.value = doc.title;
      this.renderQuestions();
      this.renderStatus();
    } catch (e) {
      this.showError(e);
    }
  }

  async exportDocument(): Promise<void> {
    const d = this.state.document;
    if (!d.id) {
      await this.saveDocument();
    }
    if (d.id) {
      window.open(this.api.exportUrl(d.id), "_blank");
    }
  }
}

export function initApp(root: HTMLElement, api: ApiClient,
                        options: AppOptions = {}): App {
  return new App(root, api, options);
}
