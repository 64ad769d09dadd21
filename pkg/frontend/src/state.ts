/** Editor state and the DOM-free pieces of the authoring logic. */

import type { Question, Suggestion, TemplateInfo } from "./api.js";

export interface SlotField {
  /** slot name, e.g. "EC1" */
  name: string;
  /** user-facing label, e.g. "noun phrase" or "verb phrase (part 2 of 2)" */
  label: string;
  /** occurrence index for split predicates, 0-based */
  part: number;
  value: string;
}

/** One input field per entity slot, one per predicate-part occurrence. */
export function slotFields(template: TemplateInfo): SlotField[] {
  const occurrenceTotals = new Map<string, number>();
  for (const name of template.slots) {
    occurrenceTotals.set(name, (occurrenceTotals.get(name) ?? 0) + 1);
  }
  const fields: SlotField[] = [];
  const seen = new Map<string, number>();
  for (const name of template.slots) {
    const part = seen.get(name) ?? 0;
    seen.set(name, part + 1);
    const isEntity = name.startsWith("EC");
    if (isEntity && part > 0) continue; // a repeated entity slot re-uses its phrase
    const total = occurrenceTotals.get(name)!;
    const base = isEntity ? "noun phrase" : "verb phrase";
    const label = !isEntity && total > 1
      ? `${base} (part ${part + 1} of ${total})`
      : base;
    fields.push({ name, label, part, value: "" });
  }
  return fields;
}

/** Assemble the bindings payload for /instantiate from filled fields. */
export function bindingsOf(fields: SlotField[]): Record<string, string | string[]> {
  const grouped = new Map<string, string[]>();
  for (const f of fields) {
    const parts = grouped.get(f.name) ?? [];
    parts.push(f.value.trim());
    grouped.set(f.name, parts);
  }
  const out: Record<string, string | string[]> = {};
  for (const [name, parts] of grouped) {
    out[name] = parts.length === 1 ? parts[0] : parts;
  }
  return out;
}

export interface EditorDocument {
  id: string | null;
  revision: string | null;
  title: string;
  questions: Question[];
  dirty: boolean;
}

export class EditorState {
  input = "";
  mode: "starts_with" | "contains" = "starts_with";
  suggestions: Suggestion[] = [];
  /** sequence number guarding against stale suggestion responses */
  suggestSeq = 0;
  selected: TemplateInfo | null = null;
  fields: SlotField[] = [];
  document: EditorDocument = {
    id: null, revision: null, title: "Untitled", questions: [], dirty: false,
  };
  online = true;

  select(template: TemplateInfo): void {
    this.selected = template;
    this.fields = slotFields(template);
  }

  clearSelection(): void {
    this.selected = null;
    this.fields = [];
  }

  addQuestion(q: Question): void {
    this.document.questions.push(q);
    this.document.dirty = true;
  }

  removeQuestion(index: number): void {
    this.document.questions.splice(index, 1);
    this.document.dirty = true;
  }
}

export function debounce<A extends unknown[]>(ms: number, fn: (...args: A) => void) {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), ms);
  };
}
