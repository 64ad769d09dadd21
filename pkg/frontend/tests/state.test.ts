import { describe, expect, it } from "vitest";

import type { TemplateInfo } from "../src/api.js";
import { bindingsOf, debounce, slotFields } from "../src/state.js";

function template(slots: string[]): TemplateInfo {
  return {
    ref: "x", id: 1, variant: null, pattern: "", display: "",
    provenance: "dataset-derived", slots,
  };
}

describe("slotFields", () => {
  it("gives one field per entity slot", () => {
    const fields = slotFields(template(["EC1", "EC2"]));
    expect(fields.map(f => f.name)).toEqual(["EC1", "EC2"]);
    expect(fields.every(f => f.label === "noun phrase")).toBe(true);
  });

  it("gives one field per predicate part with part labels", () => {
    const fields = slotFields(template(["PC1", "EC1", "PC1", "EC2"]));
    expect(fields.map(f => [f.name, f.part])).toEqual(
      [["PC1", 0], ["EC1", 0], ["PC1", 1], ["EC2", 0]]);
    expect(fields[0].label).toBe("verb phrase (part 1 of 2)");
    expect(fields[2].label).toBe("verb phrase (part 2 of 2)");
  });

  it("collapses a repeated entity slot into one field", () => {
    const fields = slotFields(template(["EC1", "PC1", "EC1"]));
    expect(fields.map(f => f.name)).toEqual(["EC1", "PC1"]);
  });
});

describe("bindingsOf", () => {
  it("uses plain strings for single occurrences and arrays for parts", () => {
    const fields = slotFields(template(["PC1", "EC1", "PC1"]));
    fields[0].value = "does";
    fields[1].value = "the tool";
    fields[2].value = "run";
    expect(bindingsOf(fields)).toEqual({ PC1: ["does", "run"], EC1: "the tool" });
  });
});

describe("debounce", () => {
  it("coalesces rapid calls", async () => {
    let calls = 0;
    const bump = debounce(10, () => { calls += 1; });
    bump(); bump(); bump();
    await new Promise(r => setTimeout(r, 40));
    expect(calls).toBe(1);
  });
});
