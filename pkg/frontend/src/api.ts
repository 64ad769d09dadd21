/** Typed client for the claro HTTP JSON API. */

export interface Suggestion {
  ref: string;
  display: string;
  hit: "starts-with" | "contains";
}

export interface TemplateInfo {
  ref: string;
  id: number;
  variant: string | null;
  pattern: string;
  display: string;
  provenance: string;
  slots: string[]; // one entry per slot occurrence, in order
}

export interface TemplateSetInfo {
  name: string;
  version: string;
  baseCount: number;
  variantCount: number;
  templates: TemplateInfo[];
}

export interface LintFinding {
  kind: string;
  start: number;
  end: number;
  message: string;
  rewrites: string[];
}

export interface Instantiation {
  template: string;
  bindings: Record<string, string[]>;
}

export interface Question {
  text: string;
  created: string | null;
  modified: string | null;
  instantiations: Instantiation[];
  ontologies: string[];
}

export interface DocumentPayload {
  id?: string;
  revision?: string;
  title: string;
  templateSetName: string;
  templateSetVersion: string;
  questions: Question[];
}

export interface DocumentSummary {
  id: string;
  title: string;
  questionCount: number;
  revision: string;
}

export type SuggestMode = "starts_with" | "contains";

export class ApiError extends Error {
  constructor(public status: number, public code: string, message: string) {
    super(message);
  }
}

async function parseError(res: Response): Promise<never> {
  let code = "error";
  let message = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    code = body.code ?? code;
    message = body.message ?? message;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(res.status, code, message);
}

export class ApiClient {
  constructor(private baseUrl: string) {}

  private async get<T>(path: string): Promise<T> {
    const res = await fetch(this.baseUrl + path);
    if (!res.ok) await parseError(res);
    return (await res.json()) as T;
  }

  private async send<T>(method: string, path: string, body: unknown): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) await parseError(res);
    return (await res.json()) as T;
  }

  templates(): Promise<TemplateSetInfo> {
    return this.get("/templates");
  }

  suggest(q: string, mode: SuggestMode): Promise<Suggestion[]> {
    const params = new URLSearchParams({ q, mode });
    return this.get(`/suggest?${params}`);
  }

  lint(text: string): Promise<LintFinding[]> {
    return this.send("POST", "/lint", { text });
  }

  instantiate(templateId: number, variant: string | null,
              bindings: Record<string, string | string[]>): Promise<{ template: string; text: string }> {
    return this.send("POST", "/instantiate", { templateId, variant, bindings });
  }

  listDocuments(): Promise<DocumentSummary[]> {
    return this.get("/documents");
  }

  createDocument(title: string): Promise<DocumentPayload> {
    return this.send("POST", "/documents", { title });
  }

  getDocument(id: string): Promise<DocumentPayload> {
    return this.get(`/documents/${id}`);
  }

  putDocument(id: string, doc: DocumentPayload): Promise<DocumentPayload> {
    return this.send("PUT", `/documents/${id}`, doc);
  }

  exportUrl(id: string): string {
    return `${this.baseUrl}/documents/${id}/export`;
  }

  async exportXml(id: string): Promise<string> {
    const res = await fetch(this.exportUrl(id));
    if (!res.ok) await parseError(res);
    return await res.text();
  }
}
