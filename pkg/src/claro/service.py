"""HTTP+JSON facade over the toolkit for the browser UI.

Endpoints (all JSON unless noted):

    GET    /templates
    GET    /suggest?q=...&mode=starts_with|contains
    POST   /chunk        {"text": ...}
    POST   /match        {"text": ...} or {"chunking": "<gold span syntax>"}
    POST   /lint         {"text": ...}
    POST   /instantiate  {"templateId": 81, "variant": null, "bindings": {...}}
    GET    /documents
    POST   /documents    {"title": ...}
    GET    /documents/{id}
    PUT    /documents/{id}        full document payload + "revision"
    DELETE /documents/{id}
    POST   /documents/{id}/questions   {"text", "templateId"?, "variant"?, "bindings"?}
    DELETE /documents/{id}/questions/{n}
    GET    /documents/{id}/export      (XML)

Documents live as .cqd.xml files in a directory; the revision is the
content hash, and a stale revision on PUT/POST/DELETE yields 409.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any, Dict, Optional, Tuple
from urllib.parse import parse_qs, urlparse

from . import jsonio
from .authoring import BindingError, SuggestMode, instantiate, lint, suggest
from .chunking import chunk, parse_gold_chunking
from .matching import match, match_text
from .storage import (CompetencyQuestion, CQDocument, FILE_EXTENSION, Instantiation,
                      StorageError, load_document_checked, now_timestamp,
                      save_document)
from .templates import TemplateSet

DEFAULT_PORT = 8642


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: Any = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.detail = detail

    def payload(self) -> Dict[str, Any]:
        out = {"code": self.code, "message": str(self)}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


ERROR_CODES = (
    "invalid-payload", "unknown-template", "unknown-document",
    "unknown-question", "stale-revision", "bad-bindings", "not-found",
)


class DocumentStore:
    """Filesystem-backed documents; writes serialized per store."""

    def __init__(self, directory: str, templates: TemplateSet):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.templates = templates
        self._lock = threading.Lock()

    def _path(self, doc_id: str) -> Path:
        if not re.fullmatch(r"[a-z0-9][a-z0-9-]*", doc_id):
            raise ApiError(404, "unknown-document", f"no document {doc_id!r}")
        return self.dir / f"{doc_id}{FILE_EXTENSION}"

    @staticmethod
    def revision_of(xml_text: str) -> str:
        return hashlib.sha256(xml_text.encode("utf-8")).hexdigest()[:16]

    def list_ids(self):
        return sorted(p.name[:-len(FILE_EXTENSION)]
                      for p in self.dir.glob(f"*{FILE_EXTENSION}"))

    def load(self, doc_id: str) -> Tuple[CQDocument, str]:
        path = self._path(doc_id)
        if not path.exists():
            raise ApiError(404, "unknown-document", f"no document {doc_id!r}")
        xml_text = path.read_text(encoding="utf-8")
        doc, _warnings = load_document_checked(xml_text, self.templates)
        return doc, self.revision_of(xml_text)

    def export(self, doc_id: str) -> str:
        path = self._path(doc_id)
        if not path.exists():
            raise ApiError(404, "unknown-document", f"no document {doc_id!r}")
        return path.read_text(encoding="utf-8")

    def create(self, title: str) -> Tuple[str, CQDocument, str]:
        slug = re.sub(r"-+", "-", re.sub(r"[^a-z0-9]", "-", title.lower())).strip("-")
        slug = slug or "document"
        with self._lock:
            doc_id, n = slug, 1
            while self._path(doc_id).exists():
                n += 1
                doc_id = f"{slug}-{n}"
            doc = CQDocument(title=title)
            xml_text = save_document(doc)
            self._path(doc_id).write_text(xml_text, encoding="utf-8")
        return doc_id, doc, self.revision_of(xml_text)

    def save(self, doc_id: str, doc: CQDocument, expected_revision: Optional[str]) -> str:
        with self._lock:
            path = self._path(doc_id)
            if not path.exists():
                raise ApiError(404, "unknown-document", f"no document {doc_id!r}")
            current = self.revision_of(path.read_text(encoding="utf-8"))
            if expected_revision is not None and expected_revision != current:
                raise ApiError(409, "stale-revision",
                               "document changed since it was read",
                               {"currentRevision": current})
            xml_text = save_document(doc)
            path.write_text(xml_text, encoding="utf-8")
            return self.revision_of(xml_text)

    def delete(self, doc_id: str):
        with self._lock:
            path = self._path(doc_id)
            if not path.exists():
                raise ApiError(404, "unknown-document", f"no document {doc_id!r}")
            path.unlink()


class Api:
    """Routing-table-free dispatch: (method, path) -> JSON payload."""

    def __init__(self, templates: TemplateSet, store: DocumentStore):
        self.templates = templates
        self.store = store

    # --- core -----------------------------------------------------------

    def get_templates(self) -> Any:
        return jsonio.template_set_dict(self.templates)

    def get_suggest(self, query: Dict[str, list]) -> Any:
        q = (query.get("q") or [""])[0]
        mode_raw = (query.get("mode") or ["starts_with"])[0]
        try:
            mode = SuggestMode(mode_raw)
        except ValueError:
            raise ApiError(400, "invalid-payload",
                           f"mode must be starts_with or contains, got {mode_raw!r}")
        return [jsonio.suggestion_dict(s) for s in suggest(q, mode, self.templates)]

    def post_chunk(self, body: Dict[str, Any]) -> Any:
        text = _require_str(body, "text")
        return [jsonio.chunking_dict(c) for c in chunk(text)]

    def post_match(self, body: Dict[str, Any]) -> Any:
        if "chunking" in body:
            try:
                chunking = parse_gold_chunking(_require_str(body, "chunking"))
            except ValueError as e:
                raise ApiError(400, "invalid-payload", str(e))
            results = match(chunking, self.templates)
        else:
            results = match_text(_require_str(body, "text"), self.templates)
        return [jsonio.match_dict(m) for m in results]

    def post_lint(self, body: Dict[str, Any]) -> Any:
        return [jsonio.lint_dict(f) for f in lint(_require_str(body, "text"))]

    def post_instantiate(self, body: Dict[str, Any]) -> Any:
        t = self._template_of(body)
        bindings = body.get("bindings")
        if not isinstance(bindings, dict):
            raise ApiError(400, "invalid-payload", "bindings must be an object")
        try:
            text = instantiate(t, bindings)
        except BindingError as e:
            raise ApiError(400, "bad-bindings", str(e))
        return {"template": t.ref, "text": text}

    def _template_of(self, body: Dict[str, Any]):
        template_id = body.get("templateId")
        if not isinstance(template_id, int):
            raise ApiError(400, "invalid-payload", "templateId must be an integer")
        variant = body.get("variant")
        if variant is not None and not isinstance(variant, str):
            raise ApiError(400, "invalid-payload", "variant must be a string or null")
        t = self.templates.get(template_id, variant)
        if t is None:
            raise ApiError(404, "unknown-template",
                           f"no template {template_id}{variant or ''}")
        return t

    # --- documents --------------------------------------------------------

    def get_documents(self) -> Any:
        out = []
        for doc_id in self.store.list_ids():
            doc, revision = self.store.load(doc_id)
            out.append({"id": doc_id, "title": doc.title,
                        "questionCount": len(doc.questions), "revision": revision})
        return out

    def post_documents(self, body: Dict[str, Any]) -> Any:
        title = _require_str(body, "title")
        doc_id, doc, revision = self.store.create(title)
        return jsonio.document_dict(doc, doc_id, revision)

    def get_document(self, doc_id: str) -> Any:
        doc, revision = self.store.load(doc_id)
        return jsonio.document_dict(doc, doc_id, revision)

    def put_document(self, doc_id: str, body: Dict[str, Any]) -> Any:
        doc = self._document_from_payload(body)
        expected = body.get("revision")
        if not isinstance(expected, str):
            raise ApiError(400, "invalid-payload",
                           "revision is required when replacing a document")
        revision = self.store.save(doc_id, doc, expected)
        return jsonio.document_dict(doc, doc_id, revision)

    def delete_document(self, doc_id: str) -> Any:
        self.store.delete(doc_id)
        return {"deleted": doc_id}

    def post_question(self, doc_id: str, body: Dict[str, Any]) -> Any:
        doc, revision = self.store.load(doc_id)
        text = _require_str(body, "text")
        instantiations = ()
        if body.get("templateId") is not None:
            t = self._template_of(body)
            bindings = body.get("bindings") or {}
            if not isinstance(bindings, dict):
                raise ApiError(400, "invalid-payload", "bindings must be an object")
            try:
                produced = instantiate(t, bindings)
            except BindingError as e:
                raise ApiError(400, "bad-bindings", str(e))
            if produced != text:
                raise ApiError(400, "bad-bindings",
                               f"bindings produce {produced!r}, not the given text")
            instantiations = (_instantiation_from(t, bindings),)
        stamp = now_timestamp()
        doc.questions.append(CompetencyQuestion(
            text=text, instantiations=instantiations,
            ontologies=tuple(body.get("ontologies") or ()),
            created=stamp, modified=stamp))
        new_revision = self.store.save(doc_id, doc, body.get("revision") or revision)
        return jsonio.document_dict(doc, doc_id, new_revision)

    def delete_question(self, doc_id: str, index: int,
                        query: Dict[str, list]) -> Any:
        doc, revision = self.store.load(doc_id)
        if not 0 <= index < len(doc.questions):
            raise ApiError(404, "unknown-question", f"no question {index}")
        del doc.questions[index]
        expected = (query.get("revision") or [revision])[0]
        new_revision = self.store.save(doc_id, doc, expected)
        return jsonio.document_dict(doc, doc_id, new_revision)

    def _document_from_payload(self, body: Dict[str, Any]) -> CQDocument:
        title = _require_str(body, "title")
        doc = CQDocument(
            title=title,
            template_set_name=body.get("templateSetName", "CLaRO"),
            template_set_version=body.get("templateSetVersion", "1.0"),
        )
        for i, q in enumerate(body.get("questions") or []):
            if not isinstance(q, dict) or not isinstance(q.get("text"), str):
                raise ApiError(400, "invalid-payload", f"question {i}: missing text")
            instantiations = []
            for inst in q.get("instantiations") or []:
                ref = inst.get("template")
                t = self.templates.by_ref(str(ref)) if ref is not None else None
                if t is None:
                    raise ApiError(404, "unknown-template", f"no template {ref}")
                bindings = inst.get("bindings") or {}
                instantiations.append(_instantiation_from(t, bindings))
            try:
                doc.questions.append(CompetencyQuestion(
                    text=q["text"],
                    instantiations=tuple(instantiations),
                    ontologies=tuple(q.get("ontologies") or ()),
                    created=q.get("created"),
                    modified=q.get("modified"),
                ))
            except ValueError as e:
                raise ApiError(400, "invalid-payload", f"question {i}: {e}")
        return doc


def _instantiation_from(t, bindings: Dict[str, Any]) -> Instantiation:
    pairs = []
    for slot in t.slot_names():
        value = bindings.get(slot)
        if value is None:
            raise ApiError(400, "bad-bindings", f"unbound slot {slot}")
        parts = tuple(value) if isinstance(value, list) else (value,)
        pairs.append((slot, parts))
    return Instantiation(t.id, t.variant, tuple(pairs))


def _require_str(body: Dict[str, Any], key: str) -> str:
    value = body.get(key)
    if not isinstance(value, str) or not value.strip():
        raise ApiError(400, "invalid-payload", f"{key} must be a non-empty string")
    return value


class _Handler(BaseHTTPRequestHandler):
    api: Api = None  # set by run_server
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, payload: Any, content_type="application/json"):
        if content_type == "application/json":
            data = jsonio.dumps(payload).encode("utf-8")
        else:
            data = payload.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", content_type + "; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(data)

    def _body(self) -> Dict[str, Any]:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ApiError(400, "invalid-payload", f"body is not valid JSON: {e}")
        if not isinstance(body, dict):
            raise ApiError(400, "invalid-payload", "body must be a JSON object")
        return body

    def _dispatch(self, method: str):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        query = parse_qs(url.query)
        api = self.api
        try:
            if method == "OPTIONS":
                self._send(204, "")
                return
            if not parts:
                self._send(200, {"service": "claro", "endpoints": [
                    "/templates", "/suggest", "/chunk", "/match", "/lint",
                    "/instantiate", "/documents"]})
                return
            if parts == ["templates"] and method == "GET":
                self._send(200, api.get_templates()); return
            if parts == ["suggest"] and method == "GET":
                self._send(200, api.get_suggest(query)); return
            if parts == ["chunk"] and method == "POST":
                self._send(200, api.post_chunk(self._body())); return
            if parts == ["match"] and method == "POST":
                self._send(200, api.post_match(self._body())); return
            if parts == ["lint"] and method == "POST":
                self._send(200, api.post_lint(self._body())); return
            if parts == ["instantiate"] and method == "POST":
                self._send(200, api.post_instantiate(self._body())); return
            if parts == ["documents"]:
                if method == "GET":
                    self._send(200, api.get_documents()); return
                if method == "POST":
                    self._send(201, api.post_documents(self._body())); return
            if len(parts) == 2 and parts[0] == "documents":
                doc_id = parts[1]
                if method == "GET":
                    self._send(200, api.get_document(doc_id)); return
                if method == "PUT":
                    self._send(200, api.put_document(doc_id, self._body())); return
                if method == "DELETE":
                    self._send(200, api.delete_document(doc_id)); return
            if len(parts) == 3 and parts[0] == "documents" and parts[2] == "export" \
                    and method == "GET":
                self._send(200, api.store.export(parts[1]), content_type="application/xml")
                return
            if len(parts) == 3 and parts[0] == "documents" and parts[2] == "questions" \
                    and method == "POST":
                self._send(200, api.post_question(parts[1], self._body())); return
            if len(parts) == 4 and parts[0] == "documents" and parts[2] == "questions" \
                    and method == "DELETE":
                try:
                    index = int(parts[3])
                except ValueError:
                    raise ApiError(404, "unknown-question", f"no question {parts[3]!r}")
                self._send(200, api.delete_question(parts[1], index, query)); return
            raise ApiError(404, "not-found", f"no route {method} {url.path}")
        except ApiError as e:
            self._send(e.status, e.payload())
        except StorageError as e:
            self._send(400, ApiError(400, "invalid-payload", str(e)).payload())

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_PUT(self):
        self._dispatch("PUT")

    def do_DELETE(self):
        self._dispatch("DELETE")

    def do_OPTIONS(self):
        self._dispatch("OPTIONS")


class _Server(ThreadingHTTPServer):
    daemon_threads = True

    def handle_error(self, request, client_address):
        pass  # dropped keep-alive connections are routine, not reportable


def make_server(host: str = "127.0.0.1", port: int = DEFAULT_PORT,
                documents_dir: str = "documents",
                templates: Optional[TemplateSet] = None) -> _Server:
    if templates is None:
        from .dsl import load_shipped_templates
        templates = load_shipped_templates()
    store = DocumentStore(documents_dir, templates)
    api = Api(templates, store)
    handler = type("Handler", (_Handler,), {"api": api})
    return _Server((host, port), handler)


def run_server(host: str = "127.0.0.1", port: int = DEFAULT_PORT,
               documents_dir: str = "documents",
               templates: Optional[TemplateSet] = None):
    server = make_server(host, port, documents_dir, templates)
    print(f"claro service on http://{host}:{server.server_address[1]} "
          f"(documents in {documents_dir})", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
