"""JSON views of the core objects, shared by the CLI and the HTTP service
so both surfaces emit identical payloads."""

from __future__ import annotations

import json
from typing import Any, Dict, List

from .authoring import LintFinding, Suggestion, render_user_friendly
from .chunking import Binding, ChunkedCQ, TextPiece
from .evaluation import CoverageReport
from .matching import MatchResult
from .storage import CQDocument
from .templates import Slot, Template, TemplateSet


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def template_dict(t: Template) -> Dict[str, Any]:
    return {
        "ref": t.ref,
        "id": t.id,
        "variant": t.variant,
        "pattern": t.pattern(),
        "display": render_user_friendly(t),
        "provenance": t.provenance.value,
        "slots": [s.name for s in t.slots()],
    }


def template_set_dict(ts: TemplateSet) -> Dict[str, Any]:
    return {
        "name": ts.name,
        "version": ts.version,
        "baseCount": len(ts.base_templates()),
        "variantCount": len(ts.variant_templates()),
        "templates": [template_dict(t) for t in ts],
    }


def suggestion_dict(s: Suggestion) -> Dict[str, Any]:
    return {"ref": s.ref, "display": s.display, "hit": s.hit}


def chunking_dict(c: ChunkedCQ) -> Dict[str, Any]:
    pieces: List[Dict[str, Any]] = []
    for p in c.pieces:
        if isinstance(p, TextPiece):
            pieces.append({"kind": "text", "text": p.text})
        else:
            pieces.append({"kind": p.kind.value, "index": p.index, "phrase": p.phrase})
    return {"pattern": c.pattern(), "rank": c.rank, "pieces": pieces}


def match_dict(m: MatchResult) -> Dict[str, Any]:
    return {
        "template": m.ref,
        "bindings": {name: list(parts) for name, parts in m.bindings},
        "exactness": m.exactness.value,
        "appliedRules": list(m.applied_rules),
    }


def lint_dict(f: LintFinding) -> Dict[str, Any]:
    return {
        "kind": f.kind.value,
        "start": f.start,
        "end": f.end,
        "message": f.message,
        "rewrites": list(f.rewrites),
    }


def report_dict(r: CoverageReport) -> Dict[str, Any]:
    return {
        "set": r.set_name,
        "templateSet": r.template_set,
        "total": r.total,
        "valid": r.valid,
        "matched": r.matched,
        "percent": r.percent,
        "percentRounded": r.percent_int,
        "results": [
            {"id": x.id, "outcome": x.outcome.value, "template": x.template_ref}
            for x in r.results
        ],
    }


def document_dict(doc: CQDocument, doc_id: str = "", revision: str = "") -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "title": doc.title,
        "templateSetName": doc.template_set_name,
        "templateSetVersion": doc.template_set_version,
        "questions": [
            {
                "text": q.text,
                "created": q.created,
                "modified": q.modified,
                "instantiations": [
                    {"template": inst.ref,
                     "bindings": {s: list(p) for s, p in inst.bindings}}
                    for inst in q.instantiations
                ],
                "ontologies": list(q.ontologies),
            }
            for q in doc.questions
        ],
    }
    if doc_id:
        out["id"] = doc_id
    if revision:
        out["revision"] = revision
    return out
