"""Authored-question documents and their XML persistence.

Document format (UTF-8, extension .cqd.xml)::

    <cqDocument title="..." templateSetName="..." templateSetVersion="...">
      <cq text="Which software can perform spelling correction?"
          created="2024-01-01T00:00:00Z" modified="...">
        <instantiation templateId="81">
          <binding slot="EC1">software</binding>
          <binding slot="PC1">can perform</binding>
          <binding slot="EC2">spelling correction</binding>
        </instantiation>
        <forOntology ref="http://example.org/swo"/>
      </cq>
    </cqDocument>

A question may carry zero instantiations (free-form questions are always
allowed) and zero ontology references (authoring may precede the
ontology).  Split predicate slots repeat the binding element, one per
occurrence, in occurrence order.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Dict, List, Optional, Sequence, Tuple

from .authoring import instantiate
from .templates import TemplateSet, collapse_spaces

FILE_EXTENSION = ".cqd.xml"

_TS_RE = re.compile(r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(?:\.\d+)?(?:Z|[+-]\d{2}:\d{2})$")


class StorageError(ValueError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{message}{' at ' + path if path else ''}")


@dataclass(frozen=True)
class Instantiation:
    template_id: int
    variant: Optional[str]
    bindings: tuple  # ((slot, (part, ...)), ...)

    @property
    def ref(self) -> str:
        return f"{self.template_id}{self.variant or ''}"

    def bindings_dict(self) -> Dict[str, list]:
        return {slot: list(parts) for slot, parts in self.bindings}


@dataclass(frozen=True)
class CompetencyQuestion:
    text: str
    instantiations: tuple = ()
    ontologies: tuple = ()
    created: Optional[str] = None   # ISO-8601 UTC
    modified: Optional[str] = None

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("question text must be non-empty")
        for ts in (self.created, self.modified):
            if ts is not None and not _TS_RE.match(ts):
                raise ValueError(f"timestamp not ISO-8601: {ts!r}")


@dataclass
class CQDocument:
    title: str
    questions: List[CompetencyQuestion] = field(default_factory=list)
    template_set_name: str = "CLaRO"
    template_set_version: str = "1.0"

    def __post_init__(self):
        if not self.title.strip():
            raise ValueError("document title must be non-empty")


def now_timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def validate_document(doc: CQDocument, templates: Optional[TemplateSet] = None) -> List[str]:
    """Cross-check stored instantiations: filling the template with the
    stored bindings must reproduce the stored question text; unknown
    template references are reported as warnings."""
    problems = []
    for i, q in enumerate(doc.questions):
        for inst in q.instantiations:
            if templates is None:
                continue
            t = templates.get(inst.template_id, inst.variant)
            if t is None:
                problems.append(f"question {i}: unknown template {inst.ref}")
                continue
            try:
                produced = instantiate(t, {s: list(p) if len(p) > 1 else p[0]
                                           for s, p in inst.bindings})
            except ValueError as e:
                problems.append(f"question {i}: {e}")
                continue
            if collapse_spaces(produced) != collapse_spaces(q.text):
                problems.append(
                    f"question {i}: bindings produce {produced!r}, text is {q.text!r}")
    return problems


def save_document(doc: CQDocument) -> str:
    """Serialize to the document XML; element order is deterministic."""
    root = ET.Element("cqDocument", {
        "title": doc.title,
        "templateSetName": doc.template_set_name,
        "templateSetVersion": doc.template_set_version,
    })
    for q in doc.questions:
        attrs = {"text": q.text}
        if q.created:
            attrs["created"] = q.created
        if q.modified:
            attrs["modified"] = q.modified
        cq_el = ET.SubElement(root, "cq", attrs)
        for inst in q.instantiations:
            inst_attrs = {"templateId": str(inst.template_id)}
            if inst.variant:
                inst_attrs["variant"] = inst.variant
            inst_el = ET.SubElement(cq_el, "instantiation", inst_attrs)
            for slot, parts in inst.bindings:
                for part in parts:
                    b = ET.SubElement(inst_el, "binding", {"slot": slot})
                    b.text = part
        for ref in q.ontologies:
            ET.SubElement(cq_el, "forOntology", {"ref": ref})
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def load_document(xml_text: str) -> Tuple[CQDocument, List[str]]:
    """Parse document XML; returns (document, warnings).

    Schema violations raise StorageError with the element path; unknown
    template references surface later through validate_document.
    """
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as e:
        raise StorageError(f"malformed XML: {e}")
    if root.tag != "cqDocument":
        raise StorageError(f"unexpected root element {root.tag!r}", "/")
    title = root.get("title")
    if title is None or not title.strip():
        raise StorageError("missing title attribute", "/cqDocument")
    doc = CQDocument(
        title=title,
        template_set_name=root.get("templateSetName", "CLaRO"),
        template_set_version=root.get("templateSetVersion", "1.0"),
    )
    warnings: List[str] = []
    for n, cq_el in enumerate(root):
        path = f"/cqDocument/cq[{n + 1}]"
        if cq_el.tag != "cq":
            raise StorageError(f"unexpected element {cq_el.tag!r}", path)
        text = cq_el.get("text")
        if text is None:
            raise StorageError("missing text attribute", path)
        instantiations = []
        ontologies = []
        for child in cq_el:
            if child.tag == "instantiation":
                tid = child.get("templateId")
                if tid is None or not tid.isdigit():
                    raise StorageError("missing or non-numeric templateId",
                                       path + "/instantiation")
                bindings: List[Tuple[str, List[str]]] = []
                for b in child:
                    if b.tag != "binding":
                        raise StorageError(f"unexpected element {b.tag!r}",
                                           path + "/instantiation")
                    slot = b.get("slot")
                    if not slot or not re.fullmatch(r"(EC|PC)\d+", slot):
                        raise StorageError(f"bad slot attribute {slot!r}",
                                           path + "/instantiation/binding")
                    part = b.text or ""
                    if bindings and bindings[-1][0] == slot:
                        bindings[-1][1].append(part)
                    else:
                        bindings.append((slot, [part]))
                instantiations.append(Instantiation(
                    int(tid), child.get("variant"),
                    tuple((s, tuple(p)) for s, p in bindings)))
            elif child.tag == "forOntology":
                ref = child.get("ref")
                if not ref:
                    raise StorageError("missing ref attribute", path + "/forOntology")
                ontologies.append(ref)
            else:
                raise StorageError(f"unexpected element {child.tag!r}", path)
        try:
            doc.questions.append(CompetencyQuestion(
                text=text,
                instantiations=tuple(instantiations),
                ontologies=tuple(ontologies),
                created=cq_el.get("created"),
                modified=cq_el.get("modified"),
            ))
        except ValueError as e:
            raise StorageError(str(e), path)
    return doc, warnings


def load_document_checked(xml_text: str, templates: Optional[TemplateSet] = None
                          ) -> Tuple[CQDocument, List[str]]:
    doc, warnings = load_document(xml_text)
    if templates is not None:
        for i, q in enumerate(doc.questions):
            for inst in q.instantiations:
                if templates.get(inst.template_id, inst.variant) is None:
                    warnings.append(
                        f"question {i}: unresolved template reference {inst.ref}")
    return doc, warnings
