"""Parser and serializer for the plain-text template format.

One template per line, e.g.::

    1.Is there [EC1] for [EC2]?
    22a.Is [EC1] [EC2] or not?
    93.What is [EC1]?*

A trailing ``*`` marks a template added after the original evaluation.
Lines starting with ``#`` are comments; ``#!`` lines are directives, the
only one being ``#! negation-extension: <id> <id> ...`` which assigns that
provenance to the listed ids (the file syntax itself has no marker for it).
"""

from __future__ import annotations

import re
from importlib import resources
from typing import FrozenSet, Optional

from .templates import (
    Provenance,
    Slot,
    SlotKind,
    Template,
    TemplateSet,
    Text,
    validate_set,
)

SHIPPED_TEMPLATES = "claro_templates.txt"

_LINE_RE = re.compile(r"^(\d+)([a-z]?)\.(.*)$", re.S)
_MARKER_RE = re.compile(r"\[([A-Za-z]+?)(\d+)\]")


class TemplateParseError(ValueError):
    def __init__(self, message: str, line_no: Optional[int] = None, column: Optional[int] = None):
        self.line_no = line_no
        self.column = column
        where = ""
        if line_no is not None:
            where += f" at line {line_no}"
        if column is not None:
            where += f", column {column}"
        super().__init__(message + where)


def parse_template_line(raw: str, line_no: int = 1,
                        negation_ids: FrozenSet[int] = frozenset()) -> Template:
    """Parse one template line into a Template.

    ``negation_ids`` supplies the ids whose provenance is negation-extension;
    it comes from a file directive since the line syntax has no marker for it.
    """
    line = raw.rstrip("\n")
    if not line.strip():
        raise TemplateParseError("empty template line", line_no)
    m = _LINE_RE.match(line)
    if not m:
        raise TemplateParseError("missing id prefix (expected '<id><variant?>.')", line_no)
    tid = int(m.group(1))
    variant = m.group(2) or None
    body = m.group(3)

    provenance = Provenance.DATASET_DERIVED
    if body.endswith("*"):
        provenance = Provenance.POST_EVALUATION
        body = body[:-1]
    elif tid in negation_ids:
        provenance = Provenance.NEGATION_EXTENSION

    if not body.rstrip().endswith("?"):
        raise TemplateParseError("template does not end with '?'", line_no, len(line))

    segments = []
    pos = 0
    offset = len(m.group(1)) + len(m.group(2)) + 1  # for column reporting
    covered = []
    for marker in _MARKER_RE.finditer(body):
        tag, idx = marker.group(1), int(marker.group(2))
        if tag not in ("EC", "PC"):
            raise TemplateParseError(
                f"malformed slot marker [{tag}{idx}]", line_no, offset + marker.start() + 1)
        if idx < 1:
            raise TemplateParseError(
                "slot index must be >= 1", line_no, offset + marker.start() + 1)
        if marker.start() > pos:
            segments.append(Text(body[pos:marker.start()]))
        segments.append(Slot(SlotKind[tag], idx))
        covered.append((marker.start(), marker.end()))
        pos = marker.end()
    if pos < len(body):
        segments.append(Text(body[pos:]))
    for col, ch in enumerate(body):
        if ch == "[" and not any(lo <= col < hi for lo, hi in covered):
            raise TemplateParseError("malformed slot marker", line_no, offset + col + 1)

    return Template(id=tid, variant=variant, segments=tuple(segments), provenance=provenance)


def serialize_template(t: Template) -> str:
    """Inverse of parse_template_line; byte-exact for shipped lines."""
    out = [f"{t.id}{t.variant or ''}."]
    for seg in t.segments:
        if isinstance(seg, Slot):
            out.append(f"[{seg.name}]")
        else:
            out.append(seg.content)
    if t.provenance is Provenance.POST_EVALUATION:
        out.append("*")
    return "".join(out)


_DIRECTIVE_RE = re.compile(r"^#!\s*negation-extension:\s*(.*)$")


def parse_template_file(contents: str, name: str = "templates", version: str = "0") -> TemplateSet:
    """Parse a whole template file; any line error fails the load."""
    negation_ids = set()
    pending = []
    for line_no, raw in enumerate(contents.splitlines(), start=1):
        stripped = raw.strip()
        d = _DIRECTIVE_RE.match(stripped)
        if d:
            for token in d.group(1).replace(",", " ").split():
                if "-" in token:
                    lo, hi = token.split("-", 1)
                    negation_ids.update(range(int(lo), int(hi) + 1))
                else:
                    negation_ids.add(int(token))
            continue
        if not stripped or stripped.startswith("#"):
            continue
        pending.append((line_no, raw))

    templates = []
    seen = set()
    for line_no, raw in pending:
        t = parse_template_line(raw, line_no, frozenset(negation_ids))
        key = (t.id, t.variant)
        if key in seen:
            raise TemplateParseError(
                "duplicate id (%d, %s)" % (t.id, t.variant or "none"), line_no)
        seen.add(key)
        templates.append(t)

    ts = TemplateSet(name=name, version=version, templates=templates)
    problems = validate_set(ts)
    if problems:
        raise TemplateParseError(
            "template set does not validate: " + "; ".join(str(p) for p in problems[:5]))
    return ts


def load_data_file(filename: str) -> str:
    return resources.files("claro.data").joinpath(filename).read_text(encoding="utf-8")


def load_shipped_templates() -> TemplateSet:
    """Load the bundled CLaRO template set (93 base templates, 41 variants)."""
    return parse_template_file(load_data_file(SHIPPED_TEMPLATES), name="CLaRO", version="1.0")


def load_templates_from_path(path: str, name: str = "custom") -> TemplateSet:
    with open(path, encoding="utf-8") as fh:
        return parse_template_file(fh.read(), name=name)
