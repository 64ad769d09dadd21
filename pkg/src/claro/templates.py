"""Core domain model for CQ templates and template sets.

A template is an ordered sequence of literal text segments and numbered
slots.  Slots come in two kinds: entity chunks (EC), which hold noun
phrases, and predicate chunks (PC), which hold verb groups and may be
split over several occurrences of the same index ("does ... eat").
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

MAX_EC_VARS = 4
MAX_PC_VARS = 2
MAX_TOTAL_VARS = 5
MAX_SLOT_OCCURRENCES = 6
MAX_PC_PARTS = 3


class SlotKind(enum.Enum):
    EC = "EC"
    PC = "PC"


class Provenance(enum.Enum):
    DATASET_DERIVED = "dataset-derived"
    NEGATION_EXTENSION = "negation-extension"
    POST_EVALUATION = "post-evaluation"


_SLOT_MARKER = re.compile(r"\[(EC|PC)\d+\]")


@dataclass(frozen=True)
class Text:
    content: str

    def __post_init__(self):
        if not self.content:
            raise ValueError("text segment must be non-empty")
        if _SLOT_MARKER.search(self.content):
            raise ValueError("text segment contains a slot marker: %r" % self.content)


@dataclass(frozen=True)
class Slot:
    kind: SlotKind
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("slot index must be >= 1")

    @property
    def name(self) -> str:
        return f"{self.kind.value}{self.index}"


Segment = Union[Text, Slot]


@dataclass(frozen=True)
class Violation:
    message: str
    position: Optional[int] = None  # segment index, when attributable

    def __str__(self):
        if self.position is None:
            return self.message
        return f"{self.message} (segment {self.position})"


@dataclass(frozen=True)
class Template:
    id: int
    variant: Optional[str]
    segments: tuple
    provenance: Provenance = Provenance.DATASET_DERIVED

    def __post_init__(self):
        if self.id < 1:
            raise ValueError("template id must be a positive integer")
        if self.variant is not None and not re.fullmatch(r"[a-z]", self.variant):
            raise ValueError("variant must be a single lowercase letter")
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def ref(self) -> str:
        return f"{self.id}{self.variant or ''}"

    def slots(self) -> list:
        return [s for s in self.segments if isinstance(s, Slot)]

    def slot_names(self) -> list:
        """Distinct slot names in order of first appearance."""
        seen = []
        for s in self.slots():
            if s.name not in seen:
                seen.append(s.name)
        return seen

    def occurrences(self, slot: Slot) -> int:
        return sum(1 for s in self.slots() if s == slot)

    def pattern(self) -> str:
        """Render as a bare pattern string, e.g. 'Which EC1 PC1 EC2?'."""
        return _join_pattern(self.segments)


def _join_pattern(segments: Sequence[Segment]) -> str:
    out = []
    for seg in segments:
        if isinstance(seg, Slot):
            out.append(seg.name)
        else:
            out.append(seg.content)
    return collapse_spaces("".join(out))


def collapse_spaces(s: str) -> str:
    return re.sub(r"\s+", " ", s).strip()


def validate_template(t: Template) -> list:
    """Check every structural invariant; returns a list of violations (empty = ok).

    Violations are data, not exceptions: callers decide what to do with them.
    """
    violations = []
    segs = t.segments
    if not segs:
        return [Violation("template has no segments")]

    last = segs[-1]
    if not isinstance(last, Text) or not last.content.rstrip().endswith("?"):
        violations.append(Violation("missing terminal question mark", len(segs) - 1))

    ec_first_seen: list = []
    pc_first_seen: list = []
    ec_counts: dict = {}
    pc_counts: dict = {}
    total_occurrences = 0
    for i, seg in enumerate(segs):
        if isinstance(seg, Text):
            continue
        total_occurrences += 1
        if seg.kind is SlotKind.EC:
            if seg.index not in ec_first_seen:
                ec_first_seen.append(seg.index)
            ec_counts[seg.index] = ec_counts.get(seg.index, 0) + 1
        else:
            if seg.index not in pc_first_seen:
                pc_first_seen.append(seg.index)
            pc_counts[seg.index] = pc_counts.get(seg.index, 0) + 1

    if not ec_first_seen:
        violations.append(Violation("template has no EC slot"))
    if len(ec_first_seen) > MAX_EC_VARS:
        violations.append(Violation("more than %d EC variables" % MAX_EC_VARS))
    if len(pc_first_seen) > MAX_PC_VARS:
        violations.append(Violation("more than %d PC variables" % MAX_PC_VARS))
    if len(ec_first_seen) + len(pc_first_seen) > MAX_TOTAL_VARS:
        violations.append(Violation("more than %d variables overall" % MAX_TOTAL_VARS))
    if total_occurrences > MAX_SLOT_OCCURRENCES:
        violations.append(Violation("more than %d slot occurrences" % MAX_SLOT_OCCURRENCES))
    for idx, n in pc_counts.items():
        if n > MAX_PC_PARTS:
            violations.append(Violation("PC%d split into more than %d parts" % (idx, MAX_PC_PARTS)))

    # Indices of each kind must be dense (1..n) and numbered by first appearance.
    for kind, first_seen in ((SlotKind.EC, ec_first_seen), (SlotKind.PC, pc_first_seen)):
        if first_seen != list(range(1, len(first_seen) + 1)):
            violations.append(Violation(
                "%s indices not dense/ordered by first appearance: %s"
                % (kind.value, first_seen)))

    return violations


@dataclass
class TemplateSet:
    name: str
    version: str
    templates: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.templates)

    def __len__(self):
        return len(self.templates)

    def get(self, id: int, variant: Optional[str] = None) -> Optional[Template]:
        for t in self.templates:
            if t.id == id and t.variant == variant:
                return t
        return None

    def by_ref(self, ref: str) -> Optional[Template]:
        m = re.fullmatch(r"(\d+)([a-z]?)", ref)
        if not m:
            return None
        return self.get(int(m.group(1)), m.group(2) or None)

    def base_templates(self) -> list:
        return [t for t in self.templates if t.variant is None]

    def variant_templates(self) -> list:
        return [t for t in self.templates if t.variant is not None]


def validate_set(s: TemplateSet) -> list:
    """Validate a whole set: member templates, id uniqueness, variant linkage."""
    violations = []
    seen = set()
    base_ids = {t.id for t in s.base_templates()}
    for t in s.templates:
        key = (t.id, t.variant)
        if key in seen:
            violations.append(Violation("duplicate id (%d, %s)" % (t.id, t.variant or "none")))
        seen.add(key)
        for v in validate_template(t):
            violations.append(Violation("template %s: %s" % (t.ref, v)))
    for t in s.variant_templates():
        if t.id not in base_ids:
            violations.append(Violation("orphan variant %s" % t.ref))
    return violations


@dataclass(frozen=True)
class StructuralStats:
    max_ec_vars: int
    max_pc_vars: int
    max_total_vars: int
    max_slot_occurrences: int
    max_pc_parts: int
    templates_with_ec: int
    base_count: int
    variant_count: int


def structural_stats(s: TemplateSet) -> StructuralStats:
    """Exact maxima of the slot-structure measures over a set."""
    max_ec = max_pc = max_total = max_occ = max_parts = with_ec = 0
    for t in s.templates:
        ecs = {sl.index for sl in t.slots() if sl.kind is SlotKind.EC}
        pcs = {sl.index for sl in t.slots() if sl.kind is SlotKind.PC}
        occ = len(t.slots())
        parts = max((t.occurrences(Slot(SlotKind.PC, i)) for i in pcs), default=0)
        max_ec = max(max_ec, len(ecs))
        max_pc = max(max_pc, len(pcs))
        max_total = max(max_total, len(ecs) + len(pcs))
        max_occ = max(max_occ, occ)
        max_parts = max(max_parts, parts)
        if ecs:
            with_ec += 1
    return StructuralStats(
        max_ec_vars=max_ec,
        max_pc_vars=max_pc,
        max_total_vars=max_total,
        max_slot_occurrences=max_occ,
        max_pc_parts=max_parts,
        templates_with_ec=with_ec,
        base_count=len(s.base_templates()),
        variant_count=len(s.variant_templates()),
    )


def segments_from_pairs(pairs: Iterable) -> tuple:
    """Build a segment tuple from ('text', str) / ('EC'|'PC', int) pairs; test helper."""
    segs = []
    for kind, value in pairs:
        if kind == "text":
            segs.append(Text(value))
        else:
            segs.append(Slot(SlotKind[kind], value))
    return tuple(segs)
