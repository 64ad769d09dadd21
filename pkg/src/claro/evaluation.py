"""Coverage evaluation of template sets over CQ corpora, pattern mining,
and validity classification.

Fixture format (one record per question)::

    [swo08]
    text: What software can perform [task x]?
    validity: valid
    dematerialized: true
    gold: What (software)[EC1] (can perform)[PC1] ([task x])[EC2]?
    template: 53
    rewording: ...                (optional)
    rewording-gold: ...           (optional, repeatable)

``gold`` lines are repeatable: they are alternative chunkings of the same
question, tried in order.  ``template`` is the reference answer used by
the data tests, not an input to matching.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .authoring import LintKind, lint
from .chunking import ChunkedCQ, ChunkerConfig, DEFAULT_CONFIG, chunk, parse_gold_chunking
from .dsl import load_data_file, parse_template_file
from .matching import MatchResult, match
from .templates import Slot, SlotKind, Template, TemplateSet

SET_A = "set_a.txt"
SET_B = "set_b.txt"
SET_C = "set_c.txt"
CORPUS = "corpus_234.txt"
PATTERNS = "claro_patterns.txt"
REN_TEMPLATES = "ren_templates.txt"
BEZERRA_TEMPLATES = "bezerra_templates.txt"


class Validity(enum.Enum):
    VALID = "valid"
    IMPERATIVE = "imperative"
    ABOX_QUERY = "abox-query"
    EXPLAINER = "explainer"
    PROCEDURAL = "procedural"
    UNANSWERABLE = "unanswerable"
    MODELLING_DISCUSSION = "modelling-discussion"
    MULTI_QUESTION = "multi-question"


@dataclass
class EvaluationCQ:
    id: str
    text: str
    validity: Validity = Validity.VALID
    gold_chunkings: List[ChunkedCQ] = field(default_factory=list)
    gold_template: Optional[str] = None
    rewording: Optional[str] = None
    rewording_chunkings: List[ChunkedCQ] = field(default_factory=list)
    dematerialized: bool = False

    @property
    def valid(self) -> bool:
        return self.validity is Validity.VALID


class FixtureError(ValueError):
    pass


def parse_fixture(contents: str) -> List[EvaluationCQ]:
    records: List[EvaluationCQ] = []
    current: Optional[EvaluationCQ] = None
    for line_no, raw in enumerate(contents.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = re.fullmatch(r"\[([^\]]+)\]", line)
        if m:
            current = EvaluationCQ(id=m.group(1), text="")
            records.append(current)
            continue
        if current is None:
            raise FixtureError(f"line {line_no}: field outside a [record]")
        if ":" not in line:
            raise FixtureError(f"line {line_no}: expected 'field: value'")
        key, value = line.split(":", 1)
        key, value = key.strip(), value.strip()
        if key == "text":
            current.text = value
        elif key == "validity":
            current.validity = Validity(value)
        elif key == "gold":
            current.gold_chunkings.append(parse_gold_chunking(value))
        elif key == "template":
            current.gold_template = value
        elif key == "rewording":
            current.rewording = value
        elif key == "rewording-gold":
            current.rewording_chunkings.append(parse_gold_chunking(value))
        elif key == "dematerialized":
            current.dematerialized = value.lower() in ("true", "yes", "1")
        else:
            raise FixtureError(f"line {line_no}: unknown field {key!r}")
    for r in records:
        if not r.text:
            raise FixtureError(f"record {r.id}: missing text")
        if not r.valid and r.gold_template:
            raise FixtureError(f"record {r.id}: invalid CQ cannot have a gold template")
    return records


def load_fixture(filename: str) -> List[EvaluationCQ]:
    return parse_fixture(load_data_file(filename))


class Outcome(enum.Enum):
    EXACT = "exact"
    NORMALIZED = "normalized"
    REWORDED = "reworded-match"
    NO_MATCH = "no-match"
    INVALID = "invalid"


@dataclass
class CQResult:
    id: str
    outcome: Outcome
    template_ref: Optional[str] = None


@dataclass
class CoverageReport:
    set_name: str
    template_set: str
    total: int
    valid: int
    matched: int
    results: List[CQResult] = field(default_factory=list)

    @property
    def percent(self) -> float:
        if self.valid == 0:
            return 0.0
        return round(100.0 * self.matched / self.valid, 1)

    @property
    def percent_int(self) -> int:
        return int(self.percent + 0.5)  # half-up, matching reported figures


def _first_match(chunkings: Sequence[ChunkedCQ], templates: TemplateSet,
                 allow_normalized: bool) -> Optional[MatchResult]:
    for c in chunkings:
        hits = match(c, templates, allow_normalized=allow_normalized)
        if hits:
            return hits[0]
    return None


def evaluate(corpus: Sequence[EvaluationCQ], templates: TemplateSet,
             use_gold: bool = True, allow_rewording: bool = True,
             allow_normalized: bool = False,
             config: ChunkerConfig = DEFAULT_CONFIG,
             set_name: str = "corpus") -> CoverageReport:
    """Score a template set over a CQ corpus.

    Invalid questions never enter the denominator.  A valid question
    counts as matched when one of its chunkings equals a template exactly;
    when enabled, a normalized or reworded match counts too, and is
    labelled as such.
    """
    if not corpus:
        raise ValueError("empty corpus")
    results: List[CQResult] = []
    matched = 0
    for cq in corpus:
        if not cq.valid:
            results.append(CQResult(cq.id, Outcome.INVALID))
            continue
        chunkings = list(cq.gold_chunkings) if use_gold else chunk(cq.text, config)
        hit = _first_match(chunkings, templates, allow_normalized=False)
        outcome = Outcome.EXACT
        if hit is None and allow_normalized:
            hit = _first_match(chunkings, templates, allow_normalized=True)
            outcome = Outcome.NORMALIZED
        if hit is None and allow_rewording and cq.rewording:
            rew = list(cq.rewording_chunkings) if use_gold else chunk(cq.rewording, config)
            hit = _first_match(rew, templates, allow_normalized=False)
            outcome = Outcome.REWORDED
            if hit is None and allow_normalized:
                hit = _first_match(rew, templates, allow_normalized=True)
        if hit is None:
            results.append(CQResult(cq.id, Outcome.NO_MATCH))
        else:
            matched += 1
            results.append(CQResult(cq.id, outcome, hit.ref))
    valid = sum(1 for cq in corpus if cq.valid)
    return CoverageReport(set_name, templates.name, len(corpus), valid, matched, results)


# --- comparison template sets --------------------------------------------------

SLOT_ALIASES = {
    "CE": SlotKind.EC,   # class expression
    "NM": SlotKind.EC,   # numeric modifier
    "QM": SlotKind.EC,   # quantity modifier
    "OPE": SlotKind.PC,  # object property expression
    "OP": SlotKind.PC,
    "DP": SlotKind.PC,   # datatype property
}


@dataclass
class ComparisonTemplateSet:
    name: str
    templates: TemplateSet
    published_count: int
    corrected_refs: Tuple[str, ...] = ()
    non_question_refs: Tuple[str, ...] = ()


_ALIAS_MARKER = re.compile(r"\[(%s)(\d+)\]" % "|".join(SLOT_ALIASES))


def _alias_line(line: str) -> str:
    return _ALIAS_MARKER.sub(
        lambda m: "[%s%s]" % (SLOT_ALIASES[m.group(1)].value, m.group(2)), line)


def load_comparison_file(contents: str, name: str) -> ComparisonTemplateSet:
    """Load a competitor template file, mapping its slot names onto EC/PC.

    Directives: ``#! corrected: <ref> ...`` flags grammar-fixed variant
    entries; ``#! non-question: <ref> ...`` flags entries that are not
    questions (kept as data, never matched; a terminal '?' is appended
    for the parser's benefit).
    """
    corrected: List[str] = []
    non_question: List[str] = []
    lines: List[str] = []
    for raw in contents.splitlines():
        s = raw.strip()
        m = re.match(r"^#!\s*(corrected|non-question):\s*(.*)$", s)
        if m:
            refs = m.group(2).split()
            if m.group(1) == "corrected":
                corrected.extend(refs)
            else:
                non_question.extend(refs)
            continue
        if not s or s.startswith("#"):
            lines.append(raw)
            continue
        aliased = _alias_line(raw)
        ref = re.match(r"^(\d+[a-z]?)\.", s)
        if ref and ref.group(1) in non_question and not aliased.rstrip().endswith("?"):
            aliased = aliased.rstrip().rstrip(".") + "?"
        lines.append(aliased)
    ts = parse_template_file("\n".join(lines), name=name)
    published = [t for t in ts if t.ref not in corrected]
    return ComparisonTemplateSet(
        name=name,
        templates=ts,
        published_count=len(published),
        corrected_refs=tuple(corrected),
        non_question_refs=tuple(non_question),
    )


def load_claro_comparison() -> ComparisonTemplateSet:
    from .dsl import load_shipped_templates
    ts = load_shipped_templates()
    return ComparisonTemplateSet("claro", ts, published_count=len(ts))


def load_ren_comparison() -> ComparisonTemplateSet:
    return load_comparison_file(load_data_file(REN_TEMPLATES), "ren")


def load_bezerra_comparison() -> ComparisonTemplateSet:
    return load_comparison_file(load_data_file(BEZERRA_TEMPLATES), "bezerra")


def _matchable(cs: ComparisonTemplateSet) -> TemplateSet:
    usable = [t for t in cs.templates if t.ref not in cs.non_question_refs]
    return TemplateSet(cs.name, cs.templates.version, usable)


@dataclass
class ComparisonTable:
    set_names: Tuple[str, ...]
    rows: Dict[str, List[CoverageReport]]  # template-set name -> per-corpus reports

    def matches(self, template_set: str) -> List[int]:
        reports = self.rows[template_set]
        return [r.matched for r in reports] + [sum(r.matched for r in reports)]

    def percents(self, template_set: str) -> List[int]:
        reports = self.rows[template_set]
        combined_valid = sum(r.valid for r in reports)
        combined_matched = sum(r.matched for r in reports)
        pct = [r.percent_int for r in reports]
        pct.append(int(100.0 * combined_matched / combined_valid + 0.5))
        return pct


def compare(corpora: Dict[str, Sequence[EvaluationCQ]],
            template_sets: Sequence[ComparisonTemplateSet]) -> ComparisonTable:
    """Coverage grid over the named corpora; the claro row must dominate."""
    for name, corpus in corpora.items():
        if not corpus:
            raise ValueError(f"missing fixture: {name}")
    rows: Dict[str, List[CoverageReport]] = {}
    for cs in template_sets:
        usable = _matchable(cs)
        rows[cs.name] = [
            evaluate(corpus, usable, use_gold=True, allow_rewording=True, set_name=name)
            for name, corpus in corpora.items()
        ]
    table = ComparisonTable(tuple(corpora.keys()), rows)
    if "claro" in rows:
        claro = table.matches("claro")
        for other, reports in rows.items():
            if other == "claro":
                continue
            theirs = table.matches(other)
            for i, (a, b) in enumerate(zip(claro, theirs)):
                if a < b:
                    raise AssertionError(
                        f"coverage dominance violated in column {i}: "
                        f"claro={a} < {other}={b}")
    return table


# --- pattern mining --------------------------------------------------------------

def mine_patterns(corpus: Iterable[Tuple[ChunkedCQ, bool]]) -> List[str]:
    """Keep a pattern when it occurs at least twice, or once with a
    placeholder (dematerialized) question; order of first occurrence."""
    order: List[str] = []
    count: Dict[str, int] = {}
    demat: Dict[str, bool] = {}
    for chunking, dematerialized in corpus:
        p = chunking.pattern()
        if p not in count:
            order.append(p)
            count[p] = 0
            demat[p] = False
        count[p] += 1
        demat[p] = demat[p] or dematerialized
    return [p for p in order if count[p] >= 2 or demat[p]]


def mine_corpus(corpus: Sequence[EvaluationCQ]) -> List[str]:
    pairs = []
    for cq in corpus:
        if cq.gold_chunkings:
            pairs.append((cq.gold_chunkings[0], cq.dematerialized))
    return mine_patterns(pairs)


# --- validity suggestion ----------------------------------------------------------

_LINT_TO_VALIDITY = (
    (LintKind.IMPERATIVE, Validity.IMPERATIVE, 0.9),
    (LintKind.PROCEDURAL_QUESTION, Validity.PROCEDURAL, 0.9),
    (LintKind.EXPLAINER_QUESTION, Validity.EXPLAINER, 0.9),
    (LintKind.MULTI_QUESTION, Validity.MULTI_QUESTION, 0.7),
    (LintKind.INSTANCE_LEVEL_SUSPECT, Validity.ABOX_QUERY, 0.5),
)


def classify_validity(text: str) -> Tuple[Validity, float]:
    """Heuristic validity suggestion; fixtures carry the human labels."""
    findings = {f.kind for f in lint(text)}
    for lint_kind, validity, confidence in _LINT_TO_VALIDITY:
        if lint_kind in findings:
            return validity, confidence
    if LintKind.NON_QUESTION in findings:
        return Validity.MODELLING_DISCUSSION, 0.3
    return Validity.VALID, 0.6
