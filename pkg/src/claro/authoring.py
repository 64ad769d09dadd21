"""Authoring assistance: user-friendly rendering, autocomplete, instantiation, linting."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

from .templates import Slot, SlotKind, Template, TemplateSet, Text, collapse_spaces


class SuggestMode(enum.Enum):
    STARTS_WITH = "starts_with"
    CONTAINS = "contains"


@dataclass(frozen=True)
class Suggestion:
    template_id: int
    variant: Optional[str]
    display: str
    hit: str  # "starts-with" or "contains"

    @property
    def ref(self) -> str:
        return f"{self.template_id}{self.variant or ''}"


def render_user_friendly(t: Template) -> str:
    """Replace every EC slot with '[noun phrase]' and every PC slot with '[verb phrase]'."""
    out = []
    for seg in t.segments:
        if isinstance(seg, Slot):
            out.append("[noun phrase]" if seg.kind is SlotKind.EC else "[verb phrase]")
        else:
            out.append(seg.content)
    return "".join(out)


def suggest(user_input: str, mode: SuggestMode, templates: TemplateSet) -> List[Suggestion]:
    """Autocomplete against the user-friendly template forms.

    starts_with returns prefix hits only; contains returns prefix hits first,
    then the remaining substring hits.  Comparison is case-insensitive and
    an empty input matches everything.  Ties order by (id, variant).
    """
    needle = user_input.lower()
    prefix_hits, substring_hits = [], []
    for t in sorted(templates, key=lambda t: (t.id, t.variant or "")):
        display = render_user_friendly(t)
        hay = display.lower()
        if hay.startswith(needle):
            prefix_hits.append(Suggestion(t.id, t.variant, display, "starts-with"))
        elif needle and needle in hay:
            substring_hits.append(Suggestion(t.id, t.variant, display, "contains"))
    if mode is SuggestMode.STARTS_WITH:
        return prefix_hits
    return prefix_hits + substring_hits


class BindingError(ValueError):
    pass


def instantiate(t: Template, bindings: Dict[str, Union[str, Sequence[str]]]) -> str:
    """Fill a template's slots with phrases to produce a CQ text.

    Keys are slot names ("EC1", "PC1").  A PC slot that occurs more than
    once takes a sequence of per-occurrence parts.
    """
    expected = {name: 0 for name in t.slot_names()}
    for seg in t.segments:
        if isinstance(seg, Slot):
            expected[seg.name] += 1
    for name in expected:
        if name not in bindings:
            raise BindingError(f"unbound slot {name}")
    for name in bindings:
        if name not in expected:
            raise BindingError(f"unknown slot {name}")

    queues: Dict[str, List[str]] = {}
    for name, occurrences in expected.items():
        value = bindings[name]
        if isinstance(value, str):
            parts = [value]
        else:
            parts = list(value)
        if occurrences > 1 and len(parts) == 1:
            if name.startswith("EC"):
                parts = parts * occurrences  # a repeated entity slot re-uses its phrase
            else:
                raise BindingError(
                    f"slot {name} occurs {occurrences} times; provide one part per occurrence")
        if len(parts) != occurrences:
            raise BindingError(
                f"slot {name}: {len(parts)} part(s) given for {occurrences} occurrence(s)")
        if any(not p.strip() for p in parts):
            raise BindingError(f"slot {name}: empty phrase")
        queues[name] = parts

    out = []
    for seg in t.segments:
        if isinstance(seg, Slot):
            out.append(queues[seg.name].pop(0))
        else:
            out.append(seg.content)
    return collapse_spaces("".join(out))


# --- linting -----------------------------------------------------------------

class LintKind(enum.Enum):
    IMPERATIVE = "imperative"
    NON_QUESTION = "non-question"
    EXPLAINER_QUESTION = "explainer-question"
    PROCEDURAL_QUESTION = "procedural-question"
    MULTI_QUESTION = "multi-question"
    WHICH_WHAT_ADVICE = "which-what-advice"
    INSTANCE_LEVEL_SUSPECT = "instance-level-suspect"


@dataclass(frozen=True)
class LintFinding:
    kind: LintKind
    start: int
    end: int
    message: str
    rewrites: tuple = ()


IMPERATIVE_VERBS = {
    "find", "list", "give", "show", "enumerate", "identify", "describe",
    "name", "return", "retrieve", "display", "provide", "get",
}

WH_WORDS = {"what", "which", "who", "whom", "whose", "where", "when", "why", "how"}

_AUX_STARTERS = {
    "is", "are", "was", "were", "do", "does", "did", "can", "could", "will",
    "would", "shall", "should", "may", "might", "must", "have", "has", "had",
    "at", "in", "on", "to", "given", "under",
}


def _first_word(text: str) -> str:
    m = re.match(r"\s*([A-Za-z']+)", text)
    return m.group(1).lower() if m else ""


def _imperative_rewrite(text: str) -> Optional[str]:
    # "Find all vegetarian pizzas." -> "Which pizzas are vegetarian pizzas?"
    m = re.match(r"\s*(?:find|list|show|give|retrieve|return)\s+(?:me\s+)?(?:all\s+)?(.+?)[.!]?\s*$",
                 text, re.I)
    if not m:
        return None
    np = m.group(1).strip()
    words = np.split()
    head = None
    for w in reversed(words):
        if re.fullmatch(r"[A-Za-z-]+s", w):
            head = w
            break
    if head is None:
        head = words[-1] if words else "things"
    return f"Which {head} are {np}?"


def _split_multi_question(text: str) -> List[str]:
    """Split a chained question at top-level ',' / 'and' joins of wh-clauses."""
    body = text.rstrip()
    body = body[:-1] if body.endswith("?") else body
    pieces = re.split(r",\s*|\s+and\s+(?=(?:%s)\b)" % "|".join(WH_WORDS), body, flags=re.I)
    clauses = []
    for p in pieces:
        p = p.strip()
        if not p:
            continue
        if clauses and _first_word(p) not in WH_WORDS:
            clauses[-1] += ", " + p
        else:
            clauses.append(p)
    return clauses


def lint(text: str) -> List[LintFinding]:
    """Advisory findings on a candidate CQ; never rejects."""
    findings: List[LintFinding] = []
    stripped = text.strip()
    if not stripped:
        return findings
    n = len(text)
    first = _first_word(stripped)

    if not stripped.endswith("?"):
        if first in IMPERATIVE_VERBS:
            rewrite = _imperative_rewrite(stripped)
            findings.append(LintFinding(
                LintKind.IMPERATIVE, 0, n,
                "imperative sentence; phrase it as a question",
                (rewrite,) if rewrite else ()))
        else:
            findings.append(LintFinding(
                LintKind.NON_QUESTION, 0, n,
                "does not end with a question mark"))
    elif first in IMPERATIVE_VERBS:
        findings.append(LintFinding(
            LintKind.IMPERATIVE, 0, n,
            "starts with an imperative verb; phrase it as a question"))

    if first == "why":
        findings.append(LintFinding(
            LintKind.EXPLAINER_QUESTION, 0, n,
            "explainer question; ontologies hold declarative knowledge"))
    if re.match(r"\s*how\s+to\b", stripped, re.I):
        findings.append(LintFinding(
            LintKind.PROCEDURAL_QUESTION, 0, n,
            "asks for procedural information"))

    clauses = _split_multi_question(stripped)
    wh_clauses = [c for c in clauses if _first_word(c) in WH_WORDS]
    if len(wh_clauses) >= 2:
        rewrites = tuple(c[0].upper() + c[1:] + "?" for c in wh_clauses)
        findings.append(LintFinding(
            LintKind.MULTI_QUESTION, 0, n,
            f"chains {len(wh_clauses)} questions; split them",
            rewrites))

    if re.match(r"\s*which\s+are\b", stripped, re.I):
        findings.append(LintFinding(
            LintKind.WHICH_WHAT_ADVICE, 0, n,
            "open-ended request: 'What are ...' may be the better form",
            ()))

    # A capitalized non-initial subject right after the opener hints at an
    # instance-level (ABox) question.
    if stripped.endswith("?") and first in (WH_WORDS | _AUX_STARTERS):
        rest = stripped[len(first):].lstrip(" \t")
        m = re.match(r"((?:[A-Z][a-zA-Z'-]*(?:\s+|$))+)", rest)
        if m:
            subject = m.group(1).strip()
            words = subject.split()
            if words and all(w[0].isupper() for w in words) and subject != "I":
                start = text.find(subject)
                findings.append(LintFinding(
                    LintKind.INSTANCE_LEVEL_SUSPECT, start, start + len(subject),
                    f"'{subject}' looks like a named individual; CQs target the type level"))

    return findings
