"""Pattern normalization, template matching, default-template derivation,
and template fragment detection.

Patterns are strings of literal words and bare slot tokens, e.g.
"Which EC1 PC1 I PC1 to PC2 EC2?".  Normalization rewrites literal text
only; slots are never renumbered, and the single structural rewrite is
the removal of a duplicated predicate part around a personal pronoun
("PC1 I PC1" -> "PC1").
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .chunking import Binding, ChunkedCQ, ChunkerConfig, DEFAULT_CONFIG, chunk
from .templates import (
    Provenance,
    Slot,
    SlotKind,
    Template,
    TemplateSet,
    Text,
    collapse_spaces,
)

_SLOT_TOKEN = re.compile(r"\b(EC|PC)(\d+)\b")


class RuleKind(enum.Enum):
    PLURAL_TO_SINGULAR = "plural-to-singular"
    DROP_PERSONAL_PRONOUN = "drop-personal-pronoun"
    DROP_REDUNDANT_WORD = "drop-redundant-word"
    SYNONYM_CANONICALIZE = "synonym-canonicalize"


@dataclass(frozen=True)
class NormalizationRule:
    kind: RuleKind
    payload: tuple = ()  # (find, replace) pairs for rewrites; words for drops

    def apply(self, pattern: str) -> str:
        p = pattern
        if self.kind is RuleKind.DROP_PERSONAL_PRONOUN:
            p = re.sub(r"\b(PC\d+) (?:I|we) \1\b", r"\1", p)
            p = re.sub(r"^Can (?:I|we) (?=PC\d+\b)", "", p)
        elif self.kind is RuleKind.DROP_REDUNDANT_WORD:
            for word in self.payload:
                p = re.sub(r"(?i)(?:(?<=\s)|^)%s(?=\s|\?|$)" % re.escape(word), "", p)
            p = collapse_spaces(p).replace(" ?", "?")
            p = _recapitalize(p)
        else:
            for find, replace in self.payload:
                if find[0].isupper() or find[0] == "W":
                    p = p.replace(find, replace)
                else:
                    p = re.sub(r"(?<![A-Za-z])%s(?![A-Za-z])" % re.escape(find), replace, p)
        return collapse_spaces(p).replace(" ?", "?")


def _recapitalize(p: str) -> str:
    m = re.match(r"^([a-z])(.*)$", p)
    if m:
        return m.group(1).upper() + m.group(2)
    return p


SYNONYM_RULE = NormalizationRule(RuleKind.SYNONYM_CANONICALIZE, (
    ("kinds of", "types of"),
    ("kind of", "type of"),
    ("categories", "types"),
    ("category", "type"),
    ("Where's", "Where is"),
))

PLURAL_RULE = NormalizationRule(RuleKind.PLURAL_TO_SINGULAR, (
    ("Are there", "Is there"),
    ("are", "is"),
    ("Are", "Is"),
    ("types", "type"),
))

PRONOUN_RULE = NormalizationRule(RuleKind.DROP_PERSONAL_PRONOUN)

REDUNDANT_RULE = NormalizationRule(RuleKind.DROP_REDUNDANT_WORD,
                                   ("any", "possible", "or not", "else"))

DEFAULT_RULES: Tuple[NormalizationRule, ...] = (
    SYNONYM_RULE, PLURAL_RULE, PRONOUN_RULE, REDUNDANT_RULE)


def well_formed_pattern(p: str) -> bool:
    """A pattern is alternating text/slot tokens ending in '?'."""
    if not p.strip().endswith("?"):
        return False
    for kind, idx in _SLOT_TOKEN.findall(p):
        if int(idx) < 1:
            return False
    return True


def normalize_pattern(p: str, rules: Sequence[NormalizationRule] = DEFAULT_RULES) -> str:
    """Apply the rewrite rules left-to-right, once each."""
    if not well_formed_pattern(p):
        raise ValueError("malformed pattern: %r" % p)
    out = collapse_spaces(p)
    for rule in rules:
        out = rule.apply(out)
    return out


def applied_rule_kinds(p: str, rules: Sequence[NormalizationRule] = DEFAULT_RULES) -> List[RuleKind]:
    """Which rule kinds actually change the pattern, in application order."""
    kinds = []
    out = collapse_spaces(p)
    for rule in rules:
        nxt = rule.apply(out)
        if nxt != out:
            kinds.append(rule.kind)
        out = nxt
    return kinds


def pattern_to_segments(p: str) -> tuple:
    """Parse a bare pattern string into template segments."""
    segments = []
    pos = 0
    for m in _SLOT_TOKEN.finditer(p):
        if m.start() > pos:
            segments.append(Text(p[pos:m.start()]))
        segments.append(Slot(SlotKind[m.group(1)], int(m.group(2))))
        pos = m.end()
    if pos < len(p):
        segments.append(Text(p[pos:]))
    return tuple(segments)


def _canonical(p: str) -> str:
    """Case-insensitive, whitespace-collapsed comparison form (slots untouched)."""
    out = []
    pos = 0
    for m in _SLOT_TOKEN.finditer(p):
        out.append(p[pos:m.start()].lower())
        out.append(m.group(0))
        pos = m.end()
    out.append(p[pos:].lower())
    return collapse_spaces("".join(out))


class Exactness(enum.Enum):
    EXACT = "exact"
    NORMALIZED = "normalized"


@dataclass(frozen=True)
class MatchResult:
    template_id: int
    variant: Optional[str]
    bindings: tuple  # ((slot name, (part, ...)), ...) in slot order
    applied_rules: tuple
    exactness: Exactness

    @property
    def ref(self) -> str:
        return f"{self.template_id}{self.variant or ''}"

    def bindings_dict(self) -> Dict[str, list]:
        return {name: list(parts) for name, parts in self.bindings}


def _bindings_of(c: ChunkedCQ) -> tuple:
    order: List[str] = []
    acc: Dict[str, list] = {}
    for piece in c.pieces:
        if isinstance(piece, Binding):
            if piece.name not in acc:
                order.append(piece.name)
                acc[piece.name] = []
            acc[piece.name].append(piece.phrase)
    return tuple((name, tuple(acc[name])) for name in order)


def match(c: ChunkedCQ, templates: TemplateSet, allow_normalized: bool = True,
          rules: Sequence[NormalizationRule] = DEFAULT_RULES) -> List[MatchResult]:
    """Match one chunking against a template set.

    Exact hits come first (pattern equality, case-insensitive on text,
    whitespace collapsed); normalized hits follow when enabled, annotated
    with the rule kinds that fired on either side.
    """
    cq_pattern = c.pattern()
    cq_canon = _canonical(cq_pattern)
    results: List[MatchResult] = []
    seen = set()
    ordered = sorted(templates, key=lambda t: (t.id, t.variant or ""))

    for t in ordered:
        if _canonical(t.pattern()) == cq_canon:
            results.append(MatchResult(t.id, t.variant, _bindings_of(c), (), Exactness.EXACT))
            seen.add((t.id, t.variant))

    if allow_normalized:
        cq_norm = _canonical(normalize_pattern(cq_pattern, rules))
        cq_kinds = applied_rule_kinds(cq_pattern, rules)
        for t in ordered:
            if (t.id, t.variant) in seen:
                continue
            t_pattern = t.pattern()
            if _canonical(normalize_pattern(t_pattern, rules)) == cq_norm:
                kinds = list(cq_kinds)
                for k in applied_rule_kinds(t_pattern, rules):
                    if k not in kinds:
                        kinds.append(k)
                results.append(MatchResult(
                    t.id, t.variant, _bindings_of(c), tuple(k.value for k in kinds),
                    Exactness.NORMALIZED))
    return results


def match_text(text: str, templates: TemplateSet,
               config: ChunkerConfig = DEFAULT_CONFIG,
               allow_normalized: bool = True) -> List[MatchResult]:
    """Chunk free text and match every candidate; union, deduplicated."""
    results: List[MatchResult] = []
    seen = set()
    for candidate in chunk(text, config):
        for r in match(candidate, templates, allow_normalized):
            key = (r.template_id, r.variant, r.bindings)
            if key not in seen:
                seen.add(key)
                results.append(r)
    return results


# --- default-template derivation ------------------------------------------------

# Rewrites applied unconditionally when deriving defaults from raw patterns.
DERIVE_UNCONDITIONAL: Tuple[NormalizationRule, ...] = (
    NormalizationRule(RuleKind.SYNONYM_CANONICALIZE, (("Where's", "Where is"),)),
    NormalizationRule(RuleKind.PLURAL_TO_SINGULAR, (("Are there any", "Is there"),
                                                    ("Are there", "Is there"))),
    PRONOUN_RULE,
    NormalizationRule(RuleKind.DROP_REDUNDANT_WORD,
                      ("any", "possible", "or not", "else",
                       "to what extent", "how and", "in the past")),
)

# Candidate rewrites tried in combination; a candidate only replaces the
# pattern when it collides with another derived base (merge-only).
_MERGE_REWRITES: Tuple[Tuple[str, ...], ...] = (
    ("synonym", "kinds of", "types of"),
    ("synonym", "kind of", "type of"),
    ("synonym", "categories", "types"),
    ("synonym", "category", "type"),
    ("plural", "types of", "type of"),
    ("plural", " are ", " is "),
    ("drop", "kind of", ""),
    ("what-which", "What ", "Which "),
)


def _apply_merge_subset(p: str, subset: Sequence[Tuple[str, ...]]) -> Optional[str]:
    out = p
    changed_are = False
    for kind, find, replace in subset:
        if kind == "what-which":
            continue
        before = out
        if find[0].isupper():
            out = out.replace(find, replace)
        else:
            out = re.sub(r"(?<![A-Za-z])%s(?![A-Za-z])" % re.escape(find.strip()),
                         replace.strip(), out)
        if find == " are " and out != before:
            changed_are = True
    for kind, find, replace in subset:
        if kind == "what-which":
            if not changed_are:
                return None  # the what/which swap only rides along a plural fix
            out = out.replace(find, replace)
    out = collapse_spaces(out).replace(" ?", "?")
    return out if out != p else None


@dataclass
class DerivedGroup:
    base_pattern: str
    originals: List[str] = field(default_factory=list)


def derive_default_templates(patterns: Sequence[str]) -> TemplateSet:
    """Collapse raw CQ patterns into default templates plus linked variants.

    Unconditional rewrites (pronoun removal, redundant words, plural
    existentials) produce each pattern's default form; a second pass merges
    forms that a synonym/singular rewrite maps onto another derived form.
    Each rewritten original is kept as a lettered variant of its base.
    """
    groups: List[DerivedGroup] = []
    by_base: Dict[str, DerivedGroup] = {}
    for p in patterns:
        p = collapse_spaces(p)
        if not well_formed_pattern(p):
            raise ValueError("malformed pattern: %r" % p)
        base = p
        for rule in DERIVE_UNCONDITIONAL:
            base = rule.apply(base)
        if base not in by_base:
            g = DerivedGroup(base)
            by_base[base] = g
            groups.append(g)
        if p != base and p not in by_base[base].originals:
            by_base[base].originals.append(p)

    # merge-only pass: synonym / singular / what-which rewrites that land on
    # another base
    merged = True
    while merged:
        merged = False
        for g in list(groups):
            if g.base_pattern not in by_base:
                continue
            target = _find_merge_target(g.base_pattern, by_base)
            if target is not None and target is not g:
                target.originals.extend([g.base_pattern] + g.originals)
                del by_base[g.base_pattern]
                groups.remove(g)
                merged = True
    return _groups_to_set(groups)


def _find_merge_target(base: str, by_base: Dict[str, DerivedGroup]) -> Optional[DerivedGroup]:
    n = len(_MERGE_REWRITES)
    subsets: List[List[Tuple[str, ...]]] = [[_MERGE_REWRITES[i]] for i in range(n)]
    subsets += [[_MERGE_REWRITES[i], _MERGE_REWRITES[j]]
                for i in range(n) for j in range(n) if i < j]
    for subset in subsets:
        candidate = _apply_merge_subset(base, subset)
        if candidate and candidate in by_base:
            return by_base[candidate]
    return None


def _groups_to_set(groups: List[DerivedGroup]) -> TemplateSet:
    templates: List[Template] = []
    for i, g in enumerate(groups, start=1):
        templates.append(Template(i, None, pattern_to_segments(g.base_pattern)))
        letters = "abcdefghijklmnopqrstuvwxyz"
        seen: List[str] = []
        for original in g.originals:
            if original == g.base_pattern or original in seen:
                continue
            seen.append(original)
            templates.append(Template(i, letters[len(seen) - 1],
                                      pattern_to_segments(original)))
    return TemplateSet(name="derived-defaults", version="1", templates=templates)


# --- fragment analysis -----------------------------------------------------------

def _strip_terminal_question(segments: tuple) -> tuple:
    segs = list(segments)
    if segs and isinstance(segs[-1], Text):
        content = segs[-1].content.rstrip()
        if content.endswith("?"):
            content = content[:-1].rstrip()
        if content:
            segs[-1] = Text(content)
        else:
            segs.pop()
    return tuple(segs)


def _is_prefix(a: tuple, b: tuple) -> bool:
    if len(a) > len(b):
        return False
    for i, seg_a in enumerate(a):
        seg_b = b[i]
        if isinstance(seg_a, Slot):
            if seg_a != seg_b:
                return False
            continue
        if not isinstance(seg_b, Text):
            return False
        a_text = collapse_spaces(seg_a.content.lower())
        b_text = collapse_spaces(seg_b.content.lower())
        if i == len(a) - 1:
            if not b_text.startswith(a_text):
                return False
        elif a_text != b_text:
            return False
    return True


def fragment_analysis(templates: Iterable[Template]) -> List[Tuple[Template, Template]]:
    """(fragment, container) pairs: the fragment's segments, minus the final
    question mark, open the container's segment sequence."""
    ts = list(templates)
    pairs: List[Tuple[Template, Template]] = []
    for a in ts:
        a_body = _strip_terminal_question(a.segments)
        for b in ts:
            if a is b or (a.id, a.variant) == (b.id, b.variant):
                continue
            if len(a_body) >= len(b.segments):
                continue
            if _is_prefix(a_body, b.segments):
                pairs.append((a, b))
    return pairs


def fragment_templates(templates: Iterable[Template]) -> List[Template]:
    """Distinct templates that are fragments of at least one other."""
    seen = []
    for frag, _ in fragment_analysis(templates):
        if frag not in seen:
            seen.append(frag)
    return seen
