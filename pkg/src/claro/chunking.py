"""Rule-based chunking of competency questions into entity and predicate chunks.

The chunker produces ranked candidate chunkings.  It is intentionally a
closed-class + heuristic tagger: question words, determiners, auxiliaries,
copulas and prepositions come from small lexicons, verbs are recognised by
a seed lexicon, suffix heuristics and position (the word after a modal is
a verb), and everything left over is treated as noun material.  Bracketed
fragments like "[task x]" are placeholders for values to be filled in
later and always become entity chunks.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple, Union

from .templates import (
    MAX_EC_VARS,
    MAX_PC_PARTS,
    MAX_PC_VARS,
    MAX_SLOT_OCCURRENCES,
    MAX_TOTAL_VARS,
    SlotKind,
    collapse_spaces,
)


class Tag(enum.Enum):
    WH = "wh-word"
    DET = "determiner"
    AUX = "auxiliary"
    COPULA = "copula"
    HAVE = "have"
    PREP = "preposition"
    PRONOUN = "pronoun"
    NOUNISH = "noun-ish"
    VERBISH = "verb-ish"
    PLACEHOLDER = "placeholder"
    PUNCT = "punctuation"
    OTHER = "other"


@dataclass(frozen=True)
class Token:
    text: str
    tag: Tag
    start: int
    end: int
    aside: bool = False  # inside a parenthetical aside


WH_WORDS = {"what", "which", "who", "whom", "whose", "where", "when", "why", "how"}
DETERMINERS = {
    "the", "a", "an", "this", "these", "those", "any", "some", "all",
    "each", "every", "no", "my", "our", "your", "his", "her", "its", "their",
    "another", "other", "both", "such",
}
AUXILIARIES = {"do", "does", "did", "can", "could", "will", "would", "shall",
               "should", "may", "might", "must"}
COPULAS = {"is", "are", "was", "were", "am", "be", "been", "being"}
HAVE_FORMS = {"have", "has", "had"}
PREPOSITIONS = {
    "of", "for", "in", "on", "with", "to", "from", "at", "by", "about",
    "into", "onto", "over", "under", "between", "among", "regarding",
    "concerning", "within", "without", "during", "like", "as", "per",
}
LITERAL_PRONOUNS = {"i", "we"}  # kept as text inside patterns
NOUN_PRONOUNS = {"it", "they", "them", "one"}
TEXT_PARTICLES = {"there", "not", "and", "or", "but", "if", "else", "also",
                  "only", "then", "than", "so", "who", "that", "given",
                  "respect", "extent"}

VERB_LEXICON = {
    "eat", "visit", "see", "cost", "perform", "cook", "use", "support",
    "compile", "drink", "collaborate", "measure", "need", "know", "live",
    "run", "contain", "come", "make", "work", "fit", "apply", "write",
    "read", "store", "record", "monitor", "alert", "notify", "detect",
    "assess", "represent", "convert", "install", "process", "compare",
    "share", "access", "provide", "require", "belong", "depend", "relate",
    "occur", "happen", "cause", "produce", "yield", "order", "buy", "sell",
    "find", "get", "keep", "hold", "carry", "grow", "feed", "hunt", "sleep",
    "move", "travel", "fly", "swim", "breathe", "exist", "mean", "call",
    "spend", "pay", "report", "send", "receive", "collect", "track",
    "remind", "recognise", "recognize", "categorise", "categorize",
    "classify", "organise", "organize", "evaluate", "test", "verify",
    "check", "validate", "query", "answer", "ask", "deliver", "serve",
    "cover", "include", "exclude", "handle", "manage", "operate", "control",
    "export", "import", "display", "generate", "create", "build", "design",
    "offer", "wear", "play", "learn", "teach", "train", "help",
}

VERB_SUFFIXES = ("ise", "ize", "ify")
PARTICIPLE_SUFFIXES = ("ed", "en")

KIND_INDICATOR_NOUNS = {"type", "types", "kind", "kinds", "category", "categories"}
SET_NOUNS = {"set", "sets"}


class AuxPolicy(enum.Enum):
    KEEP_AS_TEXT = "keep-as-text"
    EMIT_BOTH_CANDIDATES = "emit-both-candidates"


@dataclass(frozen=True)
class ChunkerConfig:
    kind_indicator_nouns: frozenset = frozenset(KIND_INDICATOR_NOUNS)
    set_nouns: frozenset = frozenset(SET_NOUNS)
    copulas_as_text: frozenset = frozenset(COPULAS | HAVE_FORMS)
    aux_policy: AuxPolicy = AuxPolicy.EMIT_BOTH_CANDIDATES
    max_candidates: int = 12
    extra_verbs: frozenset = frozenset()

    def is_verb(self, word: str) -> bool:
        w = word.lower()
        return w in VERB_LEXICON or w in self.extra_verbs or w.endswith(VERB_SUFFIXES)


DEFAULT_CONFIG = ChunkerConfig()


_TOKEN_RE = re.compile(r"\[[^\]\[]*\]|[A-Za-z][A-Za-z'-]*|\d+|[?.,;:!()]")


def _classify(word: str) -> Tag:
    w = word.lower()
    if w in WH_WORDS:
        return Tag.WH
    if w in DETERMINERS:
        return Tag.DET
    if w in AUXILIARIES:
        return Tag.AUX
    if w in COPULAS:
        return Tag.COPULA
    if w in HAVE_FORMS:
        return Tag.HAVE
    if w in PREPOSITIONS:
        return Tag.PREP
    if w in LITERAL_PRONOUNS:
        return Tag.PRONOUN
    if w in NOUN_PRONOUNS:
        return Tag.NOUNISH
    if w in TEXT_PARTICLES:
        return Tag.OTHER
    if w in VERB_LEXICON or w.endswith(VERB_SUFFIXES):
        return Tag.VERBISH
    return Tag.NOUNISH


def tokenize(text: str, tags: Optional[Sequence[Tag]] = None) -> List[Token]:
    """Deterministic tokenization; bracketed placeholders stay single tokens.

    ``tags`` optionally overrides the heuristic tag per token (same length
    as the token stream).
    """
    tokens: List[Token] = []
    depth = 0
    for m in _TOKEN_RE.finditer(text):
        piece = m.group(0)
        if piece == "(":
            depth += 1
            continue
        if piece == ")":
            depth = max(0, depth - 1)
            continue
        if piece.startswith("["):
            tag = Tag.PLACEHOLDER
        elif not piece[0].isalnum():
            tag = Tag.PUNCT
        else:
            tag = _classify(piece)
        tokens.append(Token(piece, tag, m.start(), m.end(), aside=depth > 0))
    if tags is not None:
        if len(tags) != len(tokens):
            raise ValueError("tag override length %d != token count %d" % (len(tags), len(tokens)))
        tokens = [replace(t, tag=g) for t, g in zip(tokens, tags)]
    return tokens


# --- chunked representation ---------------------------------------------------

@dataclass(frozen=True)
class TextPiece:
    text: str


@dataclass(frozen=True)
class Binding:
    kind: SlotKind
    index: int
    phrase: str

    @property
    def name(self) -> str:
        return f"{self.kind.value}{self.index}"


Piece = Union[TextPiece, Binding]


@dataclass(frozen=True)
class ChunkedCQ:
    original: str
    pieces: tuple
    rank: int = 0

    def pattern(self) -> str:
        return pattern_of(self)

    def surface(self) -> str:
        """Reconstruct the question text (modulo whitespace)."""
        parts = []
        for p in self.pieces:
            parts.append(p.text if isinstance(p, TextPiece) else p.phrase)
        sent = collapse_spaces(" ".join(parts))
        return re.sub(r"\s+([?,.;:])", r"\1", sent)

    def bindings(self) -> dict:
        """Slot name -> list of bound phrase parts, in occurrence order."""
        out: dict = {}
        for p in self.pieces:
            if isinstance(p, Binding):
                out.setdefault(p.name, []).append(p.phrase)
        return out

    def slot_count(self) -> int:
        return sum(1 for p in self.pieces if isinstance(p, Binding))


def pattern_of(c: ChunkedCQ) -> str:
    """Render a chunking as its pattern string, e.g. 'Which EC1 PC1 I PC1 to PC2 EC2?'."""
    parts = []
    for p in c.pieces:
        parts.append(p.text if isinstance(p, TextPiece) else p.name)
    joined = collapse_spaces(" ".join(parts))
    return re.sub(r"\s+([?,.;:])", r"\1", joined)


def _within_bounds(c: ChunkedCQ) -> bool:
    ecs, pcs, occurrences = set(), {}, 0
    for p in c.pieces:
        if not isinstance(p, Binding):
            continue
        occurrences += 1
        if p.kind is SlotKind.EC:
            ecs.add(p.index)
        else:
            pcs[p.index] = pcs.get(p.index, 0) + 1
    if len(ecs) > MAX_EC_VARS or len(pcs) > MAX_PC_VARS:
        return False
    if len(ecs) + len(pcs) > MAX_TOTAL_VARS or occurrences > MAX_SLOT_OCCURRENCES:
        return False
    return all(n <= MAX_PC_PARTS for n in pcs.values())


# --- the chunking pass ---------------------------------------------------------

@dataclass
class _Choices:
    drop_asides: bool = False
    aux_as_text: bool = True       # copular/possessive constructions stay text
    kind_as_ec: bool = False       # "the types of X": indicator noun becomes an EC
    split_set_of: bool = False     # "the set of X": split into two ECs
    modal_as_text: bool = False    # "Can we [PC1] ...": the modal stays literal


def _strip_brackets(word: str) -> str:
    return word


class _Assembler:
    """Accumulates (role, token) assignments and builds a ChunkedCQ."""

    def __init__(self, original: str):
        self.original = original
        self.items: List[Tuple[str, Optional[int], Token]] = []  # (role, slot-index, token)
        self.ec_next = 1
        self.pc_next = 1

    def text(self, token: Token):
        self.items.append(("text", None, token))

    def ec(self, tokens: Sequence[Token]) -> int:
        idx = self.ec_next
        self.ec_next += 1
        for t in tokens:
            self.items.append(("EC", idx, t))
        return idx

    def pc_start(self) -> int:
        idx = self.pc_next
        self.pc_next += 1
        return idx

    def pc(self, idx: int, tokens: Sequence[Token]):
        for t in tokens:
            self.items.append(("PC", idx, t))

    def build(self) -> ChunkedCQ:
        pieces: List[Piece] = []
        i = 0
        while i < len(self.items):
            role, idx, token = self.items[i]
            j = i
            group = []
            while j < len(self.items) and self.items[j][0] == role and self.items[j][1] == idx:
                group.append(self.items[j][2])
                j += 1
            phrase = " ".join(t.text for t in group)
            phrase = re.sub(r"\s+([?,.;:])", r"\1", phrase)
            if role == "text":
                for t in group:
                    pieces.append(TextPiece(t.text))
            else:
                pieces.append(Binding(SlotKind[role], idx, phrase))
            i = j
        return ChunkedCQ(self.original, tuple(pieces))


def _renumber(c: ChunkedCQ) -> ChunkedCQ:
    """Force dense slot numbering by first appearance."""
    mapping: dict = {}
    counters = {SlotKind.EC: 0, SlotKind.PC: 0}
    pieces = []
    for p in c.pieces:
        if isinstance(p, Binding):
            key = (p.kind, p.index)
            if key not in mapping:
                counters[p.kind] += 1
                mapping[key] = counters[p.kind]
            pieces.append(Binding(p.kind, mapping[key], p.phrase))
        else:
            pieces.append(p)
    return ChunkedCQ(c.original, tuple(pieces), c.rank)


def _noun_run(tokens: List[Token], i: int) -> int:
    """Length of the noun-phrase run starting at i (det/adj/noun/placeholder)."""
    j = i
    while j < len(tokens) and tokens[j].tag in (Tag.DET, Tag.NOUNISH, Tag.PLACEHOLDER):
        j += 1
    return j - i


def _noun_spans(tokens: List[Token], i: int, run: int) -> List[Tuple[int, int]]:
    """Split a noun run into entity spans.

    A placeholder is always its own span; a determiner that does not open
    the run starts a new span ("the output format | an open standard").
    """
    spans: List[Tuple[int, int]] = []
    start = i
    for j in range(i, i + run):
        t = tokens[j]
        if j > start and (t.tag is Tag.PLACEHOLDER or t.tag is Tag.DET):
            spans.append((start, j))
            start = j
        if t.tag is Tag.PLACEHOLDER and j + 1 <= i + run - 1:
            spans.append((start, j + 1))
            start = j + 1
    if start < i + run:
        spans.append((start, i + run))
    return spans


_TO_LINK_VERBS = HAVE_FORMS | {"need", "needs", "needed", "want", "wants",
                               "wanted", "ought", "wish", "wishes"}


def _verb_chain(tokens: List[Token], i: int, config: ChunkerConfig) -> int:
    """Length of a contiguous verb chain at i: verbs, 'not', and the
    have-to/need-to idiom; a bare infinitive after a full verb starts a
    separate predicate and is not absorbed ("visit | to see")."""
    j = i
    while j < len(tokens):
        t = tokens[j]
        w = t.text.lower()
        if t.tag in (Tag.VERBISH, Tag.AUX) or w == "not":
            j += 1
            continue
        if w in HAVE_FORMS and j + 1 < len(tokens) and tokens[j + 1].text.lower() == "to":
            j += 1
            continue
        if (w == "to" and j > i and tokens[j - 1].text.lower() in _TO_LINK_VERBS
                and j + 1 < len(tokens)
                and (tokens[j + 1].tag is Tag.VERBISH or config.is_verb(tokens[j + 1].text))):
            j += 1
            continue
        break
    return j - i


def _chunk_once(tokens: List[Token], original: str, config: ChunkerConfig,
                choices: _Choices) -> Optional[ChunkedCQ]:
    if choices.drop_asides:
        tokens = [t for t in tokens if not t.aside]
    asm = _Assembler(original)
    i = 0
    n = len(tokens)
    pending_pc: Optional[int] = None  # a split PC waiting for its main verb

    def looks_like_verb(k: int) -> bool:
        return k < n and (tokens[k].tag is Tag.VERBISH or config.is_verb(tokens[k].text))

    while i < n:
        t = tokens[i]
        w = t.text.lower()

        if t.tag is Tag.PUNCT or t.tag is Tag.WH or t.tag is Tag.PRONOUN:
            asm.text(t)
            i += 1
            continue

        if t.tag is Tag.PLACEHOLDER:
            run = _noun_run(tokens, i)
            asm.ec(tokens[i:i + run])
            i += run
            continue

        if t.tag is Tag.AUX:
            if (choices.modal_as_text and i + 1 < n
                    and tokens[i + 1].tag is Tag.PRONOUN):
                asm.text(t)
                i += 1
                continue
            chain = _verb_chain(tokens, i + 1, config)
            if chain > 0:
                idx = asm.pc_start()
                asm.pc(idx, tokens[i:i + 1 + chain])
                i += 1 + chain
                i = _glue_preposition(tokens, i, asm, idx, config)
                pending_pc = None
            else:
                # auxiliary separated from its main verb ("does ... eat")
                pending_pc = asm.pc_start()
                asm.pc(pending_pc, [t])
                i += 1
            continue

        if t.tag in (Tag.COPULA, Tag.HAVE):
            nxt = i + 1
            if (t.tag is Tag.HAVE and nxt < n and tokens[nxt].text.lower() == "to"
                    and looks_like_verb(nxt + 1)):
                # "have to visit": idiom chain joins the predicate
                chain = _verb_chain(tokens, i, config)
                idx = pending_pc if pending_pc is not None else asm.pc_start()
                asm.pc(idx, tokens[i:i + chain])
                i += chain
                i = _glue_preposition(tokens, i, asm, idx, config)
                pending_pc = None
                continue
            # passive/progressive group: copula directly followed by a verb form
            participle = nxt < n and (
                tokens[nxt].tag is Tag.VERBISH
                or tokens[nxt].text.lower().endswith(PARTICIPLE_SUFFIXES)
                and tokens[nxt].tag is Tag.NOUNISH and len(tokens[nxt].text) > 4)
            if participle:
                chain = _verb_chain(tokens, i + 1, config) or 1
                idx = pending_pc if pending_pc is not None else asm.pc_start()
                asm.pc(idx, tokens[i:i + 1 + chain])
                i += 1 + chain
                i = _glue_preposition(tokens, i, asm, idx, config)
                pending_pc = None
                continue
            if pending_pc is not None or not choices.aux_as_text:
                # main verb of a split construction, or the PC-reading candidate
                idx = pending_pc if pending_pc is not None else asm.pc_start()
                if choices.aux_as_text and pending_pc is not None:
                    # default reading keeps "Does ... have ..." as text: undo the split
                    asm.items = [(r, x, tok) if r != "PC" or x != pending_pc
                                 else ("text", None, tok) for (r, x, tok) in asm.items]
                    asm.pc_next -= 1
                    asm.text(t)
                else:
                    asm.pc(idx, [t])
                pending_pc = None
                i += 1
                continue
            asm.text(t)
            i += 1
            continue

        if t.tag is Tag.VERBISH:
            chain = _verb_chain(tokens, i, config)
            idx = pending_pc if pending_pc is not None else asm.pc_start()
            asm.pc(idx, tokens[i:i + chain])
            i += chain
            i = _glue_preposition(tokens, i, asm, idx, config)
            pending_pc = None
            continue

        if w == "to" and looks_like_verb(i + 1):
            prev_verbish = asm.items and asm.items[-1][0] == "PC"
            if prev_verbish:
                asm.text(t)  # gap between two predicates: "visit to see"
                idx = asm.pc_start()
                chain = _verb_chain(tokens, i + 1, config)
                asm.pc(idx, tokens[i + 1:i + 1 + chain])
                i += 1 + chain
                i = _glue_preposition(tokens, i, asm, idx, config)
            else:
                idx = pending_pc if pending_pc is not None else asm.pc_start()
                chain = _verb_chain(tokens, i + 1, config)
                asm.pc(idx, tokens[i:i + 1 + chain])
                pending_pc = None
                i += 1 + chain
                i = _glue_preposition(tokens, i, asm, idx, config)
            continue

        if t.tag in (Tag.DET, Tag.NOUNISH):
            predicate_position = (
                i == 1 and tokens[0].tag in (Tag.COPULA, Tag.HAVE))
            consumed = _noun_phrase(tokens, i, asm, config, choices,
                                    predicate_position)
            if consumed:
                i += consumed
                continue
            asm.text(t)
            i += 1
            continue

        asm.text(t)
        i += 1

    c = _renumber(asm.build())
    if not _within_bounds(c):
        return None
    return c


def _glue_preposition(tokens: List[Token], i: int, asm: "_Assembler", idx: int,
                      config: ChunkerConfig) -> int:
    """Attach a preposition to the predicate when a noun phrase follows it."""
    if i < len(tokens) and tokens[i].tag is Tag.PREP and tokens[i].text.lower() != "of":
        if _noun_run(tokens, i + 1) > 0 or (
                i + 1 < len(tokens) and tokens[i + 1].tag is Tag.PLACEHOLDER):
            asm.pc(idx, [tokens[i]])
            return i + 1
    return i


def _noun_phrase(tokens: List[Token], i: int, asm: "_Assembler",
                 config: ChunkerConfig, choices: _Choices,
                 predicate_position: bool) -> int:
    """Consume one noun phrase starting at i; returns tokens consumed.

    ``predicate_position`` marks the "Is X Y?" shape: the material between a
    sentence-initial copula and the question mark holds two entities even
    without a determiner boundary ("Is water wet?").
    """
    run = _noun_run(tokens, i)
    if run == 0:
        return 0
    head_pos = i + run - 1
    head = tokens[head_pos].text.lower()
    after = i + run

    followed_by_of = after < len(tokens) and tokens[after].text.lower() == "of"
    if followed_by_of and head in config.kind_indicator_nouns and not choices.kind_as_ec:
        # "the types of X": indicator stays literal text
        for t in tokens[i:after + 1]:
            asm.text(t)
        return run + 1
    if followed_by_of and head in config.set_nouns and not choices.split_set_of:
        # "the set of datatype qualities": absorb one of-phrase into the EC
        tail = _noun_run(tokens, after + 1)
        if tail:
            asm.ec(tokens[i:after + 1 + tail])
            return run + 1 + tail

    spans = _noun_spans(tokens, i, run)
    ends_sentence = after >= len(tokens) or tokens[after].tag is Tag.PUNCT
    if predicate_position and ends_sentence and len(spans) == 1 and run >= 2:
        spans = [(i, i + run - 1), (i + run - 1, i + run)]
    for lo, hi in spans:
        asm.ec(tokens[lo:hi])
    return run


def chunk(text: str, config: ChunkerConfig = DEFAULT_CONFIG,
          tags: Optional[Sequence[Tag]] = None) -> List[ChunkedCQ]:
    """Produce ranked candidate chunkings of a question.

    Candidates never exceed the structural bounds of the template language;
    candidates that would are discarded.  Ranking: fewest slots first, the
    literal (auxiliaries-as-text) reading preferred on ties, then pattern
    string for determinism.
    """
    tokens = tokenize(text, tags)
    if not tokens:
        return []
    has_aside = any(t.aside for t in tokens)
    has_kind = any(t.text.lower() in config.kind_indicator_nouns for t in tokens)
    has_set = any(t.text.lower() in config.set_nouns for t in tokens)
    has_cop = any(t.tag in (Tag.COPULA, Tag.HAVE) for t in tokens)

    has_modal_pronoun = any(
        t.tag is Tag.AUX and i + 1 < len(tokens) and tokens[i + 1].tag is Tag.PRONOUN
        for i, t in enumerate(tokens))

    aside_options = [True, False] if has_aside else [False]
    kind_options = [False, True] if has_kind else [False]
    set_options = [False, True] if has_set else [False]
    modal_options = [False, True] if has_modal_pronoun else [False]
    if config.aux_policy is AuxPolicy.EMIT_BOTH_CANDIDATES and has_cop:
        aux_options = [True, False]
    else:
        aux_options = [True]

    seen = {}
    for drop, aux, kind_ec, split_set, modal_text in itertools.product(
            aside_options, aux_options, kind_options, set_options, modal_options):
        choices = _Choices(drop_asides=drop, aux_as_text=aux,
                           kind_as_ec=kind_ec, split_set_of=split_set,
                           modal_as_text=modal_text)
        c = _chunk_once(tokens, text, config, choices)
        if c is None:
            continue
        key = c.pattern()
        score = (c.slot_count(), 0 if aux else 1, 0 if not drop else 1, key)
        if key not in seen or score < seen[key][0]:
            seen[key] = (score, c)
        if len(seen) >= config.max_candidates:
            break

    ranked = sorted(seen.values(), key=lambda pair: pair[0])
    return [replace(c, rank=i) for i, (_, c) in enumerate(ranked)]


# --- gold chunking syntax -------------------------------------------------------

_GOLD_RE = re.compile(r"\(([^()]*)\)\[(EC|PC)(\d+)\]")


def parse_gold_chunking(line: str) -> ChunkedCQ:
    """Parse the explicit span syntax, e.g.::

        Which (visualisation software)[EC1] is there for (this data)[EC2]?

    The same PC index on several spans marks a split predicate.
    """
    pieces: List[Piece] = []
    pos = 0
    for m in _GOLD_RE.finditer(line):
        if m.start() > pos:
            for w in line[pos:m.start()].split():
                pieces.append(TextPiece(w))
        phrase, tag, idx = m.group(1), m.group(2), int(m.group(3))
        if idx < 1:
            raise ValueError("slot index must be >= 1: %s" % m.group(0))
        pieces.append(Binding(SlotKind[tag], idx, phrase.strip()))
        pos = m.end()
    trailing = line[pos:].strip()
    if trailing:
        q = trailing.endswith("?")
        if q:
            trailing = trailing[:-1].strip()
        for w in trailing.split():
            pieces.append(TextPiece(w))
        if q:
            pieces.append(TextPiece("?"))
    original = collapse_spaces(re.sub(_GOLD_RE, lambda m: m.group(1), line))
    original = re.sub(r"\s+([?,.;:])", r"\1", original)
    return ChunkedCQ(original, tuple(pieces))


def gold_chunking_of(template, bindings: dict) -> ChunkedCQ:
    """Build the chunking that instantiating ``template`` with ``bindings`` implies."""
    from .templates import Slot, Text  # local import to avoid cycle noise

    queues = {name: list(v) if not isinstance(v, str) else [v]
              for name, v in bindings.items()}
    pieces: List[Piece] = []
    parts: List[str] = []
    for seg in template.segments:
        if isinstance(seg, Slot):
            phrase = queues[seg.name].pop(0)
            pieces.append(Binding(seg.kind, seg.index, phrase))
            parts.append(phrase)
        else:
            for w in seg.content.replace("?", " ?").split():
                pieces.append(TextPiece(w))
            parts.append(seg.content)
    original = collapse_spaces("".join(parts))
    return ChunkedCQ(original, tuple(pieces))
