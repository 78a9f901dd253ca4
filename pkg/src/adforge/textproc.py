"""Ad-text normalization: tokenizing, entity masking, lemma/stem reduction.

The normalized form is the modeling representation used throughout: all
lowercase lemmas, recognized entities replaced by ``<LABEL>`` placeholder
tokens, with the substitution list kept so the surface text can be
restored by :func:`realize`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import EmptyAd, MissingDefault

PLACEHOLDER_RE = re.compile(r"<[A-Z][A-Z/_]*>")

_TOKEN_RE = re.compile(
    r"""
    <[A-Z][A-Z/_]*>            # placeholder token, kept atomic
    | \$\d+(?:\.\d+)?          # $5, $5.99
    | \d+(?:\.\d+)?\$          # 5$
    | \d+(?:\.\d+)?%           # 60%
    | \d+/\d+                  # 24/7
    | \d+(?:\.\d+)?            # 13, 4.5
    | [A-Za-z]+(?:'[A-Za-z]+)* # words, incl. it's / don't
    | [.,!?\-:;()]             # punctuation split off individually
    | \S                       # anything else survives as a single symbol
    """,
    re.VERBOSE,
)

_NUMERIC_RE = re.compile(r"^(\$\d|\d)")

# Punctuation that attaches to the preceding token when detokenizing.
_ATTACH_LEFT = {".", ",", "!", "?", ";", ":", ")"}
_ATTACH_RIGHT = {"("}

WEEKDAYS = {
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday",
}
MONTHS = {
    "january", "february", "march", "april", "may", "june", "july",
    "august", "september", "october", "november", "december",
}

_YEAR_RE = re.compile(r"^(19|20)\d\d$")
_INT_RE = re.compile(r"^\d+$")
_PERCENT_RE = re.compile(r"^\d+(\.\d+)?%$")
_MONEY_RE = re.compile(r"^(\$\d+(\.\d+)?|\d+(\.\d+)?\$)$")
_FRACTION_RE = re.compile(r"^\d+/\d+$")

# Overlap resolution order (highest priority first).
LABEL_PRIORITY = ["CONDITION/TREATMENT", "ORG", "PERSON", "GPE", "MONEY", "DATE", "CARDINAL"]

# Words a naive suffix stripper would mangle.
_NO_STEM = {
    "this", "is", "was", "has", "its", "his", "hers", "ours", "yours",
    "theirs", "as", "us", "thus", "plus", "less", "unless", "always",
    "perhaps", "news", "lens", "whereas", "besides", "sometimes", "during",
    "morning", "evening", "everything", "something", "nothing", "anything",
    "thing", "king", "ring", "sing", "bring", "spring", "string", "wing",
    "indeed", "need", "speed", "feed", "governess", "series", "species",
}

_VOWELS = set("aeiou")


@dataclass(frozen=True)
class Token:
    surface: str
    base: str
    kind: str  # word | number | punct | placeholder


@dataclass(frozen=True)
class Gazetteer:
    condition_treatment: frozenset[str] = frozenset()
    org: frozenset[str] = frozenset()
    person: frozenset[str] = frozenset()
    gpe: frozenset[str] = frozenset()

    def phrase_sets(self) -> list[tuple[str, frozenset[str]]]:
        return [
            ("CONDITION/TREATMENT", self.condition_treatment),
            ("ORG", self.org),
            ("PERSON", self.person),
            ("GPE", self.gpe),
        ]

    @property
    def max_phrase_len(self) -> int:
        longest = 1
        for _, phrases in self.phrase_sets():
            for phrase in phrases:
                longest = max(longest, phrase.count(" ") + 1)
        return longest

    @classmethod
    def from_text(cls, text: str) -> "Gazetteer":
        """Parse the gazetteer file format: ``[section]`` headers, one phrase per line."""
        sections: dict[str, set[str]] = {
            "condition_treatment": set(), "org": set(), "person": set(), "gpe": set(),
        }
        current: set[str] | None = None
        for raw_line in text.splitlines():
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                name = line[1:-1].strip().lower()
                if name not in sections:
                    raise ValueError(f"unknown gazetteer section [{name}]")
                current = sections[name]
            elif current is None:
                raise ValueError("gazetteer entry before any [section] header")
            else:
                current.add(line.lower())
        return cls(**{k: frozenset(v) for k, v in sections.items()})

    @classmethod
    def from_file(cls, path) -> "Gazetteer":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())


@dataclass(frozen=True)
class EntitySpan:
    start: int
    end: int  # exclusive token index
    label: str


@dataclass
class NormalizedAd:
    text: str
    substitutions: list[tuple[str, str]] = field(default_factory=list)
    source_id: str = ""

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "substitutions": [list(s) for s in self.substitutions],
            "source_id": self.source_id,
        }

    @classmethod
    def from_json(cls, data: dict) -> "NormalizedAd":
        return cls(
            text=data["text"],
            substitutions=[(s[0], s[1]) for s in data.get("substitutions", [])],
            source_id=data.get("source_id", ""),
        )


def _load_data_text(name: str) -> str:
    return resources.files("adforge.data").joinpath(name).read_text(encoding="utf-8")


def default_gazetteer() -> Gazetteer:
    return Gazetteer.from_text(_load_data_text("gazetteer.txt"))


def load_lemma_exceptions() -> dict[str, str]:
    table = {}
    for line in _load_data_text("lemma_exceptions.txt").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        surface, lemma = line.split()
        table[surface] = lemma
    return table


_LEMMA_EXCEPTIONS: dict[str, str] | None = None


def _lemma_exceptions() -> dict[str, str]:
    global _LEMMA_EXCEPTIONS
    if _LEMMA_EXCEPTIONS is None:
        _LEMMA_EXCEPTIONS = load_lemma_exceptions()
    return _LEMMA_EXCEPTIONS


def tokenize(text: str) -> list[Token]:
    """Split text into word/number/punct/placeholder tokens."""
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        surface = match.group(0)
        if PLACEHOLDER_RE.fullmatch(surface):
            kind = "placeholder"
            base = surface
        elif _NUMERIC_RE.match(surface):
            kind = "number"
            base = surface
        elif surface[0].isalpha():
            kind = "word"
            base = lemma_stem(surface)
        else:
            kind = "punct"
            base = surface
        tokens.append(Token(surface=surface, base=base, kind=kind))
    return tokens


def lemma_stem(word: str) -> str:
    """Lowercase lemma via exception table, else light suffix stripping."""
    low = word.lower()
    exceptions = _lemma_exceptions()
    if low in exceptions:
        return exceptions[low]
    if low in _NO_STEM or "'" in low:
        return low
    return _strip_suffix(low)


def _strip_suffix(word: str) -> str:
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("xes", "zes", "ches", "shes", "sses")):
        return word[:-2]
    if word.endswith("s") and not word.endswith(("ss", "us", "is")) and len(word) >= 4:
        return word[:-1]
    if word.endswith("ing") and len(word) >= 6:
        return _fix_stem(word[:-3])
    if word.endswith("ed") and len(word) >= 5:
        stem = word[:-2]
        if stem.endswith("i"):
            return stem[:-1] + "y"
        return _fix_stem(stem)
    return word


def _fix_stem(stem: str) -> str:
    # running -> run; updat -> update (consonant-vowel-consonant ending).
    if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS and stem[-1] not in "ls":
        return stem[:-1]
    if (
        len(stem) >= 3
        and stem[-1] not in _VOWELS
        and stem[-2] in _VOWELS
        and stem[-3] not in _VOWELS
        and stem[-1] not in "wxy"
    ):
        return stem + "e"
    return stem


def recognize_entities(tokens: list[Token], gazetteer: Gazetteer) -> list[EntitySpan]:
    """Gazetteer longest-match plus rule patterns for numbers, money and dates.

    Overlaps resolve by longer span, then earlier start, then label priority.
    """
    candidates: list[EntitySpan] = []
    max_len = gazetteer.max_phrase_len
    lowered = [t.surface.lower() for t in tokens]
    for start in range(len(tokens)):
        if tokens[start].kind == "punct":
            continue
        limit = min(len(tokens), start + max_len)
        end = start
        while end < limit and tokens[end].kind != "punct":
            end += 1
        for stop in range(end, start, -1):
            phrase = " ".join(lowered[start:stop])
            for label, phrases in gazetteer.phrase_sets():
                if phrase in phrases:
                    candidates.append(EntitySpan(start, stop, label))
    candidates.extend(_rule_spans(tokens, lowered))
    return _resolve_overlaps(candidates)


def _rule_spans(tokens: list[Token], lowered: list[str]) -> list[EntitySpan]:
    spans = []
    for i, tok in enumerate(tokens):
        surface = tok.surface
        if tok.kind == "number":
            if _MONEY_RE.match(surface):
                spans.append(EntitySpan(i, i + 1, "MONEY"))
            elif _FRACTION_RE.match(surface):
                spans.append(EntitySpan(i, i + 1, "DATE"))
            elif _YEAR_RE.match(surface):
                spans.append(EntitySpan(i, i + 1, "DATE"))
            elif _PERCENT_RE.match(surface):
                spans.append(EntitySpan(i, i + 1, "CARDINAL"))
            elif _INT_RE.match(surface):
                # "60 percent" masks as one spelled percentage
                if i + 1 < len(tokens) and lowered[i + 1] in ("percent", "percents"):
                    spans.append(EntitySpan(i, i + 2, "CARDINAL"))
                else:
                    spans.append(EntitySpan(i, i + 1, "CARDINAL"))
        elif tok.kind == "word" and lowered[i] in WEEKDAYS | MONTHS:
            spans.append(EntitySpan(i, i + 1, "DATE"))
    return spans


def _resolve_overlaps(candidates: list[EntitySpan]) -> list[EntitySpan]:
    order = {label: i for i, label in enumerate(LABEL_PRIORITY)}
    ranked = sorted(
        candidates, key=lambda s: (-(s.end - s.start), s.start, order[s.label])
    )
    chosen: list[EntitySpan] = []
    taken: set[int] = set()
    for span in ranked:
        indices = range(span.start, span.end)
        if any(i in taken for i in indices):
            continue
        chosen.append(span)
        taken.update(indices)
    chosen.sort(key=lambda s: s.start)
    return chosen


def detokenize(pieces: list[str]) -> str:
    """Join tokens with spaces, attaching clause punctuation to neighbours."""
    out: list[str] = []
    for piece in pieces:
        if piece in _ATTACH_LEFT and out:
            out[-1] += piece
        elif out and out[-1] and out[-1][-1] in _ATTACH_RIGHT:
            out[-1] += piece
        else:
            out.append(piece)
    return " ".join(out)


def normalize(text: str, gazetteer: Gazetteer, source_id: str = "") -> NormalizedAd:
    """Mask entities with placeholders and reduce remaining words to lemmas.

    Raises :class:`EmptyAd` when the text has no word, number or
    placeholder token to keep.
    """
    tokens = tokenize(text)
    if not any(t.kind != "punct" for t in tokens):
        raise EmptyAd(f"no content tokens in ad {source_id!r}")
    spans = recognize_entities(tokens, gazetteer)
    span_at = {s.start: s for s in spans}
    covered = {i for s in spans for i in range(s.start, s.end)}

    pieces: list[str] = []
    substitutions: list[tuple[str, str]] = []
    i = 0
    while i < len(tokens):
        span = span_at.get(i)
        if span is not None:
            surface = " ".join(t.surface for t in tokens[span.start:span.end])
            substitutions.append((span.label, surface))
            pieces.append(f"<{span.label}>")
            i = span.end
        elif i in covered:  # pragma: no cover - spans are non-overlapping
            i += 1
        else:
            tok = tokens[i]
            if tok.kind == "word":
                pieces.append(tok.base)
            elif tok.kind == "placeholder":
                pieces.append(tok.surface)
                substitutions.append((tok.surface[1:-1], tok.surface))
            else:
                pieces.append(tok.surface.lower())
            i += 1
    return NormalizedAd(text=detokenize(pieces), substitutions=substitutions, source_id=source_id)


def load_realize_defaults() -> dict[str, str]:
    import json

    return json.loads(_load_data_text("realize_defaults.json"))


def realize(
    text: str,
    substitutions: list[tuple[str, str]] | None = None,
    defaults: dict[str, str] | None = None,
) -> str:
    """Fill placeholders back in and capitalize sentence-initial letters.

    Placeholders consume substitutions of the same label in order; any
    leftover placeholder falls back to ``defaults`` or raises
    :class:`MissingDefault`.
    """
    remaining = list(substitutions or [])
    defaults = defaults if defaults is not None else load_realize_defaults()

    def fill(match: re.Match) -> str:
        label = match.group(0)[1:-1]
        for idx, (sub_label, surface) in enumerate(remaining):
            if sub_label == label:
                del remaining[idx]
                return surface
        if label in defaults:
            return defaults[label]
        raise MissingDefault(f"no substitution or default for <{label}>")

    filled = PLACEHOLDER_RE.sub(fill, text)
    return _capitalize_sentences(filled)


_SENT_START = re.compile(r"(^|[.!?]\s+)([a-z])")


def _capitalize_sentences(text: str) -> str:
    return _SENT_START.sub(lambda m: m.group(1) + m.group(2).upper(), text)
