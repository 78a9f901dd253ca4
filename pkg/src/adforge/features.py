"""The nine text features consumed by the CTR ranker.

Readability formulas follow the standard published closed forms, pinned
here so golden values stay stable:

* reading ease   = 206.835 - 1.015*(words/sentences) - 84.6*(syllables/words)
* grade level    = 0.39*(words/sentences) + 11.8*(syllables/words) - 15.59
* Dale-Chall     = 0.1579*pct_difficult + 0.0496*(words/sentences), +3.6365 when pct > 5
* Linsear Write  = points/sentences over the first 100 words (1 pt easy, 3 pt
                   hard word), halved, minus 1 when the ratio is 20 or below
* Coleman-Liau   = 0.0588*L - 0.296*S - 15.8 with L, S per 100 words

A word is "difficult" when it has 3+ syllables and is missing from the
shipped familiar-word list. Feature values are defined relative to the
shipped lexicon files (v1).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources
from statistics import median

from . import textproc
from .errors import EmptyText

_SENTENCE_RE = re.compile(r"[.!?]+")
_PUNCT_FEATURE = set(".,!?;:()-")

_BOOST_STEP = 0.293
_NEGATION_FLIP = -0.74
_EXCLAIM_STEP = 0.292
_EXCLAIM_CAP = 4
_NORMALIZER = 15.0
_NEGATION_WINDOW = 3


@dataclass(frozen=True)
class FeatureVector:
    fk_ease: float
    fk_grade: float
    difficult_words: int
    consensus_grade: float
    sentiment: float
    lexical_diversity: float
    punct_count: int
    noun_phrase_count: int
    adjective_count: int

    NAMES = (
        "fk_ease", "fk_grade", "difficult_words", "consensus_grade",
        "sentiment", "lexical_diversity", "punct_count",
        "noun_phrase_count", "adjective_count",
    )

    def values(self) -> list[float]:
        return [float(getattr(self, name)) for name in self.NAMES]

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in self.NAMES}


class LexiconSet:
    """Easy-word list, sentiment lexicon and coarse PoS table."""

    def __init__(
        self,
        easy_words: set[str],
        sentiment: dict[str, float],
        boosters: set[str],
        negations: set[str],
        pos: dict[str, str],
    ):
        if boosters & negations:
            raise ValueError("booster and negation lists must be disjoint")
        self.easy_words = frozenset(easy_words)
        self.sentiment = dict(sentiment)
        self.boosters = frozenset(boosters)
        self.negations = frozenset(negations)
        self.pos = dict(pos)

    def pos_tag(self, word: str, lemma: str) -> str:
        tag = self.pos.get(word.lower())
        if tag is None:
            tag = self.pos.get(lemma)
        return tag or "NOUN"

    def valence(self, word: str, lemma: str) -> float | None:
        low = word.lower()
        if low in self.sentiment:
            return self.sentiment[low]
        return self.sentiment.get(lemma)


def _read_data(name: str) -> str:
    return resources.files("adforge.data").joinpath(name).read_text(encoding="utf-8")


def _word_list(name: str) -> set[str]:
    words = set()
    for line in _read_data(name).splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return words


def _tsv(name: str) -> list[tuple[str, str]]:
    rows = []
    for line in _read_data(name).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, value = line.split("\t")
        rows.append((key.lower(), value))
    return rows


_DEFAULT_LEXICONS: LexiconSet | None = None


def default_lexicons() -> LexiconSet:
    global _DEFAULT_LEXICONS
    if _DEFAULT_LEXICONS is None:
        _DEFAULT_LEXICONS = LexiconSet(
            easy_words=_word_list("easy_words.txt"),
            sentiment={w: float(v) for w, v in _tsv("sentiment_lexicon.tsv")},
            boosters=_word_list("boosters.txt"),
            negations=_word_list("negations.txt"),
            pos=dict(_tsv("pos_lexicon.tsv")),
        )
    return _DEFAULT_LEXICONS


def count_syllables(word: str) -> int:
    """Vowel-group heuristic; silent trailing 'e' dropped unless '-le'."""
    low = re.sub(r"[^a-z]", "", word.lower())
    if not low:
        return 1
    groups = len(re.findall(r"[aeiouy]+", low))
    if (
        low.endswith("e")
        and not low.endswith("le")
        and groups > 0
    ) or (
        low.endswith("le") and len(low) >= 3 and low[-3] in "aeiouy"
    ):
        # trailing e is silent; 'consonant+le' keeps its syllable
        groups -= 1
    return max(1, groups)


def _word_tokens(text: str) -> list[textproc.Token]:
    return [t for t in textproc.tokenize(text) if t.kind in ("word", "number")]


def _sentence_count(text: str) -> int:
    return max(1, len(_SENTENCE_RE.findall(text)))


def flesch_reading_ease(text: str) -> float:
    words = _word_tokens(text)
    if not words:
        raise EmptyText("readability needs at least one word")
    sentences = _sentence_count(text)
    syllables = sum(count_syllables(t.surface) for t in words)
    return 206.835 - 1.015 * (len(words) / sentences) - 84.6 * (syllables / len(words))


def flesch_kincaid_grade(text: str) -> float:
    words = _word_tokens(text)
    if not words:
        raise EmptyText("readability needs at least one word")
    sentences = _sentence_count(text)
    syllables = sum(count_syllables(t.surface) for t in words)
    return 0.39 * (len(words) / sentences) + 11.8 * (syllables / len(words)) - 15.59


def _is_difficult(token: textproc.Token, lexicons: LexiconSet) -> bool:
    return (
        token.kind == "word"
        and count_syllables(token.surface) >= 3
        and token.surface.lower() not in lexicons.easy_words
    )


def difficult_word_count(text: str, lexicons: LexiconSet | None = None) -> int:
    lexicons = lexicons or default_lexicons()
    return sum(1 for t in _word_tokens(text) if _is_difficult(t, lexicons))


def dale_chall_score(text: str, lexicons: LexiconSet | None = None) -> float:
    lexicons = lexicons or default_lexicons()
    words = _word_tokens(text)
    if not words:
        raise EmptyText("readability needs at least one word")
    pct = 100.0 * difficult_word_count(text, lexicons) / len(words)
    score = 0.1579 * pct + 0.0496 * (len(words) / _sentence_count(text))
    if pct > 5.0:
        score += 3.6365
    return score


def linsear_write_grade(text: str) -> float:
    words = _word_tokens(text)[:100]
    if not words:
        raise EmptyText("readability needs at least one word")
    points = sum(3 if count_syllables(t.surface) >= 3 else 1 for t in words)
    ratio = points / _sentence_count(text)
    return ratio / 2 if ratio > 20 else (ratio - 2) / 2


def coleman_liau_index(text: str) -> float:
    words = _word_tokens(text)
    if not words:
        raise EmptyText("readability needs at least one word")
    letters = sum(len(re.sub(r"[^0-9A-Za-z]", "", t.surface)) for t in words)
    avg_letters = 100.0 * letters / len(words)
    avg_sentences = 100.0 * _sentence_count(text) / len(words)
    return 0.0588 * avg_letters - 0.296 * avg_sentences - 15.8


def readability_consensus(text: str, lexicons: LexiconSet | None = None) -> float:
    lexicons = lexicons or default_lexicons()
    return median(
        [dale_chall_score(text, lexicons), linsear_write_grade(text), coleman_liau_index(text)]
    )


def sentiment_compound(text: str, lexicons: LexiconSet | None = None) -> float:
    """Lexicon sum with booster/negation adjustments, squashed to [-1, 1]."""
    lexicons = lexicons or default_lexicons()
    tokens = textproc.tokenize(text)
    total = 0.0
    for i, tok in enumerate(tokens):
        if tok.kind != "word":
            continue
        valence = lexicons.valence(tok.surface, tok.base)
        if valence is None:
            continue
        window = tokens[max(0, i - _NEGATION_WINDOW):i]
        for prev in window:
            if prev.surface.lower() in lexicons.boosters:
                valence += math.copysign(_BOOST_STEP, valence)
        if any(p.surface.lower() in lexicons.negations for p in window):
            valence *= _NEGATION_FLIP
        total += valence
    exclaims = min(sum(1 for t in tokens if t.surface == "!"), _EXCLAIM_CAP)
    if total > 0:
        total += exclaims * _EXCLAIM_STEP
    elif total < 0:
        total -= exclaims * _EXCLAIM_STEP
    return total / math.sqrt(total * total + _NORMALIZER)


def lexical_diversity(text: str) -> float:
    words = _word_tokens(text)
    if not words:
        raise EmptyText("diversity needs at least one word")
    return len({t.surface.lower() for t in words}) / len(words)


def surface_counts(
    text: str, lexicons: LexiconSet | None = None
) -> tuple[int, int, int]:
    """(punctuation marks, noun phrases, adjectives) under the coarse tagger.

    A noun phrase is a maximal token run matching DET? ADJ* NOUN+;
    punctuation breaks runs.
    """
    lexicons = lexicons or default_lexicons()
    tokens = textproc.tokenize(text)
    punct = sum(1 for t in tokens if t.kind == "punct" and t.surface in _PUNCT_FEATURE)

    tags = []
    for tok in tokens:
        if tok.kind == "word":
            tags.append(lexicons.pos_tag(tok.surface, tok.base))
        else:
            tags.append("BREAK" if tok.kind == "punct" else "OTHER")
    adjectives = sum(1 for tag in tags if tag == "ADJ")

    noun_phrases = 0
    i = 0
    while i < len(tags):
        j = i
        if tags[j] == "DET":
            j += 1
        while j < len(tags) and tags[j] == "ADJ":
            j += 1
        nouns = 0
        while j < len(tags) and tags[j] == "NOUN":
            j += 1
            nouns += 1
        if nouns > 0:
            noun_phrases += 1
            i = j
        else:
            i += 1
    return punct, noun_phrases, adjectives


def extract_features(ad_text: str, lexicons: LexiconSet | None = None) -> FeatureVector:
    """Assemble the nine ranker features for one ad text."""
    lexicons = lexicons or default_lexicons()
    if not ad_text or not ad_text.strip():
        raise EmptyText("cannot featurize empty text")
    words = _word_tokens(ad_text)
    if not words:
        raise EmptyText("cannot featurize text without words")
    punct, nps, adjs = surface_counts(ad_text, lexicons)
    return FeatureVector(
        fk_ease=flesch_reading_ease(ad_text),
        fk_grade=flesch_kincaid_grade(ad_text),
        difficult_words=difficult_word_count(ad_text, lexicons),
        consensus_grade=readability_consensus(ad_text, lexicons),
        sentiment=sentiment_compound(ad_text, lexicons),
        lexical_diversity=lexical_diversity(ad_text),
        punct_count=punct,
        noun_phrase_count=nps,
        adjective_count=adjs,
    )
