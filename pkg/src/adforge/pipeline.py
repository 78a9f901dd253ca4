"""The four-baseline orchestration: human-authored, generated, translated
and generated+translated variants of one ad, plus platform formatting."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from . import extract, features, psych, ranker, seq2seq, textproc
from .corpus import Ad
from .errors import EmptyAd, NoContent, NoModelForDomain

VARIANT_ORDER = ["human", "generated", "translated", "generated_translated"]

_TERMINAL = re.compile(r"[.!?]$")


def concat_text(ad: Ad) -> str:
    """Title and description fields joined into a single paragraph.

    Fields get a ``. `` separator unless they already end in terminal
    punctuation; empty fields are skipped.
    """
    parts = [f.strip() for f in ad.titles + ad.descriptions if f.strip()]
    if not parts:
        raise EmptyAd(f"ad {ad.id} has no text fields")
    out = []
    for i, part in enumerate(parts):
        if i < len(parts) - 1 and not _TERMINAL.search(part):
            out.append(part + ".")
        else:
            out.append(part)
    return " ".join(out)


@dataclass
class ModelBundle:
    """Everything inference needs; missing members disable their variants."""

    gazetteer: textproc.Gazetteer
    defaults: dict[str, str]
    lexicons: features.LexiconSet
    cta_lexicon: psych.CtaLexicon
    effects: psych.DesireEffects
    translators: dict[str, seq2seq.TrainedModel] = field(default_factory=dict)
    generator: seq2seq.TrainedModel | None = None
    ctr_ranker: ranker.GbmRankModel | None = None
    arousal: psych.TreeEnsembleReg | None = None
    valence: psych.TreeEnsembleReg | None = None
    max_len: int = 40

    @classmethod
    def fresh(cls) -> "ModelBundle":
        return cls(
            gazetteer=textproc.default_gazetteer(),
            defaults=textproc.load_realize_defaults(),
            lexicons=features.default_lexicons(),
            cta_lexicon=psych.CtaLexicon.default(),
            effects=psych.DesireEffects.default(),
        )

    @classmethod
    def load(cls, models_dir) -> "ModelBundle":
        """Pick up whatever model files exist under ``models_dir``."""
        bundle = cls.fresh()
        root = Path(models_dir)
        for domain in ("MS", "PH"):
            path = root / f"translator_{domain}.adf"
            if path.exists():
                bundle.translators[domain] = seq2seq.load_model(path)
        gen_path = root / "generator.adf"
        if gen_path.exists():
            bundle.generator = seq2seq.load_model(gen_path)
        ranker_path = root / "ranker.json"
        if ranker_path.exists():
            bundle.ctr_ranker = ranker.GbmRankModel.load(ranker_path)
        for name in ("arousal", "valence"):
            path = root / f"{name}.json"
            if path.exists():
                setattr(bundle, name, psych.TreeEnsembleReg.load(path))
        return bundle


@dataclass
class GeneratedText:
    """A model-produced normalized ad plus the substitutions that realize it."""

    text: str
    substitutions: list[tuple[str, str]]
    source_id: str = ""


def run_translator(ad: Ad, bundle: ModelBundle) -> GeneratedText:
    """Normalize the ad and rephrase it with the domain's translator."""
    model = bundle.translators.get(ad.domain)
    if model is None:
        raise NoModelForDomain(f"no translator model for domain {ad.domain!r}")
    normalized = textproc.normalize(concat_text(ad), bundle.gazetteer, source_id=ad.id)
    out = seq2seq.translate(
        model.params, model.src_vocab, model.tgt_vocab, normalized.text, bundle.max_len
    )
    return GeneratedText(text=out, substitutions=normalized.substitutions, source_id=ad.id)


def translate_text(text: str, domain: str, bundle: ModelBundle) -> GeneratedText:
    """Rephrase already-normalized text with the domain's translator."""
    model = bundle.translators.get(domain)
    if model is None:
        raise NoModelForDomain(f"no translator model for domain {domain!r}")
    out = seq2seq.translate(model.params, model.src_vocab, model.tgt_vocab, text, bundle.max_len)
    return GeneratedText(text=out, substitutions=[])


def run_generator(html: str, bundle: ModelBundle, source_id: str = "") -> GeneratedText:
    """Extract page content, normalize it, and summarize it into an ad."""
    if bundle.generator is None:
        raise NoModelForDomain("no generator model loaded")
    content = extract.extract_from_html(html)
    page_text = " ".join(part for part in [content.title] + content.blocks if part)
    if not page_text.strip():
        raise NoContent("page yielded no extractable content")
    normalized = textproc.normalize(page_text, bundle.gazetteer, source_id=source_id)
    model = bundle.generator
    out = seq2seq.translate(
        model.params, model.src_vocab, model.tgt_vocab, normalized.text, bundle.max_len
    )
    return GeneratedText(text=out, substitutions=normalized.substitutions, source_id=source_id)


def run_full(html: str, domain: str, bundle: ModelBundle, source_id: str = "") -> GeneratedText:
    """Generator followed by the domain translator."""
    generated = run_generator(html, bundle, source_id=source_id)
    model = bundle.translators.get(domain)
    if model is None:
        raise NoModelForDomain(f"no translator model for domain {domain!r}")
    out = seq2seq.translate(
        model.params, model.src_vocab, model.tgt_vocab, generated.text, bundle.max_len
    )
    return GeneratedText(text=out, substitutions=generated.substitutions, source_id=source_id)


@dataclass(frozen=True)
class FieldLimits:
    title_chars: int = 30
    title_fields: int = 3
    desc_chars: int = 90
    desc_fields: int = 2


@dataclass
class FormattedAd:
    titles: list[str]
    descriptions: list[str]
    warnings: list[str]

    def to_json(self) -> dict:
        return {
            "title": self.titles,
            "description": self.descriptions,
            "warnings": self.warnings,
        }


def _pack_words(words: list[str], n_fields: int, max_chars: int) -> tuple[list[str], list[str]]:
    """Greedy word-boundary packing; returns (fields, leftover words)."""
    fields: list[str] = []
    i = 0
    while i < len(words) and len(fields) < n_fields:
        current = ""
        while i < len(words):
            word = words[i]
            if len(word) > max_chars and not current:
                # a single oversized word splits mid-word
                current = word[:max_chars]
                words[i] = word[max_chars:]
                break
            candidate = word if not current else current + " " + word
            if len(candidate) > max_chars:
                break
            current = candidate
            i += 1
        fields.append(current)
    return fields, words[i:]


def format_ad(
    normalized_text: str,
    substitutions: list[tuple[str, str]] | None = None,
    defaults: dict[str, str] | None = None,
    limits: FieldLimits = FieldLimits(),
) -> FormattedAd:
    """Realize the text and fit it into title/description fields.

    The first sentence fills the title fields (word-boundary splits);
    the remainder goes to the description fields. Text that does not fit
    is dropped with an ``OverflowTruncated`` warning.
    """
    surface = textproc.realize(normalized_text, substitutions, defaults)
    match = re.search(r"[.!?]+(\s|$)", surface)
    if match:
        first = surface[: match.end()].strip()
        rest = surface[match.end():].strip()
    else:
        first, rest = surface.strip(), ""
    warnings: list[str] = []
    titles, leftover = _pack_words(first.split(), limits.title_fields, limits.title_chars)
    desc_words = leftover + (rest.split() if rest else [])
    descriptions, leftover = _pack_words(desc_words, limits.desc_fields, limits.desc_chars)
    if leftover:
        warnings.append("OverflowTruncated")
    return FormattedAd(titles=titles, descriptions=descriptions, warnings=warnings)


@dataclass
class Variant:
    name: str
    text: str  # normalized form for machine variants, surface for human
    substitutions: list[tuple[str, str]]
    realized: str
    features: features.FeatureVector
    probability: float | None = None
    rank: int | None = None
    annotations: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "text": self.text,
            "substitutions": [list(s) for s in self.substitutions],
            "realized": self.realized,
            "features": self.features.to_json(),
            "probability": self.probability,
            "rank": self.rank,
            "annotations": self.annotations,
        }


@dataclass
class VariantSet:
    ad_id: str
    query: str
    domain: str
    variants: dict[str, Variant]

    def ranks(self) -> dict[str, int]:
        return {name: v.rank for name, v in self.variants.items() if v.rank is not None}

    def to_json(self) -> dict:
        return {
            "ad_id": self.ad_id,
            "query": self.query,
            "domain": self.domain,
            "variants": {name: v.to_json() for name, v in self.variants.items()},
        }


def _annotate(text: str, bundle: ModelBundle) -> dict:
    notes: dict = {
        "cta_verbs": sorted(psych.detect_cta_verbs(text, bundle.cta_lexicon)),
        "effects": sorted(psych.desire_effects(text, bundle.effects)),
    }
    if bundle.arousal is not None:
        notes["arousal"] = bundle.arousal.predict_text(text)
    if bundle.valence is not None:
        notes["valence"] = bundle.valence.predict_text(text)
    return notes


def build_variant_set(ad: Ad, bundle: ModelBundle, html: str | None = None) -> VariantSet:
    """Produce whichever of the four variants the inputs allow, then
    rank and annotate them.

    Generator-based variants need the page HTML; the translated variant
    needs a translator for the ad's domain.
    """
    defaults = bundle.defaults
    variants: dict[str, Variant] = {}

    def add(name: str, text: str, subs: list[tuple[str, str]], realized: str | None = None):
        realized = realized if realized is not None else textproc.realize(text, list(subs), defaults)
        variants[name] = Variant(
            name=name,
            text=text,
            substitutions=list(subs),
            realized=realized,
            features=features.extract_features(realized, bundle.lexicons),
            annotations=_annotate(realized, bundle),
        )

    human_text = concat_text(ad)
    add("human", human_text, [], realized=human_text)

    if bundle.translators.get(ad.domain) is not None:
        translated = run_translator(ad, bundle)
        add("translated", translated.text, translated.substitutions)

    if html is not None and bundle.generator is not None:
        generated = run_generator(html, bundle, source_id=ad.id)
        add("generated", generated.text, generated.substitutions)
        if bundle.translators.get(ad.domain) is not None:
            full = run_full(html, ad.domain, bundle, source_id=ad.id)
            add("generated_translated", full.text, full.substitutions)

    if bundle.ctr_ranker is not None and len(variants) >= 1:
        names = [n for n in VARIANT_ORDER if n in variants]
        scores = [
            ranker.predict(bundle.ctr_ranker, variants[n].features.values()) for n in names
        ]
        probs = ranker.group_probabilities(scores)
        ranks = ranker.rank_variants(probs)
        for name, prob, rank in zip(names, probs, ranks):
            variants[name].probability = float(prob)
            variants[name].rank = int(rank)

    return VariantSet(ad_id=ad.id, query=ad.query, domain=ad.domain, variants=variants)
