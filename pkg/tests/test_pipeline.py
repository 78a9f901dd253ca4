import pytest

from adforge import pipeline, textproc
from adforge.errors import NoContent, NoModelForDomain
from adforge.pipeline import (
    FieldLimits,
    ModelBundle,
    build_variant_set,
    concat_text,
    format_ad,
    run_full,
    run_generator,
    run_translator,
)
from conftest import make_ad

FIXTURE_PAGE = """<html><head><title>Cough Relief Guide</title></head><body>
<div class="article-content">
<p>Cough relief advice with plain language help for everyone reading here.</p>
<p>Simple answers about cough and easy remedy steps anyone can follow.</p>
</div>
<div class="footer"><p>legal words</p></div>
</body></html>"""


def test_concat_text_joins_with_period():
    ad = make_ad(titles=("A",), descriptions=("B", "C"))
    assert concat_text(ad) == "A. B. C"


def test_concat_text_keeps_existing_punctuation():
    ad = make_ad(titles=("Ready?", "Go Now!"), descriptions=("Done.",))
    assert concat_text(ad) == "Ready? Go Now! Done."


def test_concat_text_skips_empty_fields():
    ad = make_ad(titles=("Only Title", ""), descriptions=("描述", ""))
    assert concat_text(ad) == "Only Title. 描述"


def test_concat_text_all_empty_rejected_at_construction():
    with pytest.raises(Exception):
        make_ad(titles=("",), descriptions=("",))


def test_run_translator_routes_by_domain(toy_bundle):
    ad = make_ad(
        titles=("soreness relief",), descriptions=("expert soreness info.",), domain="MS"
    )
    result = run_translator(ad, toy_bundle)
    # the memorized toy pair for "soreness" targets the check-verb ad
    assert result.text == "check top soreness remedy now!"


def test_run_translator_unknown_domain(toy_bundle):
    ad = make_ad(domain="PH")
    bundle_no_ph = ModelBundle.fresh()
    bundle_no_ph.translators = {"MS": toy_bundle.translators["MS"]}
    with pytest.raises(NoModelForDomain):
        run_translator(ad, bundle_no_ph)


def test_run_generator_requires_model():
    bundle = ModelBundle.fresh()
    with pytest.raises(NoModelForDomain):
        run_generator(FIXTURE_PAGE, bundle)


def test_run_generator_empty_extraction(toy_bundle, toy_translator):
    bundle = ModelBundle.fresh()
    bundle.generator = toy_translator
    with pytest.raises(NoContent):
        run_generator("<html><body><div></div></body></html>", bundle)


def test_run_generator_and_full_compose(toy_bundle, toy_translator):
    bundle = ModelBundle.fresh()
    bundle.generator = toy_translator
    bundle.translators = dict(toy_bundle.translators)
    generated = run_generator(FIXTURE_PAGE, bundle)
    assert generated.text
    full = run_full(FIXTURE_PAGE, "MS", bundle)
    chained = pipeline.translate_text(generated.text, "MS", bundle)
    assert full.text == chained.text


def test_pipeline_deterministic(toy_bundle):
    ad = make_ad(titles=("soreness relief",), descriptions=("expert soreness info.",))
    a = run_translator(ad, toy_bundle)
    b = run_translator(ad, toy_bundle)
    assert a.text == b.text


# -- format_ad ---------------------------------------------------------------


def test_format_short_first_sentence_single_title():
    formatted = format_ad("short title here.", [], {})
    assert formatted.titles == ["Short title here."]
    assert len(formatted.titles[0]) <= 30
    assert formatted.warnings == []


def test_format_long_first_sentence_splits_at_word_boundary():
    text = "this first sentence runs well past thirty characters total. rest here."
    formatted = format_ad(text, [], {})
    assert len(formatted.titles) >= 2
    for t in formatted.titles:
        assert len(t) <= 30
    joined = " ".join(formatted.titles + formatted.descriptions)
    realized = textproc.realize(text, [], {})
    assert realized.startswith(joined[: len(realized)]) or joined.startswith(realized)


def test_format_overflow_truncated_warning():
    text = ("word " * 120).strip() + "."
    formatted = format_ad(text, [], {})
    assert "OverflowTruncated" in formatted.warnings
    for d in formatted.descriptions:
        assert len(d) <= 90


def test_format_fields_are_prefix_of_realized():
    text = "discover <CARDINAL> fact about cough today. more plain words follow here now."
    formatted = format_ad(text, [], {"CARDINAL": "10"})
    realized = textproc.realize(text, [], {"CARDINAL": "10"})
    emitted = " ".join(formatted.titles + formatted.descriptions).split()
    assert realized.split()[: len(emitted)] == emitted


def test_format_respects_custom_limits():
    limits = FieldLimits(title_chars=10, title_fields=1, desc_chars=20, desc_fields=1)
    formatted = format_ad("abcdefgh ijklmnop qrstuv.", [], {}, limits)
    assert len(formatted.titles) == 1
    assert len(formatted.titles[0]) <= 10


# -- variant sets -----------------------------------------------------------------


def test_variant_set_translator_only(toy_bundle):
    ad = make_ad(titles=("soreness relief",), descriptions=("expert soreness info.",))
    vs = build_variant_set(ad, toy_bundle)
    assert set(vs.variants) == {"human", "translated"}
    ranks = vs.ranks()
    assert set(ranks.values()) <= {1, 2}
    for variant in vs.variants.values():
        assert "cta_verbs" in variant.annotations
        assert variant.probability is not None


def test_variant_set_all_four(toy_bundle, toy_translator):
    bundle = ModelBundle.fresh()
    bundle.translators = dict(toy_bundle.translators)
    bundle.generator = toy_translator
    bundle.ctr_ranker = toy_bundle.ctr_ranker
    ad = make_ad(titles=("soreness relief",), descriptions=("expert soreness info.",))
    vs = build_variant_set(ad, bundle, html=FIXTURE_PAGE)
    assert set(vs.variants) == {"human", "translated", "generated", "generated_translated"}
    ranks = vs.ranks()
    assert len(ranks) == 4
    assert all(1 <= r <= 4 for r in ranks.values())


def test_variant_set_json_layout(toy_bundle):
    ad = make_ad(titles=("soreness relief",), descriptions=("expert soreness info.",))
    payload = build_variant_set(ad, toy_bundle).to_json()
    assert payload["ad_id"] == ad.id
    human = payload["variants"]["human"]
    assert set(human) >= {"text", "realized", "features", "probability", "rank", "annotations"}
