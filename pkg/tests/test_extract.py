import pytest
from hypothesis import given
from hypothesis import strategies as st

from adforge import extract
from adforge.errors import EmptyDocument
from adforge.extract import AttributeLists, extract_content, parse_html, score_parents

# Six fixture pages with hand-traced Arc90 scores. Each parent's points
# are the number of positive-list substrings in its id/class minus twice
# the number of negative-list substrings.
FIXTURES = {
    # fixture: (html, expected {selector: points}, expected title, expected blocks)
    "basic": (
        """<html><head><title>Foo</title></head><body>
        <div class="main-content"><p>This paragraph carries plenty of readable text.</p>
        <p>And a second paragraph also full of text.</p></div>
        <div class="footer"><p>short</p></div>
        </body></html>""",
        {"div.main-content": 1, "div.footer": -2},
        "Foo",
        ["This paragraph carries plenty of readable text. And a second paragraph also full of text."],
    ),
    "tie_document_order": (
        """<html><head><title>Tie</title></head><body>
        <div class="text" id="second-one"><p>Second block but first in document order here.</p></div>
        <div class="text" id="zzz"><p>Another equally scored block of readable text.</p></div>
        </body></html>""",
        {"div#second-one.text": 1, "div#zzz.text": 1},
        "Tie",
        [
            "Second block but first in document order here.",
            "Another equally scored block of readable text.",
        ],
    ),
    "mixed_signs": (
        """<html><head><title>Mixed</title></head><body>
        <div class="content footer"><p>Positive and negative classes on one long parent.</p></div>
        <div id="page-body"><p>This parent matches two different positive entries.</p></div>
        <div class="copyright style comment"><p>Triple negative parent with enough text to pass.</p></div>
        </body></html>""",
        {"div.content.footer": 1 - 2, "div#page-body": 2, "div.copyright.style.comment": -6},
        "Mixed",
        [
            "This parent matches two different positive entries.",
            "Positive and negative classes on one long parent.",
        ],
    ),
    "no_paragraphs": (
        "<html><head><title>Empty</title></head><body><div>no paragraphs at all</div></body></html>",
        {},
        "Empty",
        [],
    ),
    "nested_and_script": (
        """<html><head><title>Nested</title></head><body>
        <div class="article"><div class="description">
        <p>Only the immediate parent of a paragraph is scored.</p>
        <script>var ignored = "this script text is not visible content";</script>
        </div></div>
        </body></html>""",
        {"div.description": 1},
        "Nested",
        ["Only the immediate parent of a paragraph is scored."],
    ),
    "h1_and_case": (
        """<html><body><h1>Heading Title</h1>
        <div id="MAIN-CONTENT"><p>Attribute matching is case-insensitive for values.</p></div>
        <div CLASS="FOOTER"><p>Uppercase negative class on a long enough parent.</p></div>
        </body></html>""",
        {"div#MAIN-CONTENT": 1, "div.FOOTER": -2},
        "Heading Title",
        [
            "Attribute matching is case-insensitive for values.",
            "Uppercase negative class on a long enough parent.",
        ],
    ),
}


def test_parse_well_formed():
    root = parse_html("<div><p>hi</p></div>")
    divs = [n for n in root.iter() if n.tag == "div"]
    assert len(divs) == 1
    assert [c.tag for c in divs[0].children] == ["p"]
    assert divs[0].children[0].text == "hi"


def test_parse_auto_close_p():
    root = parse_html("<div><p>a<p>b</div>")
    div = next(n for n in root.iter() if n.tag == "div")
    assert [c.tag for c in div.children] == ["p", "p"]
    assert [c.text for c in div.children] == ["a", "b"]


def test_parse_empty_raises():
    with pytest.raises(EmptyDocument):
        parse_html("")
    with pytest.raises(EmptyDocument):
        parse_html("just character data, no elements")


def test_parse_stray_end_tag_ignored():
    root = parse_html("<div></span><p>x</p></div>")
    div = next(n for n in root.iter() if n.tag == "div")
    assert [c.tag for c in div.children] == ["p"]


def test_parse_bytes_lossy():
    root = parse_html(b"<div><p>caf\xc3\xa9 \xff</p></div>")
    p = next(n for n in root.iter() if n.tag == "p")
    assert "café" in p.text


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_scores_hand_traced(name):
    html, expected, _, _ = FIXTURES[name]
    scores = score_parents(parse_html(html))
    got = {s.node.selector(): s.points for s in scores}
    assert got == expected


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_extraction(name):
    html, _, title, blocks = FIXTURES[name]
    content = extract_content(parse_html(html))
    assert content.title == title
    assert content.blocks == blocks


def test_blocks_never_exceed_two():
    html = "<body>" + "".join(
        f'<div class="text" id="d{i}"><p>readable paragraph number {i} with enough text</p></div>'
        for i in range(6)
    ) + "</body>"
    content = extract_content(parse_html(html))
    assert len(content.blocks) <= 2


def test_min_parent_chars_filter():
    html = '<body><div class="content"><p>tiny</p></div></body>'
    content = extract_content(parse_html(html))
    assert content.blocks == []
    # still present in the audit scores
    assert len(content.source_scores) == 1


def test_scoring_determinism():
    html, _, _, _ = FIXTURES["mixed_signs"]
    a = [(s.node.selector(), s.points, s.order) for s in score_parents(parse_html(html))]
    b = [(s.node.selector(), s.points, s.order) for s in score_parents(parse_html(html))]
    assert a == b


def test_each_list_entry_counts_once_per_parent():
    # "content" appears in both id and class: one entry may count only once
    html = '<body><div id="content" class="content"><p>enough text to be a candidate</p></div></body>'
    (score,) = score_parents(parse_html(html))
    assert score.points == 1


POS_WORDS = sorted(extract.DEFAULT_POSITIVE)
NEG_WORDS = sorted(extract.DEFAULT_NEGATIVE)


@given(
    pos=st.lists(st.sampled_from(POS_WORDS), max_size=4),
    neg=st.lists(st.sampled_from(NEG_WORDS), max_size=4),
)
def test_score_additivity_bruteforce(pos, neg):
    classes = " ".join(pos + neg)
    html = f'<body><div class="{classes}"><p>x</p></div></body>'
    (score,) = score_parents(parse_html(html))
    matched_pos = {w for w in POS_WORDS if w in classes}
    matched_neg = {w for w in NEG_WORDS if w in classes}
    assert score.points == len(matched_pos) - 2 * len(matched_neg)


@given(
    base=st.lists(st.sampled_from(POS_WORDS + NEG_WORDS), max_size=3),
    extra_pos=st.sampled_from(POS_WORDS),
    extra_neg=st.sampled_from(NEG_WORDS),
)
def test_score_monotonicity(base, extra_pos, extra_neg):
    def points(classes: list[str]) -> int:
        html = f'<body><div class="{" ".join(classes)}"><p>x</p></div></body>'
        (score,) = score_parents(parse_html(html))
        return score.points

    baseline = points(base)
    assert points(base + [extra_pos]) >= baseline
    assert points(base + [extra_neg]) <= baseline


def test_custom_attribute_lists_config():
    config = extract.ExtractConfig.from_json(
        '{"positive": ["maincol"], "negative": ["sidebar"], "min_parent_chars": 10}'
    )
    html = (
        '<body><div class="maincol"><p>custom positive wins</p></div>'
        '<div class="sidebar"><p>custom negative loses</p></div></body>'
    )
    content = extract.extract_from_html(html, config)
    got = {s.node.selector(): s.points for s in content.source_scores}
    assert got == {"div.maincol": 1, "div.sidebar": -2}


def test_overlapping_lists_rejected():
    with pytest.raises(ValueError):
        AttributeLists(positive=frozenset({"x"}), negative=frozenset({"x"}))
