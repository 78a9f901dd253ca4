"""Lenient HTML parsing and Arc90-style main-content extraction.

A page is parsed into a :class:`DomNode` tree, every parent of a ``<p>``
element is scored against positive/negative id/class attribute lists
(+1 per positive match, -2 per negative match), and the page title plus
the two best-scoring parents' paragraph text are returned.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

from .errors import EmptyDocument

# Elements with no content model; they never go on the open stack.
VOID_TAGS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

# Block-level tags that implicitly terminate an open <p>.
_P_CLOSERS = {
    "p", "div", "section", "article", "aside", "ul", "ol", "li", "table",
    "blockquote", "footer", "header", "form", "h1", "h2", "h3", "h4", "h5",
    "h6", "pre", "main", "nav",
}

# Subtrees whose character data is never visible content.
NONCONTENT_TAGS = {"script", "style", "noscript", "template"}

DEFAULT_POSITIVE = frozenset(
    {"content", "text", "title", "body", "article", "page", "description"}
)
DEFAULT_NEGATIVE = frozenset(
    {"footer", "copyright", "location", "style", "comment", "meta"}
)

_WS = re.compile(r"\s+")


def _collapse(text: str) -> str:
    return _WS.sub(" ", text).strip()


@dataclass
class DomNode:
    """One element of the parsed tree; ``text`` holds direct character data."""

    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list["DomNode"] = field(default_factory=list)
    text: str = ""

    def attr(self, name: str) -> str | None:
        """Case-insensitive attribute lookup."""
        return self.attrs.get(name.lower())

    def iter(self):
        """Yield this node and all descendants in document order."""
        yield self
        for child in self.children:
            yield from child.iter()

    def visible_text(self) -> str:
        """Whitespace-normalized subtree text, skipping script/style subtrees."""
        parts: list[str] = []
        self._collect_text(parts)
        return _collapse(" ".join(parts))

    def _collect_text(self, parts: list[str]) -> None:
        if self.tag in NONCONTENT_TAGS:
            return
        if self.text:
            parts.append(self.text)
        for child in self.children:
            child._collect_text(parts)

    def selector(self) -> str:
        """A css-flavoured label for audit output, e.g. ``div#main.article``."""
        sel = self.tag
        node_id = self.attrs.get("id")
        if node_id:
            sel += "#" + node_id
        classes = self.attrs.get("class", "").split()
        if classes:
            sel += "." + ".".join(classes)
        return sel


@dataclass(frozen=True)
class AttributeLists:
    positive: frozenset[str] = DEFAULT_POSITIVE
    negative: frozenset[str] = DEFAULT_NEGATIVE

    def __post_init__(self):
        if self.positive & self.negative:
            raise ValueError("positive and negative attribute lists overlap")


@dataclass
class ParentScore:
    node: DomNode
    points: int
    order: int  # document-order index of first visit


@dataclass
class ExtractedContent:
    title: str
    blocks: list[str]
    source_scores: list[ParentScore]

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "blocks": list(self.blocks),
            "scores": [
                {"selector": s.node.selector(), "points": s.points}
                for s in self.source_scores
            ],
        }


@dataclass(frozen=True)
class ExtractConfig:
    lists: AttributeLists = AttributeLists()
    min_parent_chars: int = 25

    @classmethod
    def from_json(cls, payload: str | dict) -> "ExtractConfig":
        data = json.loads(payload) if isinstance(payload, str) else payload
        lists = AttributeLists(
            positive=frozenset(w.lower() for w in data.get("positive", DEFAULT_POSITIVE)),
            negative=frozenset(w.lower() for w in data.get("negative", DEFAULT_NEGATIVE)),
        )
        return cls(lists=lists, min_parent_chars=int(data.get("min_parent_chars", 25)))


class _TreeBuilder(HTMLParser):
    """Builds a DomNode tree, auto-closing misnested or unclosed tags."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = DomNode(tag="document")
        self.stack: list[DomNode] = [self.root]
        self.saw_element = False

    def handle_starttag(self, tag, attrs):
        tag = tag.lower()
        self.saw_element = True
        if tag in _P_CLOSERS:
            self._implicit_close(tag)
        node = DomNode(tag=tag, attrs={k.lower(): (v or "") for k, v in attrs})
        self.stack[-1].children.append(node)
        if tag not in VOID_TAGS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        tag = tag.lower()
        self.saw_element = True
        node = DomNode(tag=tag, attrs={k.lower(): (v or "") for k, v in attrs})
        self.stack[-1].children.append(node)

    def handle_endtag(self, tag):
        tag = tag.lower()
        if not any(n.tag == tag for n in self.stack[1:]):
            return  # stray close tag: ignore
        while len(self.stack) > 1:
            open_node = self.stack.pop()
            if open_node.tag == tag:
                break

    def handle_data(self, data):
        if data:
            node = self.stack[-1]
            node.text = node.text + data if node.text else data

    def _implicit_close(self, tag: str) -> None:
        # An open <p> cannot contain block-level content; <li> cannot nest
        # directly in another <li>.
        for i in range(len(self.stack) - 1, 0, -1):
            open_tag = self.stack[i].tag
            if open_tag == "p" or (open_tag == "li" and tag == "li"):
                del self.stack[i:]
                return
            if open_tag not in ("a", "span", "b", "i", "em", "strong", "u", "small"):
                return  # stop at the nearest real container


def parse_html(raw: str | bytes) -> DomNode:
    """Parse arbitrary HTML into a DomNode tree rooted at a synthetic node.

    Raises :class:`EmptyDocument` when the input holds no element at all.
    """
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8", errors="replace")
    builder = _TreeBuilder()
    builder.feed(raw)
    builder.close()
    if not builder.saw_element:
        raise EmptyDocument("input contains no HTML element")
    return builder.root


def score_parents(root: DomNode, lists: AttributeLists | None = None) -> list[ParentScore]:
    """Score every distinct parent of a ``<p>`` element.

    +1 for each positive list entry, -2 for each negative list entry found
    (case-insensitively, by substring) in the parent's ``id`` or ``class``
    attribute values. Each list entry counts at most once per parent.
    """
    lists = lists or AttributeLists()
    scores: list[ParentScore] = []
    seen: dict[int, ParentScore] = {}
    order = 0
    for node, parent in _walk_with_parents(root):
        if node.tag != "p" or parent is None:
            continue
        key = id(parent)
        if key not in seen:
            seen[key] = ParentScore(node=parent, points=_score_node(parent, lists), order=order)
            scores.append(seen[key])
            order += 1
    return scores


def _walk_with_parents(root: DomNode):
    """(node, parent) pairs in document order."""
    stack: list[tuple[DomNode, DomNode | None]] = [(root, None)]
    while stack:
        node, parent = stack.pop()
        yield node, parent
        for child in reversed(node.children):
            stack.append((child, node))


def _score_node(node: DomNode, lists: AttributeLists) -> int:
    haystacks = []
    for name in ("id", "class"):
        value = node.attrs.get(name)
        if value:
            haystacks.append(value.lower())
    points = 0
    for entry in lists.positive:
        if any(entry in h for h in haystacks):
            points += 1
    for entry in lists.negative:
        if any(entry in h for h in haystacks):
            points -= 2
    return points


def _first_text(root: DomNode, tag: str) -> str:
    for node in root.iter():
        if node.tag == tag:
            return node.visible_text()
    return ""


def _paragraph_text(parent: DomNode) -> str:
    parts = [child.visible_text() for child in parent.children if child.tag == "p"]
    return _collapse(" ".join(p for p in parts if p))


def extract_content(
    root: DomNode,
    lists: AttributeLists | None = None,
    min_parent_chars: int = 25,
) -> ExtractedContent:
    """Title plus the paragraph text of the two best-scoring parents.

    Ties break toward the parent seen earlier in document order; parents
    with less than ``min_parent_chars`` of visible text are skipped.
    """
    scores = score_parents(root, lists)
    title = _first_text(root, "title") or _first_text(root, "h1")
    candidates = [
        s for s in scores if len(s.node.visible_text()) >= min_parent_chars
    ]
    candidates.sort(key=lambda s: (-s.points, s.order))
    blocks = []
    for cand in candidates[:2]:
        text = _paragraph_text(cand.node)
        if text:
            blocks.append(text)
    return ExtractedContent(title=title, blocks=blocks, source_scores=scores)


def extract_from_html(
    raw: str | bytes, config: ExtractConfig | None = None
) -> ExtractedContent:
    """Convenience wrapper: parse then extract with one config object."""
    config = config or ExtractConfig()
    root = parse_html(raw)
    return extract_content(root, config.lists, config.min_parent_chars)
