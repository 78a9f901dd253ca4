"""Training-pair construction for the translator and generator roles."""

from __future__ import annotations

from dataclasses import dataclass

from .. import textproc
from ..corpus import Ad, group_by_query
from ..errors import NoPairs


@dataclass(frozen=True)
class TextPair:
    """A (source, target) example in normalized text form."""

    source: str
    target: str
    query_id: str


@dataclass(frozen=True)
class TrainingPair:
    """An indexed example; both sides wrapped in <sos>/<eos>."""

    source: list[int]
    target: list[int]
    query_id: str


def _normalized(ad: Ad, gazetteer: textproc.Gazetteer, concat) -> str:
    return textproc.normalize(concat(ad), gazetteer, source_id=ad.id).text


def make_translation_pairs(
    ads: list[Ad],
    gazetteer: textproc.Gazetteer,
    concat,
) -> list[TextPair]:
    """Every ordered same-query ad pair whose source CTR is strictly below
    the target CTR. Ties contribute nothing.

    ``concat`` maps an Ad to its single-paragraph text.
    """
    pairs: list[TextPair] = []
    norm_cache: dict[str, str] = {}

    def norm(ad: Ad) -> str:
        if ad.id not in norm_cache:
            norm_cache[ad.id] = _normalized(ad, gazetteer, concat)
        return norm_cache[ad.id]

    for query, group in group_by_query(ads).items():
        for low in group:
            for high in group:
                if low.ctr() < high.ctr():
                    pairs.append(TextPair(source=norm(low), target=norm(high), query_id=query))
    if not pairs:
        raise NoPairs("no query produced a strictly CTR-ordered ad pair")
    return pairs


def make_generator_pairs(
    pages: list[tuple[str, list[Ad]]],
    gazetteer: textproc.Gazetteer,
    concat,
) -> list[TextPair]:
    """One pair per page: extracted content -> the page's best-CTR ad.

    CTR ties break toward more impressions, then the lexicographically
    smaller ad id. ``pages`` holds (extracted content text, ads) tuples.
    """
    if not pages:
        raise NoPairs("no pages supplied")
    pairs = []
    for page_text, ads in pages:
        if not ads:
            raise NoPairs("page without ads")
        best = min(ads, key=lambda a: (-a.ctr(), -a.impressions, a.id))
        source = textproc.normalize(page_text, gazetteer).text
        pairs.append(
            TextPair(source=source, target=_normalized(best, gazetteer, concat), query_id=best.query)
        )
    return pairs


def tokens_of(normalized_text: str) -> list[str]:
    return [t.surface for t in textproc.tokenize(normalized_text)]
