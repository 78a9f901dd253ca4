"""The ad corpus model: one JSONL record per ad, grouped by search query."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigError

DOMAINS = ("MS", "PH")

MAX_TITLES = 3
MAX_DESCRIPTIONS = 2


@dataclass
class Ad:
    id: str
    query: str
    domain: str
    titles: list[str]
    descriptions: list[str]
    impressions: int
    clicks: int
    url: str | None = None

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ConfigError(f"unknown domain {self.domain!r}")
        if len(self.titles) > MAX_TITLES or len(self.descriptions) > MAX_DESCRIPTIONS:
            raise ConfigError(f"ad {self.id}: too many title/description fields")
        if not any(t.strip() for t in self.titles) or not any(
            d.strip() for d in self.descriptions
        ):
            raise ConfigError(f"ad {self.id}: needs at least one title and one description")
        if self.clicks > self.impressions:
            raise ConfigError(f"ad {self.id}: clicks exceed impressions")

    def ctr(self) -> float:
        if self.impressions <= 0:
            raise ConfigError(f"ad {self.id}: no impressions")
        return self.clicks / self.impressions

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "query": self.query,
            "domain": self.domain,
            "title": list(self.titles),
            "description": list(self.descriptions),
            "impressions": self.impressions,
            "clicks": self.clicks,
            "url": self.url,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Ad":
        try:
            return cls(
                id=str(data["id"]),
                query=data["query"],
                domain=data["domain"],
                titles=list(data["title"]),
                descriptions=list(data["description"]),
                impressions=int(data["impressions"]),
                clicks=int(data["clicks"]),
                url=data.get("url"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed ad record: {exc}") from exc


def load_corpus(path) -> list[Ad]:
    ads = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                ads.append(Ad.from_json(json.loads(line)))
    return ads


def save_corpus(ads: list[Ad], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ad in ads:
            fh.write(json.dumps(ad.to_json(), sort_keys=True) + "\n")


def group_by_query(ads: list[Ad]) -> dict[str, list[Ad]]:
    groups: dict[str, list[Ad]] = {}
    for ad in ads:
        groups.setdefault(ad.query, []).append(ad)
    return groups
