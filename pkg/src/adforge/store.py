"""Append-only campaign store: every mutation is a JSONL record appended
before it is acknowledged, and replaying the log rebuilds identical state."""

from __future__ import annotations

import json
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidTransition, NotFound

STATUSES = ("draft", "reviewed", "exported")


@dataclass
class CampaignItem:
    id: str
    campaign_id: str
    source: dict
    variant_set: dict
    status: str = "draft"
    fills: dict = field(default_factory=dict)
    variant: str | None = None
    finalized_text: str | None = None
    formatted: dict | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "campaign_id": self.campaign_id,
            "source": self.source,
            "variant_set": self.variant_set,
            "status": self.status,
            "fills": self.fills,
            "variant": self.variant,
            "finalized_text": self.finalized_text,
            "formatted": self.formatted,
        }


@dataclass
class Campaign:
    id: str
    name: str
    created_at: str
    item_ids: list[str] = field(default_factory=list)

    def to_json(self, items: dict[str, CampaignItem]) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "created_at": self.created_at,
            "items": [items[i].to_json() for i in self.item_ids],
        }


class CampaignStore:
    """File-backed store with an in-memory index.

    ``id_factory`` and ``clock`` are injectable so tests can pin ids and
    timestamps.
    """

    def __init__(self, path, id_factory=None, clock=None):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._id_factory = id_factory or (lambda: uuid.uuid4().hex[:12])
        self._clock = clock or (lambda: time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))
        self.campaigns: dict[str, Campaign] = {}
        self.items: dict[str, CampaignItem] = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        self._apply(json.loads(line))

    # -- record handling ---------------------------------------------------

    def _append(self, record: dict) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
            fh.flush()
        self._apply(record)

    def _apply(self, record: dict) -> None:
        op = record["op"]
        if op == "create_campaign":
            campaign = Campaign(
                id=record["id"], name=record["name"], created_at=record["created_at"]
            )
            self.campaigns[campaign.id] = campaign
        elif op == "delete_campaign":
            campaign = self.campaigns.pop(record["id"], None)
            if campaign:
                for item_id in campaign.item_ids:
                    self.items.pop(item_id, None)
        elif op == "add_item":
            item = CampaignItem(
                id=record["id"],
                campaign_id=record["campaign_id"],
                source=record["source"],
                variant_set=record["variant_set"],
            )
            self.items[item.id] = item
            self.campaigns[item.campaign_id].item_ids.append(item.id)
        elif op == "finalize_item":
            item = self.items[record["id"]]
            item.status = "reviewed"
            item.fills = record["fills"]
            item.variant = record["variant"]
            item.finalized_text = record["finalized_text"]
            item.formatted = record["formatted"]
        elif op == "export_item":
            self.items[record["id"]].status = "exported"
        else:
            raise ValueError(f"unknown store record op {op!r}")

    # -- public API ----------------------------------------------------------

    def create_campaign(self, name: str) -> Campaign:
        record = {
            "op": "create_campaign",
            "id": self._id_factory(),
            "name": name,
            "created_at": self._clock(),
        }
        self._append(record)
        return self.campaigns[record["id"]]

    def delete_campaign(self, campaign_id: str) -> None:
        self.get_campaign(campaign_id)
        self._append({"op": "delete_campaign", "id": campaign_id})

    def get_campaign(self, campaign_id: str) -> Campaign:
        campaign = self.campaigns.get(campaign_id)
        if campaign is None:
            raise NotFound(f"campaign {campaign_id} not found")
        return campaign

    def add_item(self, campaign_id: str, source: dict, variant_set: dict) -> CampaignItem:
        self.get_campaign(campaign_id)
        record = {
            "op": "add_item",
            "id": self._id_factory(),
            "campaign_id": campaign_id,
            "source": source,
            "variant_set": variant_set,
        }
        self._append(record)
        return self.items[record["id"]]

    def get_item(self, item_id: str) -> CampaignItem:
        item = self.items.get(item_id)
        if item is None:
            raise NotFound(f"item {item_id} not found")
        return item

    def finalize_item(
        self, item_id: str, variant: str, fills: dict, finalized_text: str, formatted: dict
    ) -> CampaignItem:
        item = self.get_item(item_id)
        if item.status == "exported":
            raise InvalidTransition("item already exported")
        identical = (
            item.status == "reviewed"
            and item.fills == fills
            and item.variant == variant
        )
        if not identical:
            self._append(
                {
                    "op": "finalize_item",
                    "id": item_id,
                    "variant": variant,
                    "fills": fills,
                    "finalized_text": finalized_text,
                    "formatted": formatted,
                }
            )
        return item

    def export_item(self, item_id: str) -> CampaignItem:
        item = self.get_item(item_id)
        if item.status == "draft":
            raise InvalidTransition("finalize the item before exporting")
        if item.status == "reviewed":
            self._append({"op": "export_item", "id": item_id})
        return item
