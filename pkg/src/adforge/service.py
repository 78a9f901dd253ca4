"""HTTP JSON facade over the pipeline plus the campaign review workflow."""

from __future__ import annotations

import urllib.error
import urllib.request
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import errors, extract, features, pipeline, psych, textproc
from .corpus import Ad
from .errors import AdforgeError, FetchFailed, UnfilledPlaceholder
from .pipeline import ModelBundle
from .store import CampaignStore

_STATUS_BY_CODE = {
    "NotFound": 404,
    "InvalidTransition": 409,
    "UnfilledPlaceholder": 422,
    "NoContent": 422,
    "FetchFailed": 502,
    "ModelUnavailable": 503,
    "NoModelForDomain": 503,
    "NonFinite": 500,
}


def _status_for(err: AdforgeError) -> int:
    return _STATUS_BY_CODE.get(err.code, 400)


def default_fetcher(url: str, timeout: float = 10.0) -> str:
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            return resp.read().decode("utf-8", errors="replace")
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise FetchFailed(f"could not fetch {url}: {exc}") from exc


def create_app(
    bundle: ModelBundle,
    store: CampaignStore,
    fetcher=default_fetcher,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="adforge", docs_url=None, redoc_url=None)

    @app.exception_handler(AdforgeError)
    async def domain_error(_: Request, exc: AdforgeError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"code": exc.code, "message": str(exc)},
        )

    def _html_from(payload: dict) -> str:
        if payload.get("html"):
            return payload["html"]
        if payload.get("url"):
            return fetcher(payload["url"])
        raise errors.ConfigError("provide either 'html' or 'url'")

    def _ad_from(payload: dict) -> Ad:
        if "ad" not in payload:
            raise errors.ConfigError("missing 'ad' object")
        return Ad.from_json(payload["ad"])

    @app.get("/v1/health")
    async def health():
        return {
            "status": "ok",
            "translators": sorted(bundle.translators),
            "generator": bundle.generator is not None,
            "ranker": bundle.ctr_ranker is not None,
        }

    @app.post("/v1/extract")
    async def extract_route(payload: dict):
        content = extract.extract_from_html(_html_from(payload))
        return content.to_json()

    @app.post("/v1/translate")
    async def translate_route(payload: dict):
        result = pipeline.run_translator(_ad_from(payload), bundle)
        return {"text": result.text, "substitutions": [list(s) for s in result.substitutions]}

    @app.post("/v1/generate")
    async def generate_route(payload: dict):
        html = _html_from(payload)
        if payload.get("full"):
            domain = payload.get("domain")
            if domain not in ("MS", "PH"):
                raise errors.ConfigError("full generation needs domain MS or PH")
            result = pipeline.run_full(html, domain, bundle)
        else:
            result = pipeline.run_generator(html, bundle)
        return {"text": result.text, "substitutions": [list(s) for s in result.substitutions]}

    @app.post("/v1/variants")
    async def variants_route(payload: dict):
        ad = _ad_from(payload)
        html = payload.get("html")
        if html is None and ad.url and payload.get("fetch_url"):
            html = fetcher(ad.url)
        return pipeline.build_variant_set(ad, bundle, html=html).to_json()

    @app.post("/v1/analyze")
    async def analyze_route(payload: dict):
        text = payload.get("text", "")
        vector = features.extract_features(text, bundle.lexicons)
        result = {
            "features": vector.to_json(),
            "cta_verbs": sorted(psych.detect_cta_verbs(text, bundle.cta_lexicon)),
            "effects": sorted(psych.desire_effects(text, bundle.effects)),
        }
        if bundle.arousal is not None:
            result["arousal"] = bundle.arousal.predict_text(text)
        if bundle.valence is not None:
            result["valence"] = bundle.valence.predict_text(text)
        return result

    # -- campaigns ---------------------------------------------------------

    @app.post("/v1/campaigns", status_code=201)
    async def create_campaign(payload: dict):
        name = payload.get("name", "").strip()
        if not name:
            raise errors.ConfigError("campaign needs a non-empty name")
        campaign = store.create_campaign(name)
        return campaign.to_json(store.items)

    @app.get("/v1/campaigns")
    async def list_campaigns():
        return [c.to_json(store.items) for c in store.campaigns.values()]

    @app.get("/v1/campaigns/{campaign_id}")
    async def get_campaign(campaign_id: str):
        return store.get_campaign(campaign_id).to_json(store.items)

    @app.delete("/v1/campaigns/{campaign_id}", status_code=204)
    async def delete_campaign(campaign_id: str):
        store.delete_campaign(campaign_id)

    @app.post("/v1/campaigns/{campaign_id}/items", status_code=201)
    async def add_item(campaign_id: str, payload: dict):
        store.get_campaign(campaign_id)
        if "ad" in payload:
            ad = _ad_from(payload)
            html = payload.get("html")
            if html is None and payload.get("url"):
                html = fetcher(payload["url"])
            source = {"kind": "ad", "ad": ad.to_json()}
        else:
            html = _html_from(payload)
            domain = payload.get("domain", "MS")
            generated = pipeline.run_generator(html, bundle)
            realized = textproc.realize(
                generated.text, list(generated.substitutions), bundle.defaults
            )
            formatted = pipeline.format_ad(
                generated.text, list(generated.substitutions), bundle.defaults
            )
            ad = Ad(
                id=f"page-{store._id_factory()}",
                query=payload.get("query", "page submission"),
                domain=domain,
                titles=formatted.titles or [realized[:30]],
                descriptions=formatted.descriptions or [realized[:90]],
                impressions=1,
                clicks=0,
                url=payload.get("url"),
            )
            source = {"kind": "page", "url": payload.get("url"), "domain": domain}
        variant_set = pipeline.build_variant_set(ad, bundle, html=html)
        item = store.add_item(campaign_id, source, variant_set.to_json())
        return item.to_json()

    @app.get("/v1/campaigns/{campaign_id}/items")
    async def list_items(campaign_id: str):
        campaign = store.get_campaign(campaign_id)
        return [store.items[i].to_json() for i in campaign.item_ids]

    @app.get("/v1/items/{item_id}")
    async def get_item(item_id: str):
        return store.get_item(item_id).to_json()

    @app.post("/v1/items/{item_id}/finalize")
    async def finalize_item(item_id: str, payload: dict):
        item = store.get_item(item_id)
        fills = dict(payload.get("fills", {}))
        variants = item.variant_set["variants"]
        variant_name = payload.get("variant") or _best_variant(variants)
        if variant_name not in variants:
            raise errors.NotFound(f"item has no variant {variant_name!r}")
        chosen = variants[variant_name]
        merged = {**bundle.defaults, **fills}
        try:
            finalized_text = textproc.realize(chosen["text"], [], merged)
        except errors.MissingDefault as exc:
            raise UnfilledPlaceholder(str(exc)) from exc
        formatted = pipeline.format_ad(chosen["text"], [], merged)
        store.finalize_item(
            item_id, variant_name, fills, finalized_text, formatted.to_json()
        )
        return store.get_item(item_id).to_json()

    @app.get("/v1/items/{item_id}/export")
    async def export_item(item_id: str):
        item = store.export_item(item_id)
        return {
            "id": item.id,
            "campaign_id": item.campaign_id,
            "variant": item.variant,
            "finalized_text": item.finalized_text,
            "title": item.formatted["title"],
            "description": item.formatted["description"],
            "warnings": item.formatted["warnings"],
        }

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _best_variant(variants: dict) -> str:
    ranked = [
        (v["rank"], pipeline.VARIANT_ORDER.index(name), name)
        for name, v in variants.items()
        if v.get("rank") is not None
    ]
    if ranked:
        return min(ranked)[2]
    for name in pipeline.VARIANT_ORDER:
        if name in variants:
            return name
    raise errors.NotFound("item has no variants")
