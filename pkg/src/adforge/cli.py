"""Command-line entry points.

Exit codes: 0 success, 1 domain error, 2 usage error (argparse default).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import evaluation, extract, features, pipeline, psych, ranker, seq2seq, textproc
from .corpus import Ad, load_corpus
from .errors import AdforgeError, ConfigError
from .pipeline import ModelBundle


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _models_dir(args) -> Path:
    models_dir = args.models_dir or os.environ.get("ADFORGE_MODELS_DIR")
    if not models_dir:
        raise ConfigError("set --models-dir or ADFORGE_MODELS_DIR")
    path = Path(models_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _train_config(args, **overrides) -> seq2seq.TrainConfig:
    values = dict(
        d_emb=args.d_emb,
        d_hid=args.d_hid,
        epochs=args.epochs,
        lr=args.lr,
        max_len=args.max_len,
        min_freq=args.min_freq,
        seed=args.seed,
        loss_target=args.loss_target,
    )
    values.update(overrides)
    return seq2seq.TrainConfig(**values)


def cmd_extract(args) -> None:
    config = extract.ExtractConfig()
    if args.config:
        config = extract.ExtractConfig.from_json(_read_text(args.config))
    content = extract.extract_from_html(_read_text(args.html), config)
    _emit(content.to_json())


def cmd_train_translator(args) -> None:
    ads = load_corpus(args.corpus)
    domain_ads = [ad for ad in ads if ad.domain == args.domain]
    if not domain_ads:
        raise ConfigError(f"corpus has no {args.domain} ads")
    gazetteer = textproc.default_gazetteer()
    pairs = seq2seq.make_translation_pairs(domain_ads, gazetteer, pipeline.concat_text)
    trained = seq2seq.train(pairs, _train_config(args))
    out = _models_dir(args) / f"translator_{args.domain}.adf"
    seq2seq.save_model(trained, out)
    _emit(
        {
            "model": str(out),
            "pairs": len(pairs),
            "epochs_run": len(trained.loss_trace),
            "final_loss": trained.loss_trace[-1] if trained.loss_trace else None,
        }
    )


def cmd_train_generator(args) -> None:
    ads = load_corpus(args.corpus)
    root = Path(args.pages_dir) if args.pages_dir else Path(args.corpus).parent
    by_url: dict[str, list[Ad]] = {}
    for ad in ads:
        if ad.url:
            by_url.setdefault(ad.url, []).append(ad)
    pages = []
    for url, url_ads in by_url.items():
        page_path = root / url
        if not page_path.exists():
            continue
        content = extract.extract_from_html(page_path.read_text(encoding="utf-8"))
        text = " ".join(p for p in [content.title] + content.blocks if p)
        if text.strip():
            pages.append((text, url_ads))
    if not pages:
        raise ConfigError("no resolvable pages found for generator training")
    gazetteer = textproc.default_gazetteer()
    pairs = seq2seq.make_generator_pairs(pages, gazetteer, pipeline.concat_text)
    trained = seq2seq.train(pairs, _train_config(args))
    out = _models_dir(args) / "generator.adf"
    seq2seq.save_model(trained, out)
    _emit(
        {
            "model": str(out),
            "pairs": len(pairs),
            "epochs_run": len(trained.loss_trace),
            "final_loss": trained.loss_trace[-1] if trained.loss_trace else None,
        }
    )


def _load_ad(args) -> Ad:
    if args.ad_file:
        return Ad.from_json(json.loads(_read_text(args.ad_file)))
    if args.ad_json:
        return Ad.from_json(json.loads(args.ad_json))
    raise ConfigError("provide --ad-file or --ad-json")


def cmd_translate(args) -> None:
    bundle = ModelBundle.load(_models_dir(args))
    result = pipeline.run_translator(_load_ad(args), bundle)
    _emit(
        {
            "text": result.text,
            "substitutions": [list(s) for s in result.substitutions],
            "realized": textproc.realize(result.text, list(result.substitutions), bundle.defaults),
        }
    )


def cmd_generate(args) -> None:
    bundle = ModelBundle.load(_models_dir(args))
    html = _read_text(args.html)
    if args.full:
        if not args.domain:
            raise ConfigError("--full needs --domain")
        result = pipeline.run_full(html, args.domain, bundle)
    else:
        result = pipeline.run_generator(html, bundle)
    _emit({"text": result.text, "substitutions": [list(s) for s in result.substitutions]})


def cmd_rank(args) -> None:
    ads = load_corpus(args.corpus)
    dataset = evaluation.dataset_from_ads(ads)
    config = ranker.RankerConfig(
        n_trees=args.trees, shrinkage=args.shrinkage, max_depth=args.depth,
        min_leaf=args.min_leaf, seed=args.seed,
    )
    folds, mean = ranker.cross_validate(dataset, k=args.k, config=config)
    model = ranker.train_lambdamart(dataset, config)
    out = _models_dir(args) / "ranker.json"
    model.save(out)
    _emit({"model": str(out), "kt_folds": folds, "kt_mean": mean})


def cmd_analyze(args) -> None:
    text = args.text if args.text is not None else sys.stdin.read()
    bundle = ModelBundle.load(args.models_dir) if args.models_dir else ModelBundle.fresh()
    result = {
        "features": features.extract_features(text, bundle.lexicons).to_json(),
        "cta_verbs": sorted(psych.detect_cta_verbs(text, bundle.cta_lexicon)),
        "effects": sorted(psych.desire_effects(text, bundle.effects)),
    }
    if bundle.arousal is not None:
        result["arousal"] = bundle.arousal.predict_text(text)
    if bundle.valence is not None:
        result["valence"] = bundle.valence.predict_text(text)
    _emit(result)


def cmd_synth(args) -> None:
    config = evaluation.SynthConfig(
        n_queries=args.queries,
        ads_per_query=args.ads_per_query,
        ms_fraction=args.ms_fraction,
        seed=args.seed,
    )
    ads = evaluation.generate_corpus(config, args.out)
    _emit({"corpus": str(Path(args.out) / "corpus.jsonl"), "ads": len(ads)})


def cmd_eval(args) -> None:
    ads = load_corpus(args.corpus)
    bundle = ModelBundle.load(_models_dir(args))
    config = ranker.RankerConfig(seed=args.seed)
    report = evaluation.offline_eval(
        ads, bundle, k=args.k, config=config, corpus_root=Path(args.corpus).parent
    )
    paths = evaluation.emit_report(report, args.out)
    _emit(
        {
            "report": [str(p) for p in paths],
            "kt_mean": report.kt_mean,
            "kemeny_order": report.kemeny_order,
        }
    )


def cmd_serve(args) -> None:
    import uvicorn

    from .service import create_app
    from .store import CampaignStore

    bundle = ModelBundle.load(_models_dir(args))
    store_dir = Path(args.store_dir)
    store = CampaignStore(store_dir / "campaigns.jsonl")
    ui_dir = args.ui_dir
    if ui_dir is None and Path("frontend/dist").is_dir():
        ui_dir = "frontend/dist"
    app = create_app(bundle, store, ui_dir=ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adforge", description=__doc__)
    parser.add_argument("--config", default=None, help="optional JSON config file")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--models-dir", default=None)
    # the same globals are accepted after the subcommand as well
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", default=argparse.SUPPRESS)
    shared.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    shared.add_argument("--models-dir", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name, **kwargs):
        return sub.add_parser(name, parents=[shared], **kwargs)

    p = add_command("extract", help="extract title and main content from HTML")
    p.add_argument("--html", required=True, help="HTML file path, or - for stdin")
    p.set_defaults(func=cmd_extract)

    def add_train_flags(p):
        p.add_argument("--epochs", type=int, default=30)
        p.add_argument("--d-emb", type=int, default=64)
        p.add_argument("--d-hid", type=int, default=128)
        p.add_argument("--lr", type=float, default=1e-3)
        p.add_argument("--max-len", type=int, default=40)
        p.add_argument("--min-freq", type=int, default=2)
        p.add_argument("--loss-target", type=float, default=None)

    p = add_command("train-translator", help="train a domain translator model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--domain", required=True, choices=["MS", "PH"])
    add_train_flags(p)
    p.set_defaults(func=cmd_train_translator)

    p = add_command("train-generator", help="train the page-to-ad generator model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--pages-dir", default=None)
    add_train_flags(p)
    p.set_defaults(func=cmd_train_generator)

    p = add_command("translate", help="rewrite one ad with the domain translator")
    p.add_argument("--ad-file", default=None)
    p.add_argument("--ad-json", default=None)
    p.set_defaults(func=cmd_translate)

    p = add_command("generate", help="generate an ad from a web page")
    p.add_argument("--html", required=True)
    p.add_argument("--full", action="store_true", help="also run the translator")
    p.add_argument("--domain", choices=["MS", "PH"], default=None)
    p.set_defaults(func=cmd_generate)

    p = add_command("rank", help="train and cross-validate the CTR ranker")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--trees", type=int, default=200)
    p.add_argument("--shrinkage", type=float, default=0.1)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--min-leaf", type=int, default=5)
    p.set_defaults(func=cmd_rank)

    p = add_command("analyze", help="feature and psych annotation for one text")
    p.add_argument("--text", default=None)
    p.set_defaults(func=cmd_analyze)

    p = add_command("synth", help="generate a synthetic corpus with planted CTR signal")
    p.add_argument("--out", required=True)
    p.add_argument("--queries", type=int, default=50)
    p.add_argument("--ads-per-query", type=int, default=6)
    p.add_argument("--ms-fraction", type=float, default=0.5)
    p.set_defaults(func=cmd_synth)

    p = add_command("eval", help="run the offline evaluation harness")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=5)
    p.set_defaults(func=cmd_eval)

    p = add_command("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8337)
    p.add_argument("--store-dir", default="store")
    p.add_argument("--ui-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except AdforgeError as exc:
        print(json.dumps({"code": exc.code, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
