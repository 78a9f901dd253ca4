import json

import pytest

from adforge import cli


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["synth", "--no-such-flag"])
    assert exc.value.code == 2


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_domain_error_exits_1(tmp_path, capsys):
    code = cli.main(
        ["translate", "--ad-json", "{}", "--models-dir", str(tmp_path)]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert json.loads(err)["code"]


def test_extract_command(tmp_path, capsys):
    page = tmp_path / "page.html"
    page.write_text(
        '<html><head><title>T</title></head><body>'
        '<div class="text"><p>long enough paragraph for extraction here</p></div></body></html>',
        encoding="utf-8",
    )
    code, payload = run(capsys, ["extract", "--html", str(page)])
    assert code == 0
    assert payload["title"] == "T"
    assert len(payload["blocks"]) == 1


def test_analyze_command(capsys):
    code, payload = run(capsys, ["analyze", "--text", "Great coupons - Check now!"])
    assert code == 0
    assert "petty_advantage" in payload["effects"]
    assert "check" in payload["cta_verbs"]
    assert payload["features"]["sentiment"] > 0


def test_synth_twice_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        code, _ = run(
            capsys,
            ["synth", "--out", str(out), "--queries", "6", "--ads-per-query", "6",
             "--seed", "7"],
        )
        assert code == 0
    assert (a / "corpus.jsonl").read_bytes() == (b / "corpus.jsonl").read_bytes()


def test_rank_command_writes_model(tmp_path, capsys):
    code, _ = run(
        capsys,
        ["synth", "--out", str(tmp_path / "d"), "--queries", "6", "--ads-per-query", "6"],
    )
    assert code == 0
    code, payload = run(
        capsys,
        ["rank", "--corpus", str(tmp_path / "d" / "corpus.jsonl"), "--k", "3",
         "--trees", "10", "--models-dir", str(tmp_path / "m")],
    )
    assert code == 0
    assert (tmp_path / "m" / "ranker.json").exists()
    assert len(payload["kt_folds"]) == 3


def test_models_dir_env_var(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ADFORGE_MODELS_DIR", str(tmp_path / "envmodels"))
    code = cli.main(["translate", "--ad-json", json.dumps({
        "id": "x", "query": "q", "domain": "MS", "title": ["t"],
        "description": ["d"], "impressions": 10, "clicks": 1, "url": None,
    })])
    # model dir exists but holds no translator -> domain error, not usage error
    assert code == 1
