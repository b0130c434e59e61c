import json
import subprocess
import sys

import pytest

from arcorpus.cli import UsageError, main, parse_args


def run(*argv):
    return main(list(map(str, argv)))


@pytest.mark.parametrize(
    "argv,cmd",
    [
        (["clean", "--manifest", "m.json", "--out", "d/"], "clean"),
        (["bpe-train", "--in", "c/", "--merges", "500", "--out", "v.bpe"], "bpe-train"),
        (["stats", "--in", "d/"], "stats"),
        (["encode", "--vocab", "v", "--in", "a", "--out", "b"], "encode"),
        (["decode", "--vocab", "v", "--in", "a", "--out", "b"], "decode"),
        (["validate-charset", "--in", "x"], "validate-charset"),
    ],
)
def test_parse_args(argv, cmd):
    args = parse_args(argv)
    assert args.command == cmd


def test_parse_args_values():
    args = parse_args(["clean", "--manifest", "m.json", "--out", "d/", "--workers", "4", "--shard-size", "10"])
    assert (args.manifest, args.out, args.workers, args.shard_size) == ("m.json", "d/", 4, 10)
    assert parse_args(["bpe-train", "--in", "c/", "--merges", "500", "--out", "v.bpe"]).merges == 500


@pytest.mark.parametrize(
    "argv",
    [
        ["clean"],
        ["clean", "--out", "d"],
        ["bogus"],
        [],
        ["clean", "--manifest", "m", "--out", "d", "--frobnicate"],
        ["clean", "--manifest", "m", "--out", "d", "--workers", "0"],
        ["bpe-train", "--in", "c", "--merges", "-1", "--out", "v"],
        ["bpe-train", "--in", "c", "--merges", "5", "--out", "v", "--unit", "words"],
    ],
)
def test_usage_errors(argv):
    with pytest.raises(UsageError):
        parse_args(argv)
    assert main(argv) == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == "arcorpus 0.1.0 (charset table v1, 44 graphemes)"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "arcorpus", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "charset table v1" in proc.stdout


# --- validate-charset -----------------------------------------------------


def test_validate_copyright(tmp_path, capsys):
    p = tmp_path / "x.txt"
    p.write_text("نص © هنا\n", encoding="utf-8")
    assert run("validate-charset", "--in", p) == 1
    out = capsys.readouterr().out.splitlines()
    assert out == [f"{p}:1:4: U+00A9", "noisy: 1"]


def test_validate_empty(tmp_path, capsys):
    p = tmp_path / "x.txt"
    p.write_bytes(b"")
    assert run("validate-charset", "--in", p) == 0
    assert capsys.readouterr().out.strip() == "noisy: 0"


def test_validate_reports_at_most_100(tmp_path, capsys):
    p = tmp_path / "x.txt"
    p.write_text("©" * 250, encoding="utf-8")
    assert run("validate-charset", "--in", p) == 1
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 101 and out[-1] == "noisy: 250"


def test_validate_invalid_utf8(tmp_path):
    p = tmp_path / "x.txt"
    p.write_bytes(b"\xff")
    assert run("validate-charset", "--in", p) == 1


def test_validate_missing_file(tmp_path):
    assert run("validate-charset", "--in", tmp_path / "nope") == 3


def test_validate_tags_allowed(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("انظر [link] و [mail] 123 😀!\n", encoding="utf-8")
    assert run("validate-charset", "--in", p) == 0


# --- end to end -----------------------------------------------------------


@pytest.fixture()
def corpus(tmp_path):
    (tmp_path / "a.txt").write_text(
        "مرحبا بكم في https://example.com ©\n\nاتصل ٠٥٠١٢٣٤٥٦٧ الآن!\n\n©©\n", encoding="utf-8"
    )
    (tmp_path / "b.jsonl").write_text(
        json.dumps({"id": "1", "text": "<p>السلام عليكم</p> info@site.org"}, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    m = tmp_path / "m.json"
    m.write_text(
        json.dumps(
            {
                "sources": [
                    {"name": "a", "path": "a.txt", "format": "doc-per-block", "dialect": "MSA", "domain": "News"},
                    {"name": "b", "path": "b.jsonl", "format": "jsonl"},
                ]
            }
        ),
        encoding="utf-8",
    )
    return tmp_path


def test_clean_stats_validate_bpe_roundtrip(corpus, capsys):
    out = corpus / "out"
    assert run("clean", "--manifest", corpus / "m.json", "--out", out, "--workers", 1) == 0
    tsv = capsys.readouterr().out
    total = tsv.splitlines()[-1].split("\t")
    assert (total[0], total[1], total[6]) == ("Total", "4", "1")
    assert (out / "run.json").is_file() and (out / "report.md").is_file()
    assert run("validate-charset", "--in", out) == 0
    for shard in out.glob("*.jsonl"):
        assert run("validate-charset", "--in", shard) == 0

    assert run("stats", "--in", out, "--out", corpus / "st") == 0
    stats_tsv = (corpus / "st" / "report.tsv").read_text(encoding="utf-8").splitlines()
    assert stats_tsv[-1].startswith("Total\t3\t")

    assert run("bpe-train", "--in", out, "--merges", 30, "--out", corpus / "v.bpe", "--workers", 2) == 0
    assert run("encode", "--vocab", corpus / "v.bpe", "--in", out / "a-00000.jsonl", "--out", corpus / "ids.txt") == 0
    assert run("decode", "--vocab", corpus / "v.bpe", "--in", corpus / "ids.txt", "--out", corpus / "back.txt") == 0
    texts = [json.loads(x)["text"] for x in (out / "a-00000.jsonl").read_text(encoding="utf-8").splitlines()]
    assert (corpus / "back.txt").read_text(encoding="utf-8").splitlines() == texts


def test_bpe_worker_count_independent(corpus):
    out = corpus / "out"
    assert run("clean", "--manifest", corpus / "m.json", "--out", out, "--workers", 1) == 0
    run("bpe-train", "--in", out, "--merges", 40, "--out", corpus / "v1.bpe", "--workers", 1)
    run("bpe-train", "--in", out, "--merges", 40, "--out", corpus / "v4.bpe", "--workers", 4)
    assert (corpus / "v1.bpe").read_bytes() == (corpus / "v4.bpe").read_bytes()


def test_clean_with_config_and_overrides(corpus):
    cfg = corpus / "cfg.json"
    cfg.write_text(json.dumps({"mask": {"url_tag": "[url]"}, "max_run": 3}), encoding="utf-8")
    cs = corpus / "cs.tsv"
    cs.write_text("ب\tB\tConsonant\n", encoding="utf-8")
    out = corpus / "out"
    assert run("clean", "--manifest", corpus / "m.json", "--out", out, "--config", cfg, "--workers", 1) == 0
    assert "[url]" in (out / "a-00000.jsonl").read_text(encoding="utf-8")
    assert run("clean", "--manifest", corpus / "m.json", "--out", corpus / "o2", "--charset", cs) == 0


def test_clean_external_segmenter(corpus):
    seg = f"{sys.executable} -c \"import sys; print(' + '.join(sys.stdin.read().split()))\""
    out = corpus / "out"
    assert run("clean", "--manifest", corpus / "m.json", "--out", out, "--workers", 1, "--segmenter-cmd", seg) == 0
    report = json.loads((out / "run.json").read_text(encoding="utf-8"))
    plain = corpus / "plain"
    run("clean", "--manifest", corpus / "m.json", "--out", plain, "--workers", 1)
    base = json.loads((plain / "run.json").read_text(encoding="utf-8"))
    # the adapter inserts a "+" between neighbouring segments
    assert report["total"]["tokens"] > base["total"]["tokens"]


def test_clean_error_exit_codes(corpus, capsys):
    bad = corpus / "bad.json"
    bad.write_text('{"sources": [{"name": "a", "path": "a.txt", "format": "csv"}]}', encoding="utf-8")
    assert run("clean", "--manifest", bad, "--out", corpus / "o") == 2
    bad.write_text('{"sources": [{"name": "z", "path": "missing.txt", "format": "plain"}]}', encoding="utf-8")
    assert run("clean", "--manifest", bad, "--out", corpus / "o") == 3
    assert run("clean", "--manifest", corpus / "nope.json", "--out", corpus / "o") == 3
    cfg = corpus / "cfg.json"
    cfg.write_text('{"max_run": 0}', encoding="utf-8")
    assert run("clean", "--manifest", corpus / "m.json", "--out", corpus / "o", "--config", cfg) == 2


def test_decode_errors(corpus):
    from arcorpus.tokenize import bpe_train

    v = corpus / "v.bpe"
    bpe_train(["ab"], 0).save(v)
    ids = corpus / "ids.txt"
    ids.write_text("97 98\n", encoding="utf-8")
    assert run("decode", "--vocab", v, "--in", ids, "--out", corpus / "o.txt") == 0
    assert (corpus / "o.txt").read_text() == "ab\n"
    ids.write_text("9999\n", encoding="utf-8")
    assert run("decode", "--vocab", v, "--in", ids, "--out", corpus / "o.txt") == 2
    ids.write_text("x\n", encoding="utf-8")
    assert run("decode", "--vocab", v, "--in", ids, "--out", corpus / "o.txt") == 2
    ids.write_text("216\n", encoding="utf-8")
    assert run("decode", "--vocab", v, "--in", ids, "--out", corpus / "o.txt") == 1
    v.write_text("garbage\n", encoding="utf-8")
    assert run("decode", "--vocab", v, "--in", ids, "--out", corpus / "o.txt") == 2
