import json

import pytest
import yaml

from corpusforge.errors import ConfigError, StageError
from corpusforge.pipeline import (
    BoilerplateRules,
    IngestError,
    Manifest,
    config_from_dict,
    fisher_yates,
    ingest,
    load_config,
    resolve_sizes,
    run,
    split_corpus,
    strip_markup,
)

DOC = {"id": "d", "src": "a.txt", "tgt": "b.txt"}


# ---------------------------------------------------------------- ingest

def test_strip_markup_examples():
    assert strip_markup(b"<p>Hi</p>") == "Hi"
    rules = BoilerplateRules(verse_numbers=True)
    assert strip_markup("12 In the beginning…".encode(), rules) == "In the beginning…"
    plain = "line one\n  line two \n".encode()
    assert strip_markup(plain) == plain.decode()


def test_html_structure():
    raw = (b"<html><head><title>x</title></head><body><script>var a;</script>"
           b"<p>One &amp; two</p><!-- c --><div>Three<br>four</div></body></html>")
    assert strip_markup(raw) == "One & two\nThree\nfour"
    assert strip_markup('<p title="a>b">x &lt;y&gt; &#4608;</p><style>p{}</style>z'.encode()) == "x <y> ሀ\nz"


def test_verse_number_forms():
    rules = BoilerplateRules(verse_numbers=True)
    text = "1:2 a\n3. b\n፲፪ ሐ\n2024 stays unless spaced\nno number"
    assert strip_markup(text.encode(), rules).splitlines() == ["a", "b", "ሐ", "stays unless spaced", "no number"]


def test_drop_and_strip_rules():
    rules = BoilerplateRules(drop=("^Copyright ",), strip=(r"\[\d+\]",))
    res = ingest("Body[1] text\nCopyright 2020\n[2]\n".encode(), rules)
    assert res.text == "Body text"
    assert res.dropped_lines == 2


def test_bad_rule_regex():
    with pytest.raises(ConfigError):
        BoilerplateRules(drop=("(",))
    with pytest.raises(ConfigError, match="boilerplate"):
        config_from_dict({"documents": [{**DOC, "rules": {"drop": ["("]}}], "seed": 1})


def test_decode_offset():
    with pytest.raises(IngestError) as err:
        strip_markup(b"abc\xffdef")
    assert err.value.offset == 3 and "byte offset 3" in str(err.value)


# ---------------------------------------------------------------- split

def test_fisher_yates_is_a_permutation():
    order = fisher_yates(1000, 3)
    assert sorted(order) == list(range(1000))
    assert order == fisher_yates(1000, 3) and order != fisher_yates(1000, 4)


def test_headline_split():
    sizes = (140_000, 2864, 2500)
    train, dev, test = split_corpus(range(145_364), sizes, seed=1)
    assert (len(train), len(dev), len(test)) == sizes
    assert sorted(train + dev + test) == list(range(145_364))
    assert resolve_sizes(145_364, None, 2864, 2500) == sizes


def test_split_determinism_and_errors():
    items = list(range(20))
    assert split_corpus(items, (10, 5, 5), 9) == split_corpus(items, (10, 5, 5), 9)
    with pytest.raises(ConfigError):
        split_corpus(list(range(5)), (10, 1, 1), 0)
    with pytest.raises(ConfigError):
        resolve_sizes(5, None, 3, 3)
    with pytest.raises(ConfigError):
        split_corpus(items, (0, 1, 1), 0)


# ---------------------------------------------------------------- config

@pytest.mark.parametrize("data, where", [
    ({"documents": [], "seed": 1}, "documents"),
    ({"documents": [DOC]}, "<root>"),
    ({"documents": [DOC], "seed": 1, "bogus": 2}, "<root>"),
    ({"documents": [{**DOC, "src_lang": "fr"}], "seed": 1}, "fr"),
    ({"documents": [DOC], "seed": 1, "split": {"dev": 0}}, "split"),
    ({"documents": [DOC, DOC], "seed": 1}, "unique"),
])
def test_config_errors(data, where):
    with pytest.raises(ConfigError, match=where):
        config_from_dict(data)


def test_config_hash_ignores_output_location():
    a = config_from_dict({"documents": [DOC], "seed": 1, "output_dir": "x"}, "/a")
    b = config_from_dict({"documents": [DOC], "seed": 1, "output_dir": "y"}, "/b")
    c = config_from_dict({"documents": [DOC], "seed": 2}, "/a")
    assert a.hash() == b.hash() != c.hash()


def test_json_and_yaml_configs_agree(tmp_path):
    data = {"documents": [DOC], "seed": 5, "bpe": {"merges": [20, 10]}}
    (tmp_path / "c.json").write_text(json.dumps(data))
    (tmp_path / "c.yaml").write_text(yaml.safe_dump(data))
    a, b = load_config(tmp_path / "c.json"), load_config(tmp_path / "c.yaml")
    assert a.hash() == b.hash() and a.bpe.merges == (10, 20)


# ---------------------------------------------------------------- run

def test_fixture_counts(corpus_dir, expected, tmp_path):
    manifest = run(load_config(corpus_dir / "forge.yaml"), tmp_path / "out")
    got = {d.id: d for d in manifest.documents}
    for exp in expected["documents"]:
        d = got[exp["id"]]
        assert (d.src_sentences, d.tgt_sentences, d.pairs) == (
            exp["src_sentences"], exp["tgt_sentences"], len(exp["pairs"]))
    assert manifest.total_pairs == expected["total_pairs"] == sum(d.pairs for d in manifest.documents)
    assert manifest.clean["kept"] == expected["kept"]
    assert {k: v for k, v in manifest.clean["rejected"].items() if v} == expected["clean"]
    assert manifest.splits == expected["splits"]
    assert manifest.split_strategy == "uniform"

    rows = (tmp_path / "out" / "aligned.tsv").read_text(encoding="utf-8").splitlines()
    found = {}
    for row in rows:
        doc, si, ti = row.split("\t")[:3]
        found.setdefault(doc, []).append([int(si), int(ti)])
    assert found == {d["id"]: d["pairs"] for d in expected["documents"]}


def test_manifest_records_artifacts(corpus_dir, tmp_path):
    out = tmp_path / "out"
    manifest = run(load_config(corpus_dir / "forge.yaml"), out)
    loaded = Manifest.load(out / "manifest.json")
    loaded.check()
    assert loaded == manifest
    assert set(manifest.artifacts) == {str(p.relative_to(out)) for p in out.rglob("*")
                                       if p.is_file() and p.name != "manifest.json"}
    assert set(manifest.inputs) == {f"{d}:{s}" for d in ("bible", "news", "legal") for s in ("src", "tgt")}
    assert manifest.bpe_merges == {"joint.50": 50, "joint.100": 100, "joint.200": 200}
    merges = [(out / f"bpe/merges.joint.{n}.txt").read_text().splitlines() for n in (50, 100, 200)]
    assert merges[0] == merges[2][:50] and merges[1] == merges[2][:100]
    # romanized Ethiopic side reaches the splits
    train_src = (out / "splits/train.src").read_text(encoding="utf-8")
    assert not any(0x1200 <= ord(c) <= 0x137F for c in train_src)
    assert b"\r" not in (out / "aligned.tsv").read_bytes()


def test_tampered_manifest_fails_check(corpus_dir, tmp_path):
    manifest = run(load_config(corpus_dir / "forge.yaml"), tmp_path / "out")
    manifest.total_pairs += 1
    with pytest.raises(ValueError):
        manifest.check()


def test_runs_are_deterministic(corpus_dir, tmp_path):
    cfg = load_config(corpus_dir / "forge.yaml")
    a, b = run(cfg, tmp_path / "a"), run(cfg, tmp_path / "b")
    assert a.manifest_hash == b.manifest_hash
    assert (tmp_path / "a/manifest.json").read_bytes() == (tmp_path / "b/manifest.json").read_bytes()


def test_missing_input_names_the_stage(corpus_dir, tmp_path):
    (corpus_dir / "legal.en.txt").unlink()
    with pytest.raises(StageError) as err:
        run(load_config(corpus_dir / "forge.yaml"), tmp_path / "out")
    assert err.value.stage == "ingest" and err.value.input_id == "legal:tgt"
    assert not (tmp_path / "out" / "manifest.json").exists()


def test_split_larger_than_corpus(corpus_dir, tmp_path):
    cfg = yaml.safe_load((corpus_dir / "forge.yaml").read_text(encoding="utf-8"))
    cfg["split"] = {"dev": 40, "test": 40}
    (corpus_dir / "big.yaml").write_text(yaml.safe_dump(cfg), encoding="utf-8")
    with pytest.raises(StageError, match="split"):
        run(load_config(corpus_dir / "big.yaml"), tmp_path / "out")
