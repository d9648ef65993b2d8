"""End-to-end corpus build: ingest, normalize, segment, align, clean,
romanize, split, learn subwords, count vocabularies, write a manifest."""

from __future__ import annotations

import hashlib
import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, TypeVar

from .. import __version__
from ..align import AlignedPair, Document, align_corpus
from ..clean import filter_pairs
from ..errors import ForgeError, StageError
from ..segment import default_wordlist, load_wordlist, split_sentences
from ..subword import apply_bpe, build_vocab, learn_bpe, word_counts
from ..textnorm import LangProfile, default_table, load_table, normalize
from ..translit import default_translit, load_translit, romanize
from .config import PipelineConfig, sha256_json
from .ingest import ingest
from .split import resolve_sizes, split_corpus

log = logging.getLogger(__name__)

SPLIT_STRATEGY = "uniform"
SIDES = ("src", "tgt")
T = TypeVar("T")


@dataclass
class DocumentCounts:
    id: str
    source: str
    src_sentences: int
    tgt_sentences: int
    pairs: int
    src_unaligned: int
    tgt_unaligned: int
    dropped_lines: int


@dataclass
class Manifest:
    tool_version: str
    config_hash: str
    seed: int
    documents: list[DocumentCounts]
    total_pairs: int
    training_pairs: int
    clean: dict
    splits: dict
    split_strategy: str = SPLIT_STRATEGY
    bpe_merges: dict = field(default_factory=dict)
    vocab_sizes: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)
    manifest_hash: str = ""

    def body(self) -> dict:
        d = asdict(self)
        d.pop("manifest_hash")
        return d

    def seal(self) -> "Manifest":
        self.manifest_hash = sha256_json(self.body())
        return self

    def check(self) -> None:
        """Raise ValueError if any accounting identity fails."""
        if sum(d.pairs for d in self.documents) != self.total_pairs:
            raise ValueError("per-document pair counts do not sum to the total")
        for d in self.documents:
            if d.src_sentences != d.pairs + d.src_unaligned or d.tgt_sentences != d.pairs + d.tgt_unaligned:
                raise ValueError(f"sentence accounting fails for document {d.id!r}")
        rejected = sum(self.clean["rejected"].values())
        if self.clean["total"] != self.total_pairs or self.clean["kept"] + rejected != self.total_pairs:
            raise ValueError("cleaning accounting fails")
        if sum(self.splits.values()) != self.clean["kept"]:
            raise ValueError("split sizes do not sum to the cleaned corpus size")
        if self.manifest_hash and self.manifest_hash != sha256_json(self.body()):
            raise ValueError("manifest hash does not match its contents")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Manifest":
        d = dict(d)
        d["documents"] = [DocumentCounts(**x) for x in d["documents"]]
        return cls(**d)

    @classmethod
    def load(cls, path: "str | Path") -> "Manifest":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


class _Committer:
    """Single writer for all outputs; records a digest per file."""

    def __init__(self, root: Path):
        self.root = root
        self.digests: dict[str, str] = {}

    def write(self, rel: str, lines: Iterable[str]) -> None:
        data = "".join(line + "\n" for line in lines).encode("utf-8")
        path = self.root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        self.digests[rel] = hashlib.sha256(data).hexdigest()


def _stage(stage: str, input_id: str, fn: Callable[[], T]) -> T:
    try:
        return fn()
    except StageError:
        raise
    except (ForgeError, ValueError, OSError, KeyError) as exc:
        raise StageError(stage, input_id, exc) from exc


def _segment_text(text: str, lang: str, table, wordlist) -> list[str]:
    """Normalize and segment each line on its own; a line break always ends a sentence."""
    out = []
    for line in text.splitlines():
        out += split_sentences(normalize(line, lang, table), lang, wordlist)
    return out


def run(config: PipelineConfig, output_dir: "str | Path | None" = None) -> Manifest:
    cfg = config
    root = Path(output_dir if output_dir is not None else cfg.path(cfg.output_dir))
    out = _Committer(root)

    table = _stage("normalize", cfg.norm_table or "<default table>",
                   lambda: load_table(cfg.path(cfg.norm_table)) if cfg.norm_table else default_table())
    wordlists = {}
    for doc in cfg.documents:
        for lang in (doc.src_lang, doc.tgt_lang):
            prof = LangProfile.parse(lang)
            if prof not in wordlists:
                given = next((p for k, p in cfg.wordlists.items() if LangProfile.parse(k) is prof), None)
                wordlists[prof] = _stage(
                    "segment", given or f"<default {prof.value} wordlist>",
                    lambda: load_wordlist(cfg.path(given), prof) if given else default_wordlist(prof))

    docs: list[tuple[Document, Document]] = []
    dropped: dict[str, int] = {}
    inputs: dict[str, str] = {}
    for doc in cfg.documents:
        sides = []
        dropped[doc.id] = 0
        for side, rel, lang in (("src", doc.src, doc.src_lang), ("tgt", doc.tgt, doc.tgt_lang)):
            name = f"{doc.id}:{side}"
            raw = _stage("ingest", name, lambda: cfg.path(rel).read_bytes())
            inputs[name] = hashlib.sha256(raw).hexdigest()
            res = _stage("ingest", name, lambda: ingest(raw, doc.rules))
            dropped[doc.id] += res.dropped_lines
            prof = LangProfile.parse(lang)
            sents = _stage("segment", name, lambda: _segment_text(res.text, lang, table, wordlists[prof]))
            out.write(f"segmented/{doc.id}.{side}.txt", sents)
            sides.append(Document(sents, lang, doc.id))
        docs.append((sides[0], sides[1]))
        log.info("%s: %d / %d sentences", doc.id, len(sides[0]), len(sides[1]))

    pairs, report = _stage("align", "corpus", lambda: align_corpus(docs, cfg.align))
    out.write("aligned.tsv", (f"{p.provenance}\t{p.src_index}\t{p.tgt_index}\t{p.posterior:.6f}"
                              f"\t{p.src_sentence}\t{p.tgt_sentence}" for p in pairs))
    counts = []
    for doc, row, (src, tgt) in zip(cfg.documents, report.rows, docs):
        counts.append(DocumentCounts(doc.id, doc.source, len(src), len(tgt), row.pairs,
                                     len(src) - row.pairs, len(tgt) - row.pairs, dropped[doc.id]))

    kept, clean_report = filter_pairs(pairs, cfg.clean)
    out.write("clean.tsv", (f"{p.src_sentence}\t{p.tgt_sentence}" for p in kept))

    texts = _romanized(cfg, kept) if cfg.stages.translit else [(p.src_sentence, p.tgt_sentence) for p in kept]

    def carve():
        sizes = resolve_sizes(len(texts), cfg.split.train, cfg.split.dev, cfg.split.test)
        return sizes, split_corpus(texts, sizes, cfg.seed)

    sizes, parts = _stage("split", "corpus", carve)
    splits = dict(zip(("train", "dev", "test"), parts))
    for name, part in splits.items():
        out.write(f"splits/{name}.src", (s for s, _ in part))
        out.write(f"splits/{name}.tgt", (t for _, t in part))

    bpe_merges: dict = {}
    vocab_sizes: dict = {}
    if cfg.stages.bpe:
        bpe_merges = _stage("bpe", "train", lambda: _bpe_sweep(cfg, splits, out, vocab_sizes))
    if cfg.stages.vocab:
        train = splits["train"]
        vocab = build_vocab((w for s, t in train for w in (s + " " + t).split()), cfg.vocab_top_k)
        out.write("vocab.tsv", (f"{w}\t{c}" for w, c in vocab.entries))
        vocab_sizes["words"] = len(vocab)

    manifest = Manifest(
        tool_version=__version__,
        config_hash=cfg.hash(),
        seed=cfg.seed,
        documents=counts,
        total_pairs=report.total,
        training_pairs=report.training_pairs,
        clean=clean_report.to_dict(),
        splits={"train": sizes[0], "dev": sizes[1], "test": sizes[2], "unused": len(texts) - sum(sizes)},
        bpe_merges=bpe_merges,
        vocab_sizes=vocab_sizes,
        inputs=inputs,
        artifacts=dict(sorted(out.digests.items())),
    ).seal()
    manifest.check()
    (root / "manifest.json").write_bytes(manifest.to_json().encode("utf-8"))
    return manifest


def _romanized(cfg: PipelineConfig, kept: list[AlignedPair]) -> list[tuple[str, str]]:
    table = _stage("translit", cfg.translit_table or "<default table>",
                   lambda: load_translit(cfg.path(cfg.translit_table)) if cfg.translit_table
                   else default_translit())
    langs = {d.id: (d.src_lang, d.tgt_lang) for d in cfg.documents}
    out = []
    for p in kept:
        src_lang, tgt_lang = langs[p.provenance]
        pair = []
        for text, lang, idx, side in ((p.src_sentence, src_lang, p.src_index, "src"),
                                      (p.tgt_sentence, tgt_lang, p.tgt_index, "tgt")):
            if LangProfile.parse(lang) is LangProfile.ETHIOPIC:
                text = _stage("translit", f"{p.provenance}:{side}:{idx}", lambda: romanize(text, table))
            pair.append(text)
        out.append((pair[0], pair[1]))
    return out


def _bpe_sweep(cfg: PipelineConfig, splits: dict, out: _Committer, vocab_sizes: dict) -> dict:
    """Learn once at the largest merge count on train; smaller models are prefixes."""
    train = splits["train"]
    groups = {"joint": [s for s, _ in train] + [t for _, t in train]} if cfg.bpe.joint else \
        {"src": [s for s, _ in train], "tgt": [t for _, t in train]}
    largest = max(cfg.bpe.merges)
    models = {g: learn_bpe(word_counts(lines), largest) for g, lines in sorted(groups.items())}
    learned = {}
    for n in cfg.bpe.merges:
        vocab_counts: Counter = Counter()
        for g, full in models.items():
            model = full.truncate(n)
            learned[f"{g}.{n}"] = len(model.merges)
            out.write(f"bpe/merges.{g}.{n}.txt", (f"{a} {b}" for a, b in model.merges))
            for name, part in splits.items():
                for k, side in enumerate(SIDES):
                    if g not in ("joint", side):
                        continue
                    lines = [" ".join(apply_bpe(pair[k].split(), model)) for pair in part]
                    out.write(f"bpe/{name}.{side}.{n}", lines)
                    if name == "train":
                        vocab_counts.update(w for line in lines for w in line.split())
        if cfg.stages.vocab:
            vocab = build_vocab(vocab_counts.elements(), cfg.vocab_top_k)
            out.write(f"bpe/vocab.{n}.tsv", (f"{w}\t{c}" for w, c in vocab.entries))
            vocab_sizes[f"bpe.{n}"] = len(vocab)
    return learned
