"""Command-line interface: one subcommand per stage plus ``run``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence, TextIO

from . import __version__
from .align import AlignConfig, AlignedPair, Document, align_corpus
from .clean import CleanConfig, filter_pairs
from .errors import ForgeError
from .metrics import MetricError, character_score, corpus_bleu, corpus_character
from .pipeline import load_config, run
from .segment import load_wordlist, split_sentences
from .subword import DEFAULT_TOP_K, BpeModel, apply_bpe, build_vocab, learn_bpe, undo_bpe, word_counts
from .textnorm import LangProfile, load_table, normalize
from .translit import deromanize, load_translit, romanize


def _lines(path: str | None) -> list[str]:
    if path is None or path == "-":
        return sys.stdin.read().splitlines()
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def _emit(lines, out: TextIO) -> None:
    for line in lines:
        out.write(line + "\n")


def cmd_normalize(args, out):
    table = load_table(args.table) if args.table else None
    _emit((normalize(line, args.lang, table) for line in _lines(args.input)), out)


def cmd_segment(args, out):
    wordlist = load_wordlist(args.wordlist, args.lang) if args.wordlist else None
    for line in _lines(args.input):
        _emit(split_sentences(line, args.lang, wordlist), out)


def cmd_align(args, out):
    src = Document(_lines(args.src), doc_id=args.src)
    tgt = Document(_lines(args.tgt), doc_id=args.tgt)
    cfg = AlignConfig(pass1_threshold=args.pass1_threshold, threshold=args.threshold,
                      iterations=args.iters)
    pairs, _ = align_corpus([(src, tgt)], cfg)
    _emit((f"{p.src_index}\t{p.tgt_index}\t{p.posterior:.6f}\t{p.src_sentence}\t{p.tgt_sentence}"
           for p in pairs), out)


def _split_pair(line: str, lineno: int) -> tuple[str, str]:
    parts = line.split("\t")
    if len(parts) < 2:
        raise ForgeError(f"line {lineno}: expected a tab-separated pair")
    # aligner output carries index and posterior columns before the text
    return parts[-2], parts[-1]


def cmd_clean(args, out):
    lines = _lines(args.input)
    pairs = [AlignedPair(*_split_pair(line, k), k, k) for k, line in enumerate(lines)]
    kept, report = filter_pairs(pairs, CleanConfig(args.max_len, args.max_ratio))
    _emit((lines[p.src_index] for p in kept), out)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def cmd_translit(args, out):
    table = load_translit(args.table) if args.table else None
    fn = romanize if args.to_latin else deromanize
    _emit((fn(line, table) for line in _lines(args.input)), out)


def cmd_bpe(args, out):
    if args.action == "learn":
        model = learn_bpe(word_counts(_lines(args.input)), args.merges)
        _emit((f"{a} {b}" for a, b in model.merges), out)
    elif args.action == "apply":
        model = BpeModel.load(args.codes)
        _emit((" ".join(apply_bpe(line.split(), model)) for line in _lines(args.input)), out)
    else:
        _emit((" ".join(undo_bpe(line.split())) for line in _lines(args.input)), out)


def cmd_vocab(args, out):
    vocab = build_vocab((w for line in _lines(args.input) for w in line.split()), args.top_k)
    _emit((f"{w}\t{c}" for w, c in vocab.entries), out)


def cmd_score(args, out):
    hyps, refs = _lines(args.hyp), _lines(args.ref)
    if args.metric == "bleu":
        result = corpus_bleu([h.split() for h in hyps], [r.split() for r in refs])
        report = result.to_dict()
        headline = f"BLEU = {result.score:.2f}"
    else:
        if len(hyps) != len(refs):
            raise MetricError(f"{len(hyps)} hypotheses but {len(refs)} references")
        sentences = [character_score(h, r).to_dict() for h, r in zip(hyps, refs)]
        score = corpus_character(hyps, refs)
        report = {"score": score, "sentences": sentences,
                  "shifts": sum(s["shifts"] for s in sentences),
                  "char_edits": sum(s["char_edits"] for s in sentences)}
        headline = f"CharacTER = {score:.4f}"
    if args.json:
        out.write(json.dumps({"metric": args.metric, **report}, indent=2, sort_keys=True) + "\n")
    else:
        out.write(headline + "\n")


def cmd_run(args, out):
    manifest = run(load_config(args.config), args.output)
    out.write(f"{manifest.total_pairs} pairs aligned, {manifest.clean['kept']} kept; "
              f"manifest {manifest.manifest_hash}\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="forge", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def lang_arg(sp):
        sp.add_argument("--lang", required=True, type=LangProfile.parse, help="am or en")

    def input_arg(sp):
        sp.add_argument("input", nargs="?", help="input file (default: stdin)")

    sp = sub.add_parser("normalize", help="normalize punctuation, homophones and case")
    lang_arg(sp)
    sp.add_argument("--table", help="normalization table TSV")
    input_arg(sp)
    sp.set_defaults(fn=cmd_normalize)

    sp = sub.add_parser("segment", help="split text into one sentence per line")
    lang_arg(sp)
    sp.add_argument("--wordlist", help="negative wordlist file")
    input_arg(sp)
    sp.set_defaults(fn=cmd_segment)

    sp = sub.add_parser("align", help="align two sentence-per-line files")
    sp.add_argument("--src", required=True)
    sp.add_argument("--tgt", required=True)
    sp.add_argument("--pass1-threshold", type=float, default=0.99)
    sp.add_argument("--threshold", type=float, default=0.5)
    sp.add_argument("--iters", type=int, default=4)
    sp.set_defaults(fn=cmd_align)

    sp = sub.add_parser("clean", help="filter tab-separated sentence pairs")
    sp.add_argument("--max-len", type=int, default=80)
    sp.add_argument("--max-ratio", type=float, default=9.0)
    sp.add_argument("--report", help="write rejection counts as JSON")
    input_arg(sp)
    sp.set_defaults(fn=cmd_clean)

    sp = sub.add_parser("translit", help="romanize or restore Ethiopic text")
    direction = sp.add_mutually_exclusive_group(required=True)
    direction.add_argument("--to-latin", action="store_true")
    direction.add_argument("--to-ethiopic", action="store_true")
    sp.add_argument("--table", help="transliteration table TSV")
    input_arg(sp)
    sp.set_defaults(fn=cmd_translit)

    sp = sub.add_parser("bpe", help="learn, apply or undo byte pair encoding")
    actions = sp.add_subparsers(dest="action", required=True)
    ap = actions.add_parser("learn", help="learn merges from a tokenized corpus")
    ap.add_argument("--merges", type=int, default=4000)
    input_arg(ap)
    ap = actions.add_parser("apply", help="split words with a merge file")
    ap.add_argument("--codes", required=True, help="merge file")
    input_arg(ap)
    ap = actions.add_parser("undo", help="join subword pieces back into words")
    input_arg(ap)
    sp.set_defaults(fn=cmd_bpe)

    sp = sub.add_parser("vocab", help="frequency-ranked token list")
    sp.add_argument("--top-k", type=int, default=DEFAULT_TOP_K)
    input_arg(sp)
    sp.set_defaults(fn=cmd_vocab)

    sp = sub.add_parser("score", help="score hypotheses against references")
    sp.add_argument("--metric", choices=("bleu", "character"), default="bleu")
    sp.add_argument("--hyp", required=True)
    sp.add_argument("--ref", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_score)

    sp = sub.add_parser("run", help="build a corpus from a config file")
    sp.add_argument("--config", required=True)
    sp.add_argument("--output", help="override the configured output directory")
    sp.set_defaults(fn=cmd_run)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.fn(args, out or sys.stdout)
    except (ForgeError, ValueError, OSError) as exc:
        print(f"forge {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
