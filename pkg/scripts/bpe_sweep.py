"""Subword statistics across a merge-count sweep.

Learns one BPE model at the largest merge count on a text file, truncates it
to each smaller count, and reports vocabulary size and tokens per word.

    python3 scripts/bpe_sweep.py train.txt --merges 1000 2000 4000 8000 16000
"""

from __future__ import annotations

import argparse
from collections import Counter

from corpusforge.subword import apply_bpe, learn_bpe, word_counts


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", help="whitespace-tokenized text, one sentence per line")
    ap.add_argument("--merges", type=int, nargs="+", default=[1000, 2000, 4000, 8000, 16000])
    args = ap.parse_args()

    with open(args.corpus, encoding="utf-8") as fh:
        counts = word_counts(fh)
    words = sum(counts.values())
    full = learn_bpe(counts, max(args.merges))
    print(f"{len(counts)} word types, {words} tokens, {len(full.merges)} merges learned")
    print(f"{'merges':>7} {'learned':>7} {'types':>7} {'pieces/word':>11}")
    for n in sorted(args.merges):
        model = full.truncate(n)
        pieces: Counter = Counter()
        for w, c in counts.items():
            for piece in apply_bpe([w], model):
                pieces[piece] += c
        print(f"{n:7d} {len(model.merges):7d} {len(pieces):7d} {sum(pieces.values()) / words:11.3f}")


if __name__ == "__main__":
    main()
