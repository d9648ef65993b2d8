"""Synthetic bitexts with known alignments, for testing and experiments.

The target side is a word-substitution cipher of the source side, so every
surviving sentence pair is a true translation.  Sentences are then deleted
independently per side, which leaves known 1-1 pairs and unmatched
sentences on both sides.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .align import Document


@dataclass(frozen=True)
class CipherBitext:
    src: Document
    tgt: Document
    truth: frozenset[tuple[int, int]]


def cipher_bitext(n: int = 1000, *, vocab_size: int = 400, deletion: float = 0.05,
                  min_len: int = 4, max_len: int = 25, seed: int = 0, doc_id: str = "synthetic",
                  ) -> CipherBitext:
    """``n`` sentences drawn from a Zipfian vocabulary, ciphered word by
    word, with each sentence deleted with probability ``deletion`` per side."""
    if not 0 <= deletion < 1:
        raise ValueError("deletion rate must lie in [0, 1)")
    rng = random.Random(seed)
    vocab = [f"w{i}" for i in range(vocab_size)]
    weights = [1 / (r + 1) for r in range(vocab_size)]
    perm = list(range(vocab_size))
    rng.shuffle(perm)
    cipher = {w: f"c{perm[i]}" for i, w in enumerate(vocab)}
    src_all = [rng.choices(vocab, weights, k=rng.randint(min_len, max_len)) for _ in range(n)]
    keep_src = [rng.random() >= deletion for _ in range(n)]
    keep_tgt = [rng.random() >= deletion for _ in range(n)]

    src, tgt, truth = [], [], set()
    for words, ks, kt in zip(src_all, keep_src, keep_tgt):
        if ks and kt:
            truth.add((len(src), len(tgt)))
        if ks:
            src.append(" ".join(words))
        if kt:
            tgt.append(" ".join(cipher[w] for w in words))
    return CipherBitext(Document(src, "src", doc_id), Document(tgt, "tgt", doc_id), frozenset(truth))


def precision_recall(found: set[tuple[int, int]], truth: frozenset[tuple[int, int]]) -> tuple[float, float]:
    hits = len(found & truth)
    precision = hits / len(found) if found else 0.0
    recall = hits / len(truth) if truth else 0.0
    return precision, recall
