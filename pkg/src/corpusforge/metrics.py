"""Corpus BLEU and CharacTER.

BLEU is the unsmoothed corpus-level score over pre-tokenized input with a
single reference: clipped n-gram counts (n = 1..4) are pooled over all
sentences before taking precisions.

CharacTER is a character-level edit rate with word shifts.  Shifts are
searched greedily: among blocks of up to five hypothesis words that also
occur in the reference, the first move that lowers the character edit
distance by more than its cost is applied, and the search repeats until no
move helps.  The score is (shifts + character edits) divided by the number
of hypothesis characters, spaces included.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Sequence

MAX_ORDER = 4
MAX_SHIFT_WORDS = 5
SHIFT_COST = 1.0


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class BleuScore:
    score: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_len: int
    ref_len: int
    matches: tuple[int, ...] = ()
    totals: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return asdict(self)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _tokens(x) -> list[str]:
    return x.split() if isinstance(x, str) else list(x)


def corpus_bleu(hyps: Sequence, refs: Sequence, max_order: int = MAX_ORDER) -> BleuScore:
    if len(hyps) != len(refs):
        raise MetricError(f"{len(hyps)} hypotheses but {len(refs)} references")
    if not hyps:
        raise MetricError("empty corpus")
    matches = [0] * max_order
    totals = [0] * max_order
    hyp_len = ref_len = 0
    for hyp, ref in zip(hyps, refs):
        hyp, ref = _tokens(hyp), _tokens(ref)
        hyp_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, max_order + 1):
            h, r = _ngrams(hyp, n), _ngrams(ref, n)
            matches[n - 1] += sum(min(c, r[g]) for g, c in h.items())
            totals[n - 1] += max(len(hyp) - n + 1, 0)
    precisions = tuple(m / t if t else 0.0 for m, t in zip(matches, totals))
    if hyp_len == 0:
        bp = 0.0
    elif hyp_len < ref_len:
        bp = math.exp(1 - ref_len / hyp_len)
    else:
        bp = 1.0
    if min(precisions) == 0:
        score = 0.0
    else:
        score = 100 * bp * math.exp(sum(math.log(p) for p in precisions) / max_order)
    return BleuScore(score, precisions, bp, hyp_len, ref_len, tuple(matches), tuple(totals))


@dataclass(frozen=True)
class CharTerScore:
    score: float
    shifts: int
    char_edits: int
    hyp_chars: int

    def to_dict(self) -> dict:
        return asdict(self)


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _candidate_shifts(hyp: list[str], ref: list[str]):
    """(start, length, destination) moves of hypothesis blocks that occur in
    the reference, each aimed at a reference position of the block."""
    seen = set()
    for start in range(len(hyp)):
        for size in range(1, min(MAX_SHIFT_WORDS, len(hyp) - start) + 1):
            block = hyp[start:start + size]
            found = False
            for r in range(len(ref) - size + 1):
                if ref[r:r + size] != block:
                    continue
                found = True
                if r == start:
                    continue
                rest = len(hyp) - size
                for dest in {min(r, rest), min(max(r - size, 0), rest)}:
                    if dest != start and (start, size, dest) not in seen:
                        seen.add((start, size, dest))
                        yield start, size, dest
            if not found:
                break


def _shift(words: list[str], start: int, size: int, dest: int) -> list[str]:
    block = words[start:start + size]
    rest = words[:start] + words[start + size:]
    return rest[:dest] + block + rest[dest:]


def character_score(hyp: str, ref: str) -> CharTerScore:
    words = hyp.split()
    if not words:
        raise MetricError("empty hypothesis")
    ref_words = ref.split()
    ref_text = " ".join(ref_words)
    cost = levenshtein(" ".join(words), ref_text)
    shifts = 0
    improved = True
    while improved and cost > 0:
        improved = False
        for start, size, dest in _candidate_shifts(words, ref_words):
            moved = _shift(words, start, size, dest)
            new_cost = levenshtein(" ".join(moved), ref_text)
            if new_cost + SHIFT_COST < cost:
                words, cost = moved, new_cost
                shifts += 1
                improved = True
                break
    hyp_chars = len(" ".join(hyp.split()))
    return CharTerScore((shifts * SHIFT_COST + cost) / hyp_chars, shifts, cost, hyp_chars)


def corpus_character(hyps: Sequence[str], refs: Sequence[str]) -> float:
    """Mean sentence-level CharacTER."""
    if len(hyps) != len(refs):
        raise MetricError(f"{len(hyps)} hypotheses but {len(refs)} references")
    if not hyps:
        raise MetricError("empty corpus")
    scores = []
    for k, (h, r) in enumerate(zip(hyps, refs)):
        try:
            scores.append(character_score(h, r).score)
        except MetricError as exc:
            raise MetricError(f"sentence {k}: {exc}") from None
    return math.fsum(scores) / len(scores)
