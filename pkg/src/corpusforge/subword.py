"""Byte pair encoding and frequency-ranked vocabularies.

Each word is a sequence of characters followed by a separate end-of-word
symbol.  Learning greedily merges the most frequent adjacent pair, ties
broken by the smallest pair in lexicographic order, and stops early once no
pair occurs at least twice.  Applied output marks the last piece of each
word with the end-of-word suffix, which :func:`undo_bpe` strips.
"""

from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

EOW = "</w>"


@dataclass(frozen=True)
class BpeModel:
    merges: tuple[tuple[str, str], ...] = ()
    eow_marker: str = EOW
    ranks: dict[tuple[str, str], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "merges", tuple(tuple(m) for m in self.merges))
        if len(set(self.merges)) != len(self.merges):
            raise ValueError("duplicate merge in BPE model")
        object.__setattr__(self, "ranks", {m: r for r, m in enumerate(self.merges)})

    def truncate(self, num_merges: int) -> "BpeModel":
        return BpeModel(self.merges[:num_merges], self.eow_marker)

    def save(self, path: "str | Path") -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for left, right in self.merges:
                fh.write(f"{left} {right}\n")

    @classmethod
    def load(cls, path: "str | Path", eow_marker: str = EOW) -> "BpeModel":
        merges = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                parts = line.rstrip("\n").split(" ")
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: expected 'left right'")
                merges.append((parts[0], parts[1]))
        return cls(tuple(merges), eow_marker)


def _pairs(symbols: Sequence[str]) -> Counter:
    return Counter(zip(symbols, symbols[1:]))


def learn_bpe(corpus: Mapping[str, int], num_merges: int, eow_marker: str = EOW) -> BpeModel:
    """Learn up to ``num_merges`` merges from a word-frequency map."""
    if num_merges < 0:
        raise ValueError("num_merges must be non-negative")
    words = [list(w) + [eow_marker] for w in sorted(corpus)]
    freqs = [corpus[w] for w in sorted(corpus)]

    stats: Counter = Counter()
    where: dict[tuple[str, str], set[int]] = defaultdict(set)
    for idx, (sym, f) in enumerate(zip(words, freqs)):
        for pair, c in _pairs(sym).items():
            stats[pair] += c * f
            where[pair].add(idx)
    heap = [(-c, pair) for pair, c in stats.items()]
    heapq.heapify(heap)

    merges: list[tuple[str, str]] = []
    while len(merges) < num_merges and heap:
        neg, pair = heapq.heappop(heap)
        if stats.get(pair, 0) != -neg:
            continue  # stale entry
        if -neg < 2:
            break
        merges.append(pair)
        left, right = pair
        joined = left + right
        touched = set()
        for idx in where.pop(pair, ()):
            sym, f = words[idx], freqs[idx]
            old = _pairs(sym)
            out, k = [], 0
            while k < len(sym):
                if k + 1 < len(sym) and sym[k] == left and sym[k + 1] == right:
                    out.append(joined)
                    k += 2
                else:
                    out.append(sym[k])
                    k += 1
            new = _pairs(out)
            for p, c in old.items():
                stats[p] -= c * f
                if p not in new:
                    where[p].discard(idx)
                touched.add(p)
            for p, c in new.items():
                stats[p] += c * f
                where[p].add(idx)
                touched.add(p)
            words[idx] = out
        stats.pop(pair, None)
        for p in touched:
            c = stats.get(p, 0)
            if c > 0:
                heapq.heappush(heap, (-c, p))
            elif p in stats:
                del stats[p]
    return BpeModel(tuple(merges), eow_marker)


def segment_word(word: str, model: BpeModel) -> list[str]:
    """Symbols of one word after applying merges in learned order."""
    sym = list(word) + [model.eow_marker]
    ranks = model.ranks
    while len(sym) > 1:
        best = min(((ranks[p], k) for k, p in enumerate(zip(sym, sym[1:])) if p in ranks), default=None)
        if best is None:
            break
        rank, _ = best
        left, right = model.merges[rank]
        out, k = [], 0
        while k < len(sym):
            if k + 1 < len(sym) and sym[k] == left and sym[k + 1] == right:
                out.append(left + right)
                k += 2
            else:
                out.append(sym[k])
                k += 1
        sym = out
    if len(sym) > 1 and sym[-1] == model.eow_marker:
        sym = sym[:-2] + [sym[-2] + model.eow_marker]
    return sym


def apply_bpe(tokens: Iterable[str], model: BpeModel) -> list[str]:
    """Split each word into subword pieces; the last piece of a word ends
    with the end-of-word marker."""
    cache: dict[str, list[str]] = {}
    out = []
    for word in tokens:
        if model.eow_marker in word:
            raise ValueError(f"word {word!r} contains the end-of-word marker")
        pieces = cache.get(word)
        if pieces is None:
            pieces = cache[word] = segment_word(word, model)
        out.extend(pieces)
    return out


def undo_bpe(subwords: Iterable[str], eow_marker: str = EOW) -> list[str]:
    """Join pieces back into words; a trailing piece without a marker is
    flushed as the final word."""
    words, buf = [], []
    for piece in subwords:
        if piece.endswith(eow_marker):
            buf.append(piece[: -len(eow_marker)])
            words.append("".join(buf))
            buf = []
        else:
            buf.append(piece)
    if buf:
        words.append("".join(buf))
    return words


def word_counts(lines: Iterable[str]) -> Counter:
    counts: Counter = Counter()
    for line in lines:
        counts.update(line.split())
    return counts


@dataclass(frozen=True)
class Vocabulary:
    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        tokens = [t for t, _ in self.entries]
        if len(set(tokens)) != len(tokens):
            raise ValueError("duplicate vocabulary token")
        keys = [(-c, t) for t, c in self.entries]
        if keys != sorted(keys):
            raise ValueError("vocabulary is not ordered by count then token")

    def __len__(self):
        return len(self.entries)

    def __contains__(self, token):
        return any(t == token for t, _ in self.entries)

    def save(self, path: "str | Path") -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for token, count in self.entries:
                fh.write(f"{token}\t{count}\n")


DEFAULT_TOP_K = 44_000


def build_vocab(corpus: Iterable[str], top_k: int = DEFAULT_TOP_K) -> Vocabulary:
    """The ``top_k`` most frequent tokens of a token stream, ties broken
    lexicographically."""
    if top_k < 1:
        raise ValueError("top_k must be at least 1")
    counts = Counter(corpus)
    ranked = sorted(counts.items(), key=lambda tc: (-tc[1], tc[0]))
    return Vocabulary(tuple(ranked[:top_k]))
