"""IBM Model 1 lexical translation probabilities t(target | source), trained by EM."""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .types import AlignedPair, AlignmentError

NULL = "<NULL>"
RARE = "<RARE>"
DEFAULT_FLOOR = 1e-9

TokenPair = tuple[list[str], list[str]]


@dataclass
class TTable:
    """``probs[src][tgt]``; every row is a distribution over target words.

    Words outside the table's vocabulary are looked up as ``RARE``; pairs
    absent from the table score ``floor``.
    """

    probs: dict[str, dict[str, float]]
    floor: float = DEFAULT_FLOOR
    use_null: bool = True
    src_vocab: frozenset[str] = field(init=False, repr=False)
    tgt_vocab: frozenset[str] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.floor > 0:
            raise ValueError("probability floor must be positive")
        self.src_vocab = frozenset(self.probs)
        self.tgt_vocab = frozenset(itertools.chain.from_iterable(self.probs.values()))

    def map_src(self, word: str) -> str:
        return word if word in self.src_vocab else RARE

    def map_tgt(self, word: str) -> str:
        return word if word in self.tgt_vocab else RARE

    def prob(self, src: str, tgt: str) -> float:
        """t(tgt | src) for already-mapped words."""
        return self.probs.get(src, {}).get(tgt, self.floor)

    def source_tokens(self, src: Sequence[str]) -> list[str]:
        toks = [self.map_src(w) for w in src]
        return toks + [NULL] if self.use_null else toks


def _token_pairs(pairs: Iterable) -> list[TokenPair]:
    out = []
    for p in pairs:
        if isinstance(p, AlignedPair):
            src, tgt = p.src_sentence, p.tgt_sentence
        else:
            src, tgt = p
        out.append((src.split() if isinstance(src, str) else list(src),
                    tgt.split() if isinstance(tgt, str) else list(tgt)))
    return out


def _apply_min_count(pairs: list[TokenPair], min_count: int) -> list[TokenPair]:
    if min_count <= 1:
        return pairs
    src_counts = Counter(w for s, _ in pairs for w in s)
    tgt_counts = Counter(w for _, t in pairs for w in t)
    return [([w if src_counts[w] >= min_count else RARE for w in s],
             [w if tgt_counts[w] >= min_count else RARE for w in t]) for s, t in pairs]


def iter_ibm1(pairs: Iterable, *, use_null: bool = True, min_count: int = 1,
              floor: float = DEFAULT_FLOOR) -> Iterator[TTable]:
    """Yield the uniform initial table, then the table after each EM iteration.

    Initialization is uniform over each source word's co-occurring target
    words.  Words seen fewer than ``min_count`` times become ``RARE``.
    """
    corpus = _token_pairs(pairs)
    if not corpus:
        raise AlignmentError("IBM Model 1 needs at least one sentence pair")
    corpus = _apply_min_count(corpus, min_count)
    nul = [NULL] if use_null else []
    corpus = [(s + nul, t) for s, t in corpus if t and (s or use_null)]
    if not corpus:
        raise AlignmentError("every training pair has an empty side")

    cooc: dict[str, set[str]] = defaultdict(set)
    for s, t in corpus:
        for w in s:
            cooc[w].update(t)
    probs = {s: dict.fromkeys(sorted(ts), 1.0 / len(ts)) for s, ts in sorted(cooc.items())}
    yield TTable(probs, floor, use_null)

    while True:
        counts: dict[str, dict[str, float]] = defaultdict(lambda: defaultdict(float))
        for s, t in corpus:
            for tw in t:
                denom = 0.0
                for sw in s:
                    denom += probs[sw][tw]
                for sw in s:
                    counts[sw][tw] += probs[sw][tw] / denom
        probs = {}
        for sw in sorted(counts):
            row = counts[sw]
            total = math.fsum(row.values())
            probs[sw] = {tw: row[tw] / total for tw in sorted(row)}
        yield TTable(probs, floor, use_null)


def train_ibm1(pairs: Iterable, iterations: int = 4, *, use_null: bool = True,
               min_count: int = 1, floor: float = DEFAULT_FLOOR) -> TTable:
    if iterations < 1:
        raise ValueError("need at least one EM iteration")
    tables = iter_ibm1(pairs, use_null=use_null, min_count=min_count, floor=floor)
    return next(itertools.islice(tables, iterations, None))


def model1_logprob(src: Sequence[str], tgt: Sequence[str], table: TTable) -> float:
    """log P(tgt | src) up to the length term: sum over target words of
    log( sum_s t(w|s) / (|src|+1) ), with NULL among the sources."""
    if not tgt:
        return 0.0
    sources = table.source_tokens(src)
    if not sources:
        return -math.inf
    total = 0.0
    for w in tgt:
        tw = table.map_tgt(w)
        total += math.log(sum(table.prob(sw, tw) for sw in sources) / len(sources))
    return total


@dataclass
class Unigram:
    """Target-word distribution used to score target sentences that have no
    source counterpart; words absent from ``probs`` score ``floor``."""

    probs: dict[str, float]
    floor: float = DEFAULT_FLOOR

    def logprob(self, tgt: Sequence[str], table: TTable) -> float:
        return math.fsum(math.log(self.probs.get(table.map_tgt(w), self.floor)) for w in tgt)


def fit_unigram(pairs: Iterable, table: TTable) -> Unigram:
    """Relative frequencies of the target side, in the table's vocabulary."""
    counts = Counter(table.map_tgt(w) for _, t in _token_pairs(pairs) for w in t)
    total = sum(counts.values())
    if not total:
        raise AlignmentError("no target tokens to estimate a unigram model from")
    return Unigram({w: c / total for w, c in sorted(counts.items())}, table.floor)


def corpus_loglik(pairs: Iterable, table: TTable) -> float:
    return math.fsum(model1_logprob(s, t, table) for s, t in _token_pairs(pairs))


def save_ttable(table: TTable, path: "str | Path") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"#corpusforge-ttable\tfloor={table.floor!r}\tuse_null={int(table.use_null)}\n")
        for src in sorted(table.probs):
            for tgt, p in sorted(table.probs[src].items()):
                fh.write(f"{src}\t{tgt}\t{p!r}\n")


def load_ttable(path: "str | Path") -> TTable:
    probs: dict[str, dict[str, float]] = defaultdict(dict)
    floor, use_null = DEFAULT_FLOOR, True
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            fields = line.rstrip("\n").split("\t")
            if lineno == 1 and fields[0] == "#corpusforge-ttable":
                meta = dict(f.split("=", 1) for f in fields[1:])
                floor = float(meta.get("floor", floor))
                use_null = meta.get("use_null", "1") == "1"
                continue
            if len(fields) != 3:
                raise ValueError(f"{path}:{lineno}: expected src<TAB>tgt<TAB>prob")
            probs[fields[0]][fields[1]] = float(fields[2])
    return TTable(dict(probs), floor, use_null)
