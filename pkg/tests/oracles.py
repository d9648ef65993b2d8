"""Independent reference implementations used as test oracles.

Each oracle is written from the definition, by brute force, and shares no
code with the package beyond plain data types.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from functools import lru_cache

import numpy as np

SHAPES = {"1-1": (1, 1), "1-0": (1, 0), "0-1": (0, 1), "2-1": (2, 1), "1-2": (1, 2)}
KINDS = tuple(SHAPES)


# ---------------------------------------------------------------- lattice

def bead_index(m: int, n: int):
    """All beads that fit an m x n lattice, as (kind, i_end, j_end), with ids."""
    beads = [(k, i, j) for k, (a, b) in SHAPES.items()
             for i in range(a, m + 1) for j in range(b, n + 1)]
    return beads, {b: x for x, b in enumerate(beads)}


@lru_cache(maxsize=None)
def monotone_paths(m: int, n: int) -> np.ndarray:
    """Every monotone bead sequence from (0,0) to (m,n), one row per path,
    as bead ids padded with -1.  Built by extending shorter paths."""
    beads, ids = bead_index(m, n)
    width = m + n
    table: dict[tuple[int, int], np.ndarray] = {(0, 0): np.full((1, width), -1, dtype=np.int32)}
    for i in range(m + 1):
        for j in range(n + 1):
            if (i, j) == (0, 0):
                continue
            parts = []
            for kind, (a, b) in SHAPES.items():
                if i >= a and j >= b and (i - a, j - b) in table:
                    prev = table[(i - a, j - b)]
                    if not len(prev):
                        continue
                    ext = prev.copy()
                    pos = (ext >= 0).sum(axis=1)
                    ext[np.arange(len(ext)), pos] = ids[(kind, i, j)]
                    parts.append(ext)
            table[(i, j)] = np.concatenate(parts) if parts else np.zeros((0, width), dtype=np.int32)
    return table[(m, n)]


def count_paths(m: int, n: int) -> int:
    """Path count by the plain recurrence, to check the enumerator."""
    @lru_cache(maxsize=None)
    def c(i, j):
        if i == 0 and j == 0:
            return 1
        return sum(c(i - a, j - b) for a, b in SHAPES.values() if i >= a and j >= b)
    return c(m, n)


def enumerate_posteriors(m: int, n: int, score) -> tuple[dict, float]:
    """Posterior of every bead and log Z by summing over all paths.

    ``score(kind, i_end, j_end)`` gives a bead's log score.
    """
    beads, _ = bead_index(m, n)
    paths = monotone_paths(m, n)
    s = np.array([score(*b) for b in beads] + [0.0])  # padding id -1 scores 0
    valid = np.isfinite(s)
    s = np.where(valid, s, -np.inf)
    path_scores = s[paths].sum(axis=1)
    top = path_scores.max()
    log_z = top + math.log(np.exp(path_scores - top).sum())
    w = np.exp(path_scores - log_z)
    flat = paths.ravel()
    keep = flat >= 0
    post = np.bincount(flat[keep], weights=np.repeat(w, paths.shape[1])[keep], minlength=len(beads))
    return {b: float(p) for b, p in zip(beads, post)}, float(log_z)


def poisson_logpmf(k: int, lam: float) -> float:
    if lam == 0:
        return 0.0 if k == 0 else -math.inf
    return k * math.log(lam) - lam - math.lgamma(k + 1)


def length_score(kind, src_lens, tgt_lens, ratio, priors, src_mean, tgt_mean) -> float:
    lp = math.log(priors[kind])
    ls, lt = sum(src_lens), sum(tgt_lens)
    if src_lens and tgt_lens:
        return lp + poisson_logpmf(lt, ratio * ls)
    if src_lens:
        return lp + sum(poisson_logpmf(x, src_mean) for x in src_lens)
    return lp + sum(poisson_logpmf(x, tgt_mean) for x in tgt_lens)


def model1_score(src, tgt, probs, floor, use_null, src_vocab, tgt_vocab, null="<NULL>", rare="<RARE>"):
    if not tgt:
        return 0.0
    sources = [w if w in src_vocab else rare for w in src] + ([null] if use_null else [])
    total = 0.0
    for w in tgt:
        w = w if w in tgt_vocab else rare
        total += math.log(sum(probs.get(s, {}).get(w, floor) for s in sources) / len(sources))
    return total


# ---------------------------------------------------------------- IBM Model 1

def em_by_alignment_enumeration(corpus, iterations: int, use_null: bool = True):
    """Model 1 EM where the E-step sums over every alignment explicitly."""
    null = "<NULL>"
    corpus = [((s + [null]) if use_null else s, t) for s, t in corpus]
    cooc = defaultdict(set)
    for s, t in corpus:
        for w in s:
            cooc[w].update(t)
    t_prob = {s: {w: 1 / len(ts) for w in ts} for s, ts in cooc.items()}
    history = [t_prob]
    for _ in range(iterations):
        counts = defaultdict(lambda: defaultdict(float))
        for s, t in corpus:
            aligns = list(itertools.product(range(len(s)), repeat=len(t)))
            weights = [math.prod(t_prob[s[a]][w] for a, w in zip(al, t)) for al in aligns]
            z = sum(weights)
            for al, wt in zip(aligns, weights):
                for a, w in zip(al, t):
                    counts[s[a]][w] += wt / z
        t_prob = {s: {w: c / sum(row.values()) for w, c in row.items()} for s, row in counts.items()}
        history.append(t_prob)
    return history


# ---------------------------------------------------------------- metrics

def brute_bleu(hyps, refs) -> float:
    """Corpus BLEU with explicit position loops and list-based clipping."""
    matches = [0] * 4
    totals = [0] * 4
    hl = rl = 0
    for h, r in zip(hyps, refs):
        hl += len(h)
        rl += len(r)
        for n in range(1, 5):
            hg = [tuple(h[i:i + n]) for i in range(len(h) - n + 1)]
            rg = [tuple(r[i:i + n]) for i in range(len(r) - n + 1)]
            totals[n - 1] += len(hg)
            avail = list(rg)
            for g in hg:
                if g in avail:
                    avail.remove(g)
                    matches[n - 1] += 1
    if any(m == 0 for m in matches) or hl == 0:
        return 0.0
    bp = 1.0 if hl >= rl else math.exp(1 - rl / hl)
    return 100 * bp * math.exp(sum(math.log(m / t) for m, t in zip(matches, totals)) / 4)


def edit_distance(a: str, b: str) -> int:
    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))
    return d(len(a), len(b))


def all_single_shifts(words: list[str]):
    """Every sequence reachable by moving one contiguous block of words."""
    n = len(words)
    for start in range(n):
        for end in range(start + 1, n + 1):
            block, rest = words[start:end], words[:start] + words[end:]
            for dest in range(len(rest) + 1):
                moved = rest[:dest] + block + rest[dest:]
                if moved != words:
                    yield moved


def best_cost_within_one_shift(hyp: str, ref: str) -> int:
    """min(edit distance, 1 + edit distance after the best single shift)."""
    words = hyp.split()
    best = edit_distance(" ".join(words), ref)
    for moved in all_single_shifts(words):
        best = min(best, 1 + edit_distance(" ".join(moved), ref))
    return best


# ---------------------------------------------------------------- aligner cases

def random_document_pair(rng, max_sents: int = 8, vocab: int = 12):
    """Two short documents of random words; sentence lengths 0..9."""
    def doc(prefix):
        n = rng.randint(1, max_sents)
        return [" ".join(f"{prefix}{rng.randrange(vocab)}" for _ in range(rng.choice([0] + list(range(1, 10)))))
                for _ in range(n)]
    return doc("s"), doc("t")


def oracle_bead_posteriors(src, tgt, model, table=None, unigram=None):
    """Exhaustive-enumeration posteriors keyed by (kind, src_span, tgt_span)."""
    src_tok = [s.split() for s in src]
    tgt_tok = [t.split() for t in tgt]
    priors = model.bead_priors

    def score(kind, i, j):
        a, b = SHAPES[kind]
        s, t = src_tok[i - a:i], tgt_tok[j - b:j]
        total = length_score(kind, [len(x) for x in s], [len(x) for x in t], model.ratio, priors,
                             model.src_mean, model.tgt_mean)
        if table is not None:
            sw = [w for x in s for w in x]
            tw = [w for x in t for w in x]
            if not sw and unigram is not None:
                total += sum(math.log(unigram.probs.get(w if w in table.tgt_vocab else "<RARE>", unigram.floor))
                             for w in tw)
            else:
                total += model1_score(sw, tw, table.probs, table.floor, table.use_null,
                                      table.src_vocab, table.tgt_vocab)
        return total

    post, log_z = enumerate_posteriors(len(src), len(tgt), score)
    out = {}
    for (kind, i, j), p in post.items():
        a, b = SHAPES[kind]
        out[(kind, (i - a, i), (j - b, j))] = p
    return out, log_z


def max_posterior_error(beads, oracle) -> float:
    got = {(b.type, b.src_span, b.tgt_span): b.posterior for b in beads}
    keys = set(got) | set(oracle)
    return max((abs(got.get(k, 0.0) - oracle.get(k, 0.0)) for k in keys), default=0.0)


# ---------------------------------------------------------------- BPE

def naive_bpe(corpus, num_merges, eow="</w>"):
    """Greedy BPE that recounts every pair from scratch each step; ties go
    to the smallest pair in tuple order."""
    words = {tuple(w) + (eow,): c for w, c in corpus.items()}
    merges = []
    for _ in range(num_merges):
        counts = defaultdict(int)
        for sym, c in words.items():
            for p in zip(sym, sym[1:]):
                counts[p] += c
        if not counts:
            break
        best = min(counts, key=lambda p: (-counts[p], p))
        if counts[best] < 2:
            break
        merges.append(best)
        new = {}
        for sym, c in words.items():
            out, k = [], 0
            while k < len(sym):
                if k + 1 < len(sym) and (sym[k], sym[k + 1]) == best:
                    out.append(sym[k] + sym[k + 1])
                    k += 2
                else:
                    out.append(sym[k])
                    k += 1
            new[tuple(out)] = new.get(tuple(out), 0) + c
        words = new
    return merges
