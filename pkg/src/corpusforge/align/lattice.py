"""Forward-backward over the monotone bead lattice.

Cell ``(i, j)`` means the first ``i`` source and ``j`` target sentences are
covered.  A bead of shape ``(a, b)`` ending at ``(i, j)`` covers source
sentences ``i-a .. i-1`` and target sentences ``j-b .. j-1``.  All
arithmetic is in log space.

Only cells within ``band`` of the diagonal are filled.  If a band edge
carries noticeable posterior mass the band is doubled and the lattice
recomputed, so small documents are always computed in full.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np
from scipy import sparse
from scipy.special import gammaln

from .length import length_logprob
from .model1 import NULL, TTable, Unigram, model1_logprob
from .types import BEAD_SHAPES, AlignmentError, Bead, LengthModel

NEG = -np.inf
DEFAULT_BAND = 30
EDGE_TOL = 1e-4


class RowScorer(Protocol):
    def row(self, i: int, js: np.ndarray) -> dict[str, np.ndarray]:
        """Scores of every bead type ending at ``(i, j)`` for ``j`` in ``js``."""


def _poisson_logpmf(k: np.ndarray, lam: np.ndarray) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    lam = np.broadcast_to(np.asarray(lam, dtype=float), k.shape)
    out = np.where(k == 0, 0.0, NEG)
    pos = lam > 0
    with np.errstate(divide="ignore"):
        out[pos] = k[pos] * np.log(lam[pos]) - lam[pos] - gammaln(k[pos] + 1)
    return out


class LengthScorer:
    def __init__(self, src_lens: Sequence[int], tgt_lens: Sequence[int], model: LengthModel):
        self.src_lens = np.asarray(src_lens, dtype=float)
        self.tgt_lens = np.asarray(tgt_lens, dtype=float)
        self.src_cum = np.concatenate([[0.0], np.cumsum(self.src_lens)])
        self.tgt_cum = np.concatenate([[0.0], np.cumsum(self.tgt_lens)])
        self.model = model
        self.log_prior = {t: math.log(p) for t, p in model.bead_priors.items()}
        self.src_alone = _poisson_logpmf(self.src_lens, model.src_mean)
        self.tgt_alone = _poisson_logpmf(self.tgt_lens, model.tgt_mean)

    def row(self, i, js):
        out = {}
        for kind, (a, b) in BEAD_SHAPES.items():
            arr = np.full(len(js), NEG)
            if i >= a:
                ok = js >= b
                jv = js[ok]
                if a and b:
                    ls = self.src_cum[i] - self.src_cum[i - a]
                    lt = self.tgt_cum[jv] - self.tgt_cum[jv - b]
                    arr[ok] = self.log_prior[kind] + _poisson_logpmf(lt, self.model.ratio * ls)
                elif a:
                    arr[ok] = self.log_prior[kind] + self.src_alone[i - 1]
                else:
                    arr[ok] = self.log_prior[kind] + self.tgt_alone[jv - 1]
            out[kind] = arr
        return out


class Model1Scorer:
    """Length score plus IBM Model 1 score of the target side given the source side.

    Target sentences of 0-1 beads are scored by ``unigram`` when given, else
    by the NULL word alone.
    """

    def __init__(self, src_tokens: Sequence[Sequence[str]], tgt_tokens: Sequence[Sequence[str]],
                 model: LengthModel, table: TTable, unigram: Unigram | None = None):
        self.length = LengthScorer([len(s) for s in src_tokens], [len(t) for t in tgt_tokens], model)
        self.use_null = table.use_null
        floor = table.floor

        tgt_ids: dict[str, int] = {}
        mapped_tgt = [[table.map_tgt(w) for w in sent] for sent in tgt_tokens]
        for sent in mapped_tgt:
            for w in sent:
                tgt_ids.setdefault(w, len(tgt_ids))
        src_ids: dict[str, int] = {}
        mapped_src = [[table.map_src(w) for w in sent] for sent in src_tokens]
        for sent in mapped_src:
            for w in sent:
                src_ids.setdefault(w, len(src_ids))
        n_src, n_tgt = len(src_ids), len(tgt_ids)

        rows, cols, vals = [], [], []
        for sw, si in src_ids.items():
            for tw, p in table.probs.get(sw, {}).items():
                ti = tgt_ids.get(tw)
                if ti is not None:
                    rows.append(si)
                    cols.append(ti)
                    vals.append(p)
        self.probs = sparse.csr_matrix((vals, (rows, cols)), shape=(n_src, n_tgt))
        self.seen = sparse.csr_matrix((np.ones(len(vals)), (rows, cols)), shape=(n_src, n_tgt))
        self.floor = floor
        null_row = table.probs.get(NULL, {})
        self.null = np.full(n_tgt, floor)
        for tw, ti in tgt_ids.items():
            if tw in null_row:
                self.null[ti] = null_row[tw]
        if not self.use_null:
            self.null[:] = 0.0

        self.src_sent_ids = [np.array([src_ids[w] for w in s], dtype=np.int64) for s in mapped_src]
        self.tgt_flat = np.array([tgt_ids[w] for s in mapped_tgt for w in s], dtype=np.int64)
        lens = np.array([len(s) for s in mapped_tgt], dtype=np.int64)
        self.tgt_lens = lens
        self.tgt_off = np.concatenate([[0], np.cumsum(lens)])
        self.tgt_sent_of_token = np.repeat(np.arange(len(lens)), lens)
        if unigram is None:
            with np.errstate(divide="ignore"):
                self.null_only = self._per_sentence(np.zeros(n_tgt), 0, 0, len(lens))
        else:
            uni = np.log([unigram.probs.get(w, unigram.floor) for w in tgt_ids]) if tgt_ids else np.zeros(0)
            self.null_only = np.bincount(self.tgt_sent_of_token, weights=uni[self.tgt_flat],
                                         minlength=len(lens)).astype(float)
        self._sums: dict[int, np.ndarray] = {}

    def _source_sum(self, k: int) -> np.ndarray:
        """sum over the tokens of source sentence k of t(w | s), per target word w."""
        cached = self._sums.get(k)
        if cached is None:
            ids = self.src_sent_ids[k]
            if len(ids) == 0:
                cached = np.zeros(self.probs.shape[1])
            else:
                p = np.asarray(self.probs[ids].sum(axis=0)).ravel()
                seen = np.asarray(self.seen[ids].sum(axis=0)).ravel()
                cached = p + self.floor * (len(ids) - seen)
            if len(self._sums) > 4:
                self._sums.pop(min(self._sums))
            self._sums[k] = cached
        return cached

    def _per_sentence(self, source_sum: np.ndarray, n_src_tokens: int, k0: int, k1: int) -> np.ndarray:
        """Model 1 score of each target sentence k0..k1-1 under a source span."""
        if k1 <= k0:
            return np.zeros(0)
        a, b = self.tgt_off[k0], self.tgt_off[k1]
        ids = self.tgt_flat[a:b]
        n_gen = n_src_tokens + (1 if self.use_null else 0)
        with np.errstate(divide="ignore"):
            vals = np.log(source_sum[ids] + self.null[ids])
            sums = np.bincount(self.tgt_sent_of_token[a:b] - k0, weights=vals, minlength=k1 - k0)
            if n_gen == 0:
                return np.where(self.tgt_lens[k0:k1] == 0, 0.0, NEG)
            return sums - self.tgt_lens[k0:k1] * math.log(n_gen)

    def row(self, i, js):
        out = self.length.row(i, js)
        if len(js) == 0:
            return out
        n = len(self.tgt_lens)
        k0 = max(int(js[0]) - 2, 0)
        k1 = min(int(js[-1]), n)
        for kind, (a, b) in BEAD_SHAPES.items():
            if b == 0 or i < a:
                continue
            if a == 0:
                per = self.null_only[k0:k1]
            else:
                total = self._source_sum(i - 1)
                ntok = len(self.src_sent_ids[i - 1])
                if a == 2:
                    total = total + self._source_sum(i - 2)
                    ntok += len(self.src_sent_ids[i - 2])
                per = self._per_sentence(total, ntok, k0, k1)
            ok = js >= b
            jv = js[ok]
            m1 = per[jv - 1 - k0]
            if b == 2:
                m1 = m1 + per[jv - 2 - k0]
            out[kind][ok] += m1
        return out


def bead_logprob(kind: str, src_tokens: Sequence[Sequence[str]], tgt_tokens: Sequence[Sequence[str]],
                 model: LengthModel, table: TTable | None = None, unigram: Unigram | None = None) -> float:
    """Scalar bead score from the sentences it covers (length, plus Model 1 if ``table``)."""
    score = length_logprob(kind, [len(s) for s in src_tokens], [len(t) for t in tgt_tokens], model)
    if table is not None:
        src = [w for s in src_tokens for w in s]
        tgt = [w for t in tgt_tokens for w in t]
        if not src and unigram is not None:
            score += unigram.logprob(tgt, table)
        else:
            score += model1_logprob(src, tgt, table)
    return score


def _lae(x: float, y: float) -> float:
    if x == NEG:
        return y
    if y == NEG:
        return x
    if x > y:
        return x + math.log1p(math.exp(y - x))
    return y + math.log1p(math.exp(x - y))


def _take(rows: list[np.ndarray], lo: np.ndarray, hi: np.ndarray, i: int, js: np.ndarray) -> np.ndarray:
    out = np.full(len(js), NEG)
    if i < 0 or i >= len(rows):
        return out
    ok = (js >= lo[i]) & (js <= hi[i])
    out[ok] = rows[i][js[ok] - lo[i]]
    return out


@dataclass
class Lattice:
    m: int
    n: int
    lo: np.ndarray
    hi: np.ndarray
    scores: list[dict[str, np.ndarray]]
    alpha: list[np.ndarray]
    beta: list[np.ndarray]
    log_z_forward: float
    log_z_backward: float
    band: int

    @property
    def log_z(self) -> float:
        return self.log_z_forward

    @property
    def full(self) -> bool:
        return bool(np.all(self.lo == 0) and np.all(self.hi == self.n))

    def columns(self, i: int) -> np.ndarray:
        return np.arange(self.lo[i], self.hi[i] + 1)

    def posteriors(self, kind: str, i: int) -> tuple[np.ndarray, np.ndarray]:
        """``(js, posterior)`` for beads of ``kind`` ending in row ``i``."""
        a, b = BEAD_SHAPES[kind]
        js = self.columns(i)
        start = _take(self.alpha, self.lo, self.hi, i - a, js - b)
        with np.errstate(invalid="ignore"):
            logp = start + self.scores[i][kind] + self.beta[i] - self.log_z
        post = np.exp(logp)
        post[np.isnan(post)] = 0.0
        return js, np.minimum(post, 1.0)

    def beads(self, kinds: Sequence[str] = tuple(BEAD_SHAPES), min_posterior: float = 0.0) -> list[Bead]:
        out = []
        for i in range(self.m + 1):
            for kind in kinds:
                a, b = BEAD_SHAPES[kind]
                if i < a:
                    continue
                js, post = self.posteriors(kind, i)
                finite = np.isfinite(self.scores[i][kind]) & (js >= b)
                finite &= np.isfinite(_take(self.alpha, self.lo, self.hi, i - a, js - b))
                for j, p in zip(js[finite], post[finite]):
                    if p >= min_posterior:
                        out.append(Bead(kind, (i - a, i), (int(j) - b, int(j)), float(p)))
        out.sort(key=lambda bd: (bd.src_span, bd.tgt_span))
        return out


def _band_limits(m: int, n: int, w: int) -> tuple[np.ndarray, np.ndarray]:
    i = np.arange(m + 1)
    centre = i * (n / m) if m else np.zeros(1)
    lo = np.maximum(0, np.floor(centre - w)).astype(np.int64)
    hi = np.minimum(n, np.ceil(centre + w)).astype(np.int64)
    return lo, hi


def _run(m: int, n: int, scorer: RowScorer, w: int) -> Lattice:
    lo, hi = _band_limits(m, n, w)
    scores = [scorer.row(i, np.arange(lo[i], hi[i] + 1)) for i in range(m + 1)]
    moving = [(k, ab) for k, ab in BEAD_SHAPES.items() if ab[0] > 0]

    alpha: list[np.ndarray] = []
    for i in range(m + 1):
        js = np.arange(lo[i], hi[i] + 1)
        acc = np.full(len(js), NEG)
        if i == 0:
            acc[js == 0] = 0.0
        for kind, (a, b) in moving:
            if i >= a:
                acc = np.logaddexp(acc, _take(alpha, lo, hi, i - a, js - b) + scores[i][kind])
        s01 = scores[i]["0-1"]
        row = acc.tolist()
        for k in range(1, len(row)):
            row[k] = _lae(row[k], row[k - 1] + s01[k])
        alpha.append(np.array(row))

    by_kind = {kind: [s[kind] for s in scores] for kind, _ in moving}
    beta: list[np.ndarray] = [np.zeros(0)] * (m + 1)
    for i in range(m, -1, -1):
        js = np.arange(lo[i], hi[i] + 1)
        acc = np.full(len(js), NEG)
        if i == m:
            acc[js == n] = 0.0
        for kind, (a, b) in moving:
            if i + a <= m:
                ahead = _take(beta, lo, hi, i + a, js + b)
                step = _take(by_kind[kind], lo, hi, i + a, js + b)
                acc = np.logaddexp(acc, ahead + step)
        s01 = scores[i]["0-1"]
        row = acc.tolist()
        for k in range(len(row) - 2, -1, -1):
            row[k] = _lae(row[k], row[k + 1] + s01[k + 1])
        beta[i] = np.array(row)

    z_f = float(alpha[m][n - lo[m]])
    z_b = float(beta[0][0 - lo[0]])
    if z_f == NEG:
        raise AlignmentError("no alignment path has non-zero probability")
    return Lattice(m, n, lo, hi, scores, alpha, beta, z_f, z_b, w)


def _edge_mass(lat: Lattice) -> float:
    worst = 0.0
    for i in range(lat.m + 1):
        cell = lat.alpha[i] + lat.beta[i] - lat.log_z
        if lat.lo[i] > 0:
            worst = max(worst, math.exp(cell[0]))
        if lat.hi[i] < lat.n:
            worst = max(worst, math.exp(cell[-1]))
    return worst


def run_lattice(m: int, n: int, scorer: RowScorer, band: int = DEFAULT_BAND,
                edge_tol: float = EDGE_TOL) -> Lattice:
    """Fill the lattice for an ``m`` x ``n`` document pair, widening the band
    until its edges carry less than ``edge_tol`` posterior mass."""
    if m == 0 or n == 0:
        raise AlignmentError("cannot align an empty document")
    w = max(int(band), math.ceil(n / m) + 2, 2)
    while True:
        lat = _run(m, n, scorer, w)
        if lat.full or _edge_mass(lat) <= edge_tol:
            return lat
        w *= 2
