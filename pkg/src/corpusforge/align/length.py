from __future__ import annotations

import math
from typing import Sequence

from .types import DEFAULT_PRIORS, AlignmentError, Bead, Document, LengthModel


def poisson_logpmf(k: int, lam: float) -> float:
    """log P(k; lam), with P(0; 0) = 1."""
    if lam <= 0:
        return 0.0 if k == 0 else -math.inf
    return k * math.log(lam) - lam - math.lgamma(k + 1)


def fit_length_model(docs: Sequence[tuple[Document, Document]],
                     bead_priors: dict[str, float] | None = None) -> LengthModel:
    if not docs:
        raise AlignmentError("no document pairs to fit a length model on")
    src_tokens = tgt_tokens = src_sents = tgt_sents = 0
    for src, tgt in docs:
        src_tokens += sum(src.token_lengths())
        tgt_tokens += sum(tgt.token_lengths())
        src_sents += len(src)
        tgt_sents += len(tgt)
    if src_tokens == 0:
        raise AlignmentError("degenerate corpus: zero source tokens")
    if tgt_tokens == 0:
        raise AlignmentError("degenerate corpus: zero target tokens")
    return LengthModel(
        ratio=tgt_tokens / src_tokens,
        bead_priors=dict(bead_priors or DEFAULT_PRIORS),
        src_mean=src_tokens / src_sents,
        tgt_mean=tgt_tokens / tgt_sents,
    )


def length_logprob(kind: str, src_lens: Sequence[int], tgt_lens: Sequence[int],
                   model: LengthModel) -> float:
    """Length score of a bead covering the given sentence lengths."""
    score = math.log(model.bead_priors[kind])
    ls, lt = sum(src_lens), sum(tgt_lens)
    if src_lens and tgt_lens:
        return score + poisson_logpmf(lt, model.ratio * ls)
    # unmatched sentences pay for their own length
    for n in src_lens:
        score += poisson_logpmf(n, model.src_mean)
    for n in tgt_lens:
        score += poisson_logpmf(n, model.tgt_mean)
    return score


def length_bead_logprob(bead: Bead, src_lens: Sequence[int], tgt_lens: Sequence[int],
                        model: LengthModel) -> float:
    """Length score of ``bead`` given per-sentence token counts of both documents."""
    s0, s1 = bead.src_span
    t0, t1 = bead.tgt_span
    return length_logprob(bead.type, src_lens[s0:s1], tgt_lens[t0:t1], model)
