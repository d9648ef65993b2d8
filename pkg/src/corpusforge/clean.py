"""Moses-style pair filtering: drop empty pairs, over-long sides, and pairs
whose token-length ratio exceeds the limit (exactly at the limit is kept)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .align.types import AlignedPair

REASONS = ("empty", "length", "ratio")


@dataclass(frozen=True)
class CleanConfig:
    max_tokens: int = 80
    max_ratio: float = 9.0

    def __post_init__(self):
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be at least 1")
        if self.max_ratio < 1:
            raise ValueError("max_ratio must be at least 1")


@dataclass
class CleanReport:
    total: int = 0
    kept: int = 0
    rejected: Counter = field(default_factory=Counter)

    def to_dict(self) -> dict:
        return {"total": self.total, "kept": self.kept,
                "rejected": {r: self.rejected.get(r, 0) for r in REASONS}}


def rejection_reason(src: str, tgt: str, cfg: CleanConfig) -> str | None:
    ls, lt = len(src.split()), len(tgt.split())
    if ls == 0 or lt == 0:
        return "empty"
    if ls > cfg.max_tokens or lt > cfg.max_tokens:
        return "length"
    if max(ls, lt) > cfg.max_ratio * min(ls, lt):
        return "ratio"
    return None


def filter_pairs(pairs: Sequence[AlignedPair], cfg: CleanConfig | None = None,
                 ) -> tuple[list[AlignedPair], CleanReport]:
    cfg = cfg or CleanConfig()
    report = CleanReport(total=len(pairs))
    kept = []
    for pair in pairs:
        reason = rejection_reason(pair.src_sentence, pair.tgt_sentence, cfg)
        if reason is None:
            kept.append(pair)
        else:
            report.rejected[reason] += 1
    report.kept = len(kept)
    return kept, report
