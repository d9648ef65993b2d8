from __future__ import annotations

from dataclasses import dataclass, field

# bead type -> (source sentences, target sentences)
BEAD_SHAPES: dict[str, tuple[int, int]] = {
    "1-1": (1, 1),
    "1-0": (1, 0),
    "0-1": (0, 1),
    "2-1": (2, 1),
    "1-2": (1, 2),
}
DEFAULT_PRIORS = {"1-1": 0.94, "1-0": 0.02, "0-1": 0.02, "2-1": 0.01, "1-2": 0.01}


class AlignmentError(ValueError):
    """Degenerate input to the aligner (no tokens, no pairs to train on)."""


@dataclass
class Document:
    """Ordered sentences of one language side of a bitext."""

    sentences: list[str]
    lang: str = ""
    doc_id: str = ""

    def __len__(self):
        return len(self.sentences)

    def token_lengths(self) -> list[int]:
        return [len(s.split()) for s in self.sentences]

    def tokens(self) -> list[list[str]]:
        return [s.split() for s in self.sentences]


@dataclass(frozen=True)
class Bead:
    """One lattice cell: ``src_span``/``tgt_span`` are half-open index ranges."""

    type: str
    src_span: tuple[int, int]
    tgt_span: tuple[int, int]
    posterior: float = 0.0

    def __post_init__(self):
        a, b = BEAD_SHAPES[self.type]
        if self.src_span[1] - self.src_span[0] != a or self.tgt_span[1] - self.tgt_span[0] != b:
            raise ValueError(f"spans {self.src_span}, {self.tgt_span} inconsistent with bead {self.type}")
        if not -1e-12 <= self.posterior <= 1 + 1e-9:
            raise ValueError(f"posterior {self.posterior} outside [0, 1]")


@dataclass(frozen=True)
class AlignedPair:
    src_sentence: str
    tgt_sentence: str
    src_index: int
    tgt_index: int
    posterior: float = 1.0
    provenance: str = ""


@dataclass
class LengthModel:
    """Poisson length-ratio model with bead-type priors.

    ``src_mean``/``tgt_mean`` are mean sentence lengths, used to score the
    unmatched side of 1-0 and 0-1 beads.
    """

    ratio: float
    bead_priors: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_PRIORS))
    src_mean: float = 1.0
    tgt_mean: float = 1.0

    def __post_init__(self):
        if not self.ratio > 0:
            raise ValueError("length ratio must be positive")
        if set(self.bead_priors) != set(BEAD_SHAPES):
            raise ValueError(f"bead priors must cover exactly {sorted(BEAD_SHAPES)}")
        if any(p <= 0 for p in self.bead_priors.values()):
            raise ValueError("every bead prior must be positive")
        total = sum(self.bead_priors.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"bead priors sum to {total}, not 1")
