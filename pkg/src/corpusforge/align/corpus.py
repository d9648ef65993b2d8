"""Two-pass lexicon-free sentence alignment.

Pass 1 scores beads by sentence length only and keeps near-certain 1-1
pairs; those train an IBM Model 1 table and a target unigram model; pass 2
rescoring adds the Model 1 score (the unigram score for target sentences
with no source counterpart) and keeps 1-1 beads above the acceptance
threshold.
"""

from __future__ import annotations

import bisect
import logging
from dataclasses import asdict, dataclass, field
from typing import Mapping, Sequence

from .lattice import DEFAULT_BAND, EDGE_TOL, Lattice, LengthScorer, Model1Scorer, run_lattice
from .length import fit_length_model
from .model1 import DEFAULT_FLOOR, TTable, Unigram, fit_unigram, train_ibm1
from .types import DEFAULT_PRIORS, AlignedPair, AlignmentError, Bead, Document, LengthModel

log = logging.getLogger(__name__)


@dataclass
class AlignConfig:
    bead_priors: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_PRIORS))
    pass1_threshold: float = 0.99
    threshold: float = 0.5
    iterations: int = 4
    floor: float = DEFAULT_FLOOR
    min_count: int = 2
    use_null: bool = True
    band: int = DEFAULT_BAND
    edge_tol: float = EDGE_TOL


@dataclass
class ReportRow:
    doc_id: str
    src_sentences: int
    tgt_sentences: int
    pairs: int


@dataclass
class AlignmentReport:
    """Per-document pair counts, in the shape of a corpus statistics table."""

    rows: list[ReportRow] = field(default_factory=list)
    training_pairs: int = 0

    @property
    def total(self) -> int:
        return sum(r.pairs for r in self.rows)

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "AlignmentReport":
        return cls([ReportRow(doc, 0, 0, int(c)) for doc, c in counts.items()])

    def to_dict(self) -> dict:
        return {"documents": [asdict(r) for r in self.rows], "total": self.total,
                "training_pairs": self.training_pairs}

    def format_table(self) -> str:
        width = max([len(r.doc_id) for r in self.rows] + [len("Total")])
        lines = [f"{'Document':<{width}}  Pairs"]
        lines += [f"{r.doc_id:<{width}}  {r.pairs:>{len('Pairs')},}" for r in self.rows]
        lines.append(f"{'Total':<{width}}  {self.total:,}")
        return "\n".join(lines)


def _pair(src: Document, tgt: Document):
    if isinstance(src, (list, tuple)):
        src = Document(list(src))
    if isinstance(tgt, (list, tuple)):
        tgt = Document(list(tgt))
    return src, tgt


def length_lattice(src: Document, tgt: Document, model: LengthModel, *,
                   band: int = DEFAULT_BAND, edge_tol: float = EDGE_TOL) -> Lattice:
    src, tgt = _pair(src, tgt)
    scorer = LengthScorer(src.token_lengths(), tgt.token_lengths(), model)
    return run_lattice(len(src), len(tgt), scorer, band, edge_tol)


def model1_lattice(src: Document, tgt: Document, model: LengthModel, table: TTable, *,
                   unigram: Unigram | None = None, band: int = DEFAULT_BAND,
                   edge_tol: float = EDGE_TOL) -> Lattice:
    src, tgt = _pair(src, tgt)
    scorer = Model1Scorer(src.tokens(), tgt.tokens(), model, table, unigram)
    return run_lattice(len(src), len(tgt), scorer, band, edge_tol)


def pass1_posteriors(src: Document, tgt: Document, model: LengthModel, *,
                     band: int = DEFAULT_BAND, min_posterior: float = 0.0) -> list[Bead]:
    """Length-only posteriors of every reachable bead, sorted by position."""
    src, tgt = _pair(src, tgt)
    if not len(src) or not len(tgt):
        return []
    return length_lattice(src, tgt, model, band=band).beads(min_posterior=min_posterior)


def pass2_posteriors(src: Document, tgt: Document, model: LengthModel, table: TTable, *,
                     unigram: Unigram | None = None, band: int = DEFAULT_BAND,
                     min_posterior: float = 0.0) -> list[Bead]:
    src, tgt = _pair(src, tgt)
    if not len(src) or not len(tgt):
        return []
    lat = model1_lattice(src, tgt, model, table, unigram=unigram, band=band)
    return lat.beads(min_posterior=min_posterior)


def _monotone(beads: Sequence[Bead]) -> list[Bead]:
    """Drop 1-1 beads that would cross or share a sentence with a
    higher-posterior bead.  A no-op at thresholds above 0.5."""
    kept: list[Bead] = []
    keys: list[int] = []
    for bead in sorted(beads, key=lambda b: (-b.posterior, b.src_span, b.tgt_span)):
        s, t = bead.src_span[0], bead.tgt_span[0]
        k = bisect.bisect_left(keys, s)
        if k < len(keys) and keys[k] == s:
            continue
        if k > 0 and kept[k - 1].tgt_span[0] >= t:
            continue
        if k < len(kept) and kept[k].tgt_span[0] <= t:
            continue
        keys.insert(k, s)
        kept.insert(k, bead)
    return kept


def select_training_pairs(beads: Sequence[Bead], threshold: float, src: Document, tgt: Document,
                          provenance: str = "") -> list[AlignedPair]:
    """1-1 beads with posterior >= ``threshold`` as sentence pairs, in order."""
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    src, tgt = _pair(src, tgt)
    chosen = _monotone([b for b in beads if b.type == "1-1" and b.posterior >= threshold])
    provenance = provenance or src.doc_id
    return [AlignedPair(src.sentences[b.src_span[0]], tgt.sentences[b.tgt_span[0]],
                        b.src_span[0], b.tgt_span[0], b.posterior, provenance) for b in chosen]


def _one_to_one(lat: Lattice, threshold: float) -> list[Bead]:
    beads = []
    for i in range(1, lat.m + 1):
        js, post = lat.posteriors("1-1", i)
        for j, p in zip(js, post):
            if j >= 1 and p >= threshold:
                beads.append(Bead("1-1", (i - 1, i), (int(j) - 1, int(j)), float(p)))
    return beads


def pass2_align(src: Document, tgt: Document, model: LengthModel, table: TTable,
                threshold: float = 0.5, *, unigram: Unigram | None = None,
                band: int = DEFAULT_BAND, edge_tol: float = EDGE_TOL) -> list[AlignedPair]:
    src, tgt = _pair(src, tgt)
    if not len(src) or not len(tgt) or threshold > 1:
        return []
    lat = model1_lattice(src, tgt, model, table, unigram=unigram, band=band, edge_tol=edge_tol)
    return select_training_pairs(_one_to_one(lat, threshold), threshold, src, tgt)


def _pass1_pairs(src: Document, tgt: Document, model: LengthModel, cfg: AlignConfig) -> list[AlignedPair]:
    if not len(src) or not len(tgt):
        return []
    lat = length_lattice(src, tgt, model, band=cfg.band, edge_tol=cfg.edge_tol)
    return select_training_pairs(_one_to_one(lat, cfg.pass1_threshold), cfg.pass1_threshold, src, tgt)


def align_corpus(docs: Sequence[tuple[Document, Document]], config: AlignConfig | None = None,
                 ) -> tuple[list[AlignedPair], AlignmentReport]:
    """Align every document pair with a shared length model and Model 1 table."""
    cfg = config or AlignConfig()
    docs = [_pair(s, t) for s, t in docs]
    model = fit_length_model(docs, cfg.bead_priors)
    log.info("length model: ratio %.4f", model.ratio)

    training: list[AlignedPair] = []
    for src, tgt in docs:
        training += _pass1_pairs(src, tgt, model, cfg)
    if not training:
        raise AlignmentError("pass 1 found no 1-1 pairs above the selection threshold")
    log.info("pass 1: %d training pairs", len(training))
    table = train_ibm1(training, cfg.iterations, use_null=cfg.use_null,
                       min_count=cfg.min_count, floor=cfg.floor)
    unigram = fit_unigram(training, table)

    pairs: list[AlignedPair] = []
    report = AlignmentReport(training_pairs=len(training))
    for src, tgt in docs:
        found = pass2_align(src, tgt, model, table, cfg.threshold, unigram=unigram,
                            band=cfg.band, edge_tol=cfg.edge_tol)
        pairs += found
        report.rows.append(ReportRow(src.doc_id, len(src), len(tgt), len(found)))
    return pairs, report
