"""Lexicon-free sentence alignment: Poisson length model + IBM Model 1."""

from .corpus import (
    AlignConfig,
    AlignmentReport,
    ReportRow,
    align_corpus,
    length_lattice,
    model1_lattice,
    pass1_posteriors,
    pass2_align,
    pass2_posteriors,
    select_training_pairs,
)
from .lattice import Lattice, LengthScorer, Model1Scorer, bead_logprob, run_lattice
from .length import fit_length_model, length_bead_logprob, length_logprob, poisson_logpmf
from .model1 import (
    NULL,
    RARE,
    TTable,
    Unigram,
    corpus_loglik,
    fit_unigram,
    iter_ibm1,
    load_ttable,
    model1_logprob,
    save_ttable,
    train_ibm1,
)
from .types import BEAD_SHAPES, DEFAULT_PRIORS, AlignedPair, AlignmentError, Bead, Document, LengthModel

__all__ = [
    "AlignConfig", "AlignedPair", "AlignmentError", "AlignmentReport", "BEAD_SHAPES", "Bead",
    "DEFAULT_PRIORS", "Document", "Lattice", "LengthModel", "LengthScorer", "Model1Scorer", "NULL",
    "RARE", "ReportRow", "TTable", "Unigram", "align_corpus", "bead_logprob", "corpus_loglik",
    "fit_length_model", "fit_unigram", "iter_ibm1", "length_bead_logprob", "length_lattice", "length_logprob",
    "load_ttable", "model1_lattice", "model1_logprob", "pass1_posteriors", "pass2_align",
    "pass2_posteriors", "poisson_logpmf", "run_lattice", "save_ttable", "select_training_pairs",
    "train_ibm1",
]
