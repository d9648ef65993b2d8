"""Ingestion, orchestration, splitting and run manifests."""

from .config import (
    BpeSweep,
    DocumentSpec,
    PipelineConfig,
    SplitSizes,
    Stages,
    config_from_dict,
    load_config,
)
from .ingest import BoilerplateRules, IngestError, ingest, strip_markup
from .run import DocumentCounts, Manifest, run
from .split import fisher_yates, resolve_sizes, split_corpus

__all__ = [
    "BoilerplateRules", "BpeSweep", "DocumentCounts", "DocumentSpec", "IngestError", "Manifest",
    "PipelineConfig", "SplitSizes", "Stages", "config_from_dict", "fisher_yates", "ingest",
    "load_config", "resolve_sizes", "run", "split_corpus", "strip_markup",
]
