"""Declarative pipeline configuration (YAML or JSON) and its schema."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import jsonschema
import yaml

from ..align import AlignConfig, DEFAULT_PRIORS
from ..clean import CleanConfig
from ..errors import ConfigError
from ..subword import DEFAULT_TOP_K
from ..textnorm import LangProfile
from .ingest import BoilerplateRules

DEFAULT_MERGES = (1000, 2000, 4000, 8000, 16000)

_RULES = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "verse_numbers": {"type": "boolean"},
        "drop": {"type": "array", "items": {"type": "string"}},
        "strip": {"type": "array", "items": {"type": "string"}},
    },
}
_PROB = {"type": "number", "exclusiveMinimum": 0, "maximum": 1}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["documents", "seed"],
    "properties": {
        "output_dir": {"type": "string"},
        "seed": {"type": "integer"},
        "documents": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "src", "tgt"],
                "properties": {
                    "id": {"type": "string", "pattern": r"^[A-Za-z0-9_.-]+$"},
                    "source": {"type": "string"},
                    "src": {"type": "string"},
                    "tgt": {"type": "string"},
                    "src_lang": {"type": "string"},
                    "tgt_lang": {"type": "string"},
                    "rules": _RULES,
                },
            },
        },
        "stages": {
            "type": "object",
            "additionalProperties": False,
            "properties": {k: {"type": "boolean"} for k in ("translit", "bpe", "vocab")},
        },
        "normalize": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"table": {"type": ["string", "null"]}},
        },
        "segment": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"wordlists": {"type": "object", "additionalProperties": {"type": "string"}}},
        },
        "translit": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"table": {"type": ["string", "null"]}},
        },
        "align": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "bead_priors": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {k: {"type": "number", "minimum": 0} for k in DEFAULT_PRIORS},
                },
                "pass1_threshold": _PROB,
                "threshold": _PROB,
                "iterations": {"type": "integer", "minimum": 0},
                "floor": {"type": "number", "exclusiveMinimum": 0},
                "min_count": {"type": "integer", "minimum": 1},
                "use_null": {"type": "boolean"},
                "band": {"type": "integer", "minimum": 1},
                "edge_tol": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "clean": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_tokens": {"type": "integer", "minimum": 1},
                "max_ratio": {"type": "number", "minimum": 1},
            },
        },
        "split": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "train": {"type": ["integer", "null"], "minimum": 1},
                "dev": {"type": "integer", "minimum": 1},
                "test": {"type": "integer", "minimum": 1},
            },
        },
        "bpe": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "merges": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}},
                "joint": {"type": "boolean"},
            },
        },
        "vocab": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"top_k": {"type": "integer", "minimum": 1}},
        },
    },
}


@dataclass(frozen=True)
class DocumentSpec:
    id: str
    src: str
    tgt: str
    src_lang: str = "am"
    tgt_lang: str = "en"
    source: str = ""
    rules: BoilerplateRules = field(default_factory=BoilerplateRules)


@dataclass(frozen=True)
class Stages:
    translit: bool = True
    bpe: bool = True
    vocab: bool = True


@dataclass(frozen=True)
class SplitSizes:
    train: int | None = None
    dev: int = 2864
    test: int = 2500


@dataclass(frozen=True)
class BpeSweep:
    merges: tuple[int, ...] = DEFAULT_MERGES
    joint: bool = True


@dataclass
class PipelineConfig:
    documents: list[DocumentSpec]
    seed: int
    output_dir: str = "forge-out"
    stages: Stages = field(default_factory=Stages)
    norm_table: str | None = None
    wordlists: dict[str, str] = field(default_factory=dict)
    translit_table: str | None = None
    align: AlignConfig = field(default_factory=AlignConfig)
    clean: CleanConfig = field(default_factory=CleanConfig)
    split: SplitSizes = field(default_factory=SplitSizes)
    bpe: BpeSweep = field(default_factory=BpeSweep)
    vocab_top_k: int = DEFAULT_TOP_K
    base_dir: str = "."

    def __post_init__(self):
        if not self.documents:
            raise ConfigError("document set is empty")
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise ConfigError("document ids must be unique")
        for doc in self.documents:
            LangProfile.parse(doc.src_lang)
            LangProfile.parse(doc.tgt_lang)
        for lang in self.wordlists:
            LangProfile.parse(lang)

    def path(self, p: str) -> Path:
        """Resolve a path from the config relative to the config's directory."""
        q = Path(p)
        return q if q.is_absolute() else Path(self.base_dir) / q

    def to_dict(self) -> dict:
        """Run parameters, without the output location or base directory."""
        d = asdict(self)
        d.pop("output_dir")
        d.pop("base_dir")
        return d

    def hash(self) -> str:
        return sha256_json(self.to_dict())


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def sha256_json(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def config_from_dict(data: dict, base_dir: "str | Path" = ".") -> PipelineConfig:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from None
    docs = [DocumentSpec(id=d["id"], src=d["src"], tgt=d["tgt"],
                         src_lang=d.get("src_lang", "am"), tgt_lang=d.get("tgt_lang", "en"),
                         source=d.get("source", d["id"]),
                         rules=BoilerplateRules(**d.get("rules", {})))
            for d in data["documents"]]
    align = dict(data.get("align", {}))
    if "bead_priors" in align:
        align["bead_priors"] = {**DEFAULT_PRIORS, **align["bead_priors"]}
    bpe = data.get("bpe", {})
    try:
        return PipelineConfig(
            documents=docs,
            seed=data["seed"],
            output_dir=data.get("output_dir", "forge-out"),
            stages=Stages(**data.get("stages", {})),
            norm_table=data.get("normalize", {}).get("table"),
            wordlists=dict(data.get("segment", {}).get("wordlists", {})),
            translit_table=data.get("translit", {}).get("table"),
            align=AlignConfig(**align),
            clean=CleanConfig(**data.get("clean", {})),
            split=SplitSizes(**data.get("split", {})),
            bpe=BpeSweep(tuple(sorted(set(bpe.get("merges", DEFAULT_MERGES)))), bpe.get("joint", True)),
            vocab_top_k=data.get("vocab", {}).get("top_k", DEFAULT_TOP_K),
            base_dir=str(base_dir),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: "str | Path") -> PipelineConfig:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text) if path.suffix == ".json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a mapping at the top level")
    return config_from_dict(data, path.parent)
