"""Character-level normalization for Ethiopic (Amharic) and Latin (English) text.

Three operations, all pure and idempotent:

* :func:`normalize_punctuation` collapses quote variants to ``"`` and the
  doubled word separator ``፡፡`` to the full stop ``።``;
* :func:`fold_homophones` rewrites interchangeable Ethiopic syllabograms to
  their standard forms;
* :func:`lowercase_latin` lowercases Latin letters only.

The mappings live in a TSV table (see ``data/normalization.tsv``) so that
corrections are data edits.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ConfigError

__all__ = [
    "LangProfile",
    "NormalizationTable",
    "TableError",
    "default_table",
    "fold_homophones",
    "is_ethiopic",
    "load_table",
    "lowercase_latin",
    "normalize",
    "normalize_punctuation",
    "parse_table",
]


class TableError(ValueError):
    """A mapping table violates one of its invariants."""


class LangProfile(str, Enum):
    ETHIOPIC = "ethiopic"
    LATIN = "latin"

    @classmethod
    def parse(cls, value: "str | LangProfile") -> "LangProfile":
        if isinstance(value, LangProfile):
            return value
        aliases = {"am": cls.ETHIOPIC, "amh": cls.ETHIOPIC, "ethiopic": cls.ETHIOPIC,
                   "en": cls.LATIN, "eng": cls.LATIN, "latin": cls.LATIN}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ConfigError(f"unknown language profile: {value!r}") from None


ETHIOPIC_RANGES = ((0x1200, 0x137F), (0x1380, 0x139F), (0x2D80, 0x2DDF),
                   (0xAB00, 0xAB2F), (0x1E7E0, 0x1E7FF))


def is_ethiopic(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in ETHIOPIC_RANGES)


def _is_ethiopic_letter(ch: str) -> bool:
    return is_ethiopic(ch) and unicodedata.category(ch) == "Lo"


@dataclass(frozen=True)
class NormalizationTable:
    punct_map: Mapping[str, str] = field(default_factory=dict)
    homophone_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for key, value in self.punct_map.items():
            if not key:
                raise TableError("empty punctuation variant")
            if len(value) > len(key):
                raise TableError(f"punctuation row {key!r} -> {value!r} lengthens the text")
            if self.punct_map.get(value, value) != value:
                raise TableError(f"punctuation target {value!r} is not a fixed point")
        for key, value in self.homophone_map.items():
            if not (len(key) == len(value) == 1):
                raise TableError(f"homophone row {key!r} -> {value!r} is not one codepoint each")
            if not (_is_ethiopic_letter(key) and _is_ethiopic_letter(value)):
                raise TableError(f"homophone row {key!r} -> {value!r} leaves the Ethiopic block")
            if self.homophone_map.get(value, value) != value:
                raise TableError(f"homophone target {value!r} is not a fixed point")

    @property
    def targets(self) -> set[str]:
        """Every codepoint the table can introduce."""
        out = set()
        for value in list(self.punct_map.values()) + list(self.homophone_map.values()):
            out.update(value)
        return out


_ESCAPE = re.compile(r"\\(s|t|u[0-9a-fA-F]{4}|U[0-9a-fA-F]{8}|\\)")


def _unescape(field_: str) -> str:
    def sub(m):
        code = m.group(1)
        if code == "s":
            return " "
        if code == "t":
            return "\t"
        if code == "\\":
            return "\\"
        return chr(int(code[1:], 16))
    return _ESCAPE.sub(sub, field_)


def parse_table(lines: Iterable[str]) -> NormalizationTable:
    """Build a table from ``variant<TAB>canonical`` rows.

    Single Ethiopic letters mapping to single Ethiopic letters go to the
    homophone map; everything else is punctuation.
    """
    punct: dict[str, str] = {}
    homophones: dict[str, str] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise TableError(f"line {lineno}: expected 'variant<TAB>canonical', got {line!r}")
        variant, canonical = (unicodedata.normalize("NFC", _unescape(p)) for p in parts)
        if len(variant) == 1 and len(canonical) == 1 and _is_ethiopic_letter(variant) \
                and _is_ethiopic_letter(canonical):
            homophones[variant] = canonical
        else:
            punct[variant] = canonical
    # identity rows are allowed in the file but carry no information
    punct = {k: v for k, v in punct.items() if k != v}
    homophones = {k: v for k, v in homophones.items() if k != v}
    return NormalizationTable(punct_map=punct, homophone_map=homophones)


def load_table(path: "str | Path") -> NormalizationTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh)


@lru_cache(maxsize=None)
def default_table() -> NormalizationTable:
    text = resources.files("corpusforge").joinpath("data/normalization.tsv").read_text("utf-8")
    return parse_table(text.splitlines())


@lru_cache(maxsize=32)
def _punct_pattern(keys: tuple[str, ...]) -> "re.Pattern[str] | None":
    if not keys:
        return None
    ordered = sorted(keys, key=lambda k: (-len(k), k))
    return re.compile("|".join(re.escape(k) for k in ordered))


def normalize_punctuation(text: str, table: NormalizationTable | None = None) -> str:
    table = table or default_table()
    text = unicodedata.normalize("NFC", text)
    pattern = _punct_pattern(tuple(table.punct_map))
    if pattern is None:
        return text
    mapping = table.punct_map
    # iterate to a fixed point: a replacement can create a new variant
    # (e.g. two curly singles become '' which folds to ")
    while True:
        out = pattern.sub(lambda m: mapping[m.group()], text)
        if out == text:
            return out
        text = out


@lru_cache(maxsize=32)
def _translation(items: tuple[tuple[str, str], ...]) -> dict[int, str]:
    return {ord(k): v for k, v in items}


def fold_homophones(text: str, table: NormalizationTable | None = None) -> str:
    table = table or default_table()
    text = unicodedata.normalize("NFC", text)
    return text.translate(_translation(tuple(sorted(table.homophone_map.items()))))


@lru_cache(maxsize=4096)
def _lower_char(ch: str) -> str:
    if "LATIN" not in unicodedata.name(ch, ""):
        return ch
    low = ch.lower()
    # simple case mapping: U+0130 lowercases to i + combining dot in full
    # mapping, keep only the base letter
    return low if len(low) == 1 else low[0]


def lowercase_latin(text: str) -> str:
    return "".join(_lower_char(ch) if ch.isupper() or ch.istitle() else ch for ch in text)


def normalize(text: str, profile: "LangProfile | str", table: NormalizationTable | None = None) -> str:
    """Full normalization for one language: punctuation, then homophone
    folding (Ethiopic) or lowercasing (Latin)."""
    profile = LangProfile.parse(profile)
    table = table or default_table()
    out = normalize_punctuation(text, table)
    if profile is LangProfile.ETHIOPIC:
        out = fold_homophones(out, table)
    else:
        out = lowercase_latin(out)
    return unicodedata.normalize("NFC", out)
