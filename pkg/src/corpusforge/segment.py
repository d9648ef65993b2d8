"""Sentence segmentation by end-of-sentence disambiguation.

Boundary characters are ``።`` and ``?`` for Amharic, ``.`` and ``?`` for
English.  A boundary character ends a sentence only when it sits outside
every protected span (abbreviation, initial, clitic, URL, e-mail address,
hashtag) and is followed by whitespace or the end of the text, possibly
after closing quotes or brackets.  ``!`` is not a boundary and a run of two
or more periods (an ellipsis) never is.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .textnorm import LangProfile

__all__ = [
    "BOUNDARIES",
    "NegativeWordlist",
    "ProtectedSpan",
    "SpanKind",
    "default_wordlist",
    "load_wordlist",
    "parse_wordlist",
    "protect_spans",
    "sentence_offsets",
    "split_sentences",
]

BOUNDARIES = {
    LangProfile.ETHIOPIC: frozenset("።?"),
    LangProfile.LATIN: frozenset(".?"),
}
TERMINAL = frozenset("።?.")
CLOSERS = frozenset("\"')]}»”’")


class SpanKind(str, Enum):
    ABBREVIATION = "abbreviation"
    INITIAL = "initial"
    CLITIC = "clitic"
    URL = "url"
    EMAIL = "email"
    HASHTAG = "hashtag"


@dataclass(frozen=True, order=True)
class ProtectedSpan:
    start: int
    end: int
    kind: SpanKind = field(compare=False)

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span [{self.start}, {self.end})")


@dataclass(frozen=True)
class NegativeWordlist:
    abbreviations: frozenset[str] = frozenset()
    clitics: frozenset[str] = frozenset()
    lang: LangProfile = LangProfile.LATIN

    def __post_init__(self):
        for entry in self.abbreviations | self.clitics:
            if not TERMINAL.intersection(entry):
                raise ValueError(
                    f"wordlist entry {entry!r} has no terminal punctuation, it could never mask a boundary")


def parse_wordlist(lines: Iterable[str], lang: "LangProfile | str" = LangProfile.LATIN) -> NegativeWordlist:
    """One entry per line; ``[abbreviations]`` and ``[clitics]`` headers switch
    section (abbreviations by default); ``#`` starts a comment line."""
    sections: dict[str, set[str]] = {"abbreviations": set(), "clitics": set()}
    current = "abbreviations"
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        header = re.fullmatch(r"\[(\w+)\]", line)
        if header:
            if header.group(1) not in sections:
                raise ValueError(f"unknown wordlist section {line!r}")
            current = header.group(1)
            continue
        sections[current].add(line.lower())
    return NegativeWordlist(frozenset(sections["abbreviations"]), frozenset(sections["clitics"]),
                            LangProfile.parse(lang))


def load_wordlist(path: "str | Path", lang: "LangProfile | str") -> NegativeWordlist:
    with open(path, encoding="utf-8") as fh:
        return parse_wordlist(fh, lang)


@lru_cache(maxsize=None)
def default_wordlist(lang: "LangProfile | str") -> NegativeWordlist:
    lang = LangProfile.parse(lang)
    name = "wordlist_am.txt" if lang is LangProfile.ETHIOPIC else "wordlist_en.txt"
    text = resources.files("corpusforge").joinpath("data", name).read_text("utf-8")
    return parse_wordlist(text.splitlines(), lang)


_URL = re.compile(r"(?:\b(?:https?|ftp)://|\bwww\.)\S+", re.IGNORECASE)
_EMAIL = re.compile(r"(?<![\w.+-])[\w.+-]+@[\w-]+(?:\.[\w-]+)+")
_HASHTAG = re.compile(r"(?<![\w#])#\w+")
_INITIAL = re.compile(r"(?<![\w.'])(?:[A-Za-z]\.)+(?![\w])")
_URL_TRAIL = ".,;:!?)]}\"'"


@lru_cache(maxsize=64)
def _entry_pattern(entries: frozenset[str]) -> "re.Pattern[str] | None":
    if not entries:
        return None
    alts = "|".join(re.escape(e) for e in sorted(entries, key=lambda e: (-len(e), e)))
    return re.compile(rf"(?<![\w.])(?:{alts})(?!\w)", re.IGNORECASE)


def _candidates(text: str, wordlist: NegativeWordlist) -> list[ProtectedSpan]:
    found = []
    for m in _URL.finditer(text):
        end = m.end()
        while end > m.start() + 1 and text[end - 1] in _URL_TRAIL:
            end -= 1
        found.append(ProtectedSpan(m.start(), end, SpanKind.URL))
    found += [ProtectedSpan(m.start(), m.end(), SpanKind.EMAIL) for m in _EMAIL.finditer(text)]
    found += [ProtectedSpan(m.start(), m.end(), SpanKind.HASHTAG) for m in _HASHTAG.finditer(text)]
    for entries, kind in ((wordlist.abbreviations, SpanKind.ABBREVIATION),
                          (wordlist.clitics, SpanKind.CLITIC)):
        pattern = _entry_pattern(entries)
        if pattern is not None:
            found += [ProtectedSpan(m.start(), m.end(), kind) for m in pattern.finditer(text)]
    found += [ProtectedSpan(m.start(), m.end(), SpanKind.INITIAL) for m in _INITIAL.finditer(text)]
    return found


def protect_spans(text: str, wordlist: NegativeWordlist | None = None) -> list[ProtectedSpan]:
    """All protected spans in ``text``, sorted and non-overlapping.

    Overlaps are resolved longest-first (earliest start on ties).
    """
    wordlist = wordlist or NegativeWordlist()
    chosen: list[ProtectedSpan] = []
    taken: list[tuple[int, int]] = []
    for span in sorted(_candidates(text, wordlist), key=lambda s: (s.start - s.end, s.start)):
        i = bisect.bisect_left(taken, (span.start, span.end))
        if i > 0 and taken[i - 1][1] > span.start:
            continue
        if i < len(taken) and taken[i][0] < span.end:
            continue
        taken.insert(i, (span.start, span.end))
        chosen.append(span)
    return sorted(chosen)


def _cuts(text: str, boundary: frozenset[str], spans: list[ProtectedSpan]) -> list[int]:
    starts = [s.start for s in spans]

    def protected(i: int) -> bool:
        k = bisect.bisect_right(starts, i) - 1
        return k >= 0 and spans[k].start <= i < spans[k].end

    cuts = []
    n = len(text)
    for i, ch in enumerate(text):
        if ch not in boundary or protected(i):
            continue
        if ch == "." and ((i > 0 and text[i - 1] == ".") or (i + 1 < n and text[i + 1] == ".")):
            continue
        k = i + 1
        while k < n and text[k] in CLOSERS:
            k += 1
        if k == n or text[k].isspace():
            cuts.append(k)
    return cuts


def sentence_offsets(text: str, profile: "LangProfile | str",
                     wordlist: NegativeWordlist | None = None) -> list[tuple[int, int]]:
    """``(start, end)`` offsets of each sentence, whitespace-trimmed."""
    profile = LangProfile.parse(profile)
    if wordlist is None:
        wordlist = default_wordlist(profile)
    cuts = _cuts(text, BOUNDARIES[profile], protect_spans(text, wordlist))
    out = []
    start = 0
    for end in cuts + [len(text)]:
        piece = text[start:end]
        stripped = piece.strip()
        if stripped:
            lead = len(piece) - len(piece.lstrip())
            out.append((start + lead, start + lead + len(stripped)))
        start = end
    return out


def split_sentences(text: str, profile: "LangProfile | str",
                    wordlist: NegativeWordlist | None = None) -> list[str]:
    """Split normalized text into sentences.

    Each sentence keeps its terminal punctuation and has internal whitespace
    collapsed to single spaces, so ``" ".join(result)`` equals
    ``" ".join(text.split())``.
    """
    return [" ".join(text[a:b].split()) for a, b in sentence_offsets(text, profile, wordlist)]
