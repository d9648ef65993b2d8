"""Raw document ingestion: decoding, tag stripping, boilerplate removal."""

from __future__ import annotations

import re
from html.parser import HTMLParser
from dataclasses import dataclass

from ..errors import ConfigError, ForgeError

# any tag-like token marks the input as markup
TAG = re.compile(r"<(?:[A-Za-z/!?][^<>]*)>")
# tags whose boundaries separate lines of text
BLOCK_TAGS = frozenset(
    "p div br hr li ul ol tr td th table h1 h2 h3 h4 h5 h6 section article header footer title blockquote".split())
HIDDEN_TAGS = frozenset({"script", "style", "head"})
# "12 ", "3:16 ", "፲፪ " at the start of a line
VERSE_NUMBER = re.compile(r"^\s*(?:\d+(?:[:.]\d+)?|[፩-፼]+)[.:]?\s+")


class IngestError(ForgeError, ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        super().__init__(message)


@dataclass(frozen=True)
class BoilerplateRules:
    """Line-level cleanup applied after tag stripping.

    ``drop`` patterns remove whole matching lines (headers, footers,
    footnotes); ``strip`` patterns delete matching substrings;
    ``verse_numbers`` removes a leading verse number from each line.
    """

    verse_numbers: bool = False
    drop: tuple[str, ...] = ()
    strip: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "drop", tuple(self.drop))
        object.__setattr__(self, "strip", tuple(self.strip))
        for pat in self.drop + self.strip:
            try:
                re.compile(pat)
            except re.error as exc:
                raise ConfigError(f"bad boilerplate pattern {pat!r}: {exc}") from None

    @property
    def empty(self) -> bool:
        return not (self.verse_numbers or self.drop or self.strip)


@dataclass(frozen=True)
class IngestResult:
    text: str
    dropped_lines: int


def decode(raw: bytes) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"invalid UTF-8 at byte offset {exc.start}", exc.start) from None


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self.hidden = 0

    def handle_starttag(self, tag, attrs):
        if tag in HIDDEN_TAGS:
            self.hidden += 1
        elif tag in BLOCK_TAGS:
            self.parts.append("\n")

    def handle_startendtag(self, tag, attrs):
        if tag in BLOCK_TAGS:
            self.parts.append("\n")

    def handle_endtag(self, tag):
        if tag in HIDDEN_TAGS:
            self.hidden = max(0, self.hidden - 1)
        elif tag in BLOCK_TAGS:
            self.parts.append("\n")

    def handle_data(self, data):
        if not self.hidden:
            self.parts.append(data)


def _strip_tags(text: str) -> str:
    parser = _TextExtractor()
    parser.feed(text)
    parser.close()
    lines = (" ".join(line.split()) for line in "".join(parser.parts).splitlines())
    return "\n".join(line for line in lines if line)


def ingest(raw: bytes, rules: BoilerplateRules | None = None) -> IngestResult:
    text = decode(raw)
    if TAG.search(text):
        text = _strip_tags(text)
    if rules is None or rules.empty:
        return IngestResult(text, 0)
    drop = [re.compile(p) for p in rules.drop]
    strip = [re.compile(p) for p in rules.strip]
    kept, dropped = [], 0
    for line in text.splitlines():
        if any(p.search(line) for p in drop):
            dropped += 1
            continue
        for p in strip:
            line = p.sub("", line)
        if rules.verse_numbers:
            line = VERSE_NUMBER.sub("", line, count=1)
        if line.strip():
            kept.append(line)
        else:
            dropped += 1
    return IngestResult("\n".join(kept), dropped)


def strip_markup(raw: bytes, rules: BoilerplateRules | None = None) -> str:
    """Decoded text with tags and rule-matched boilerplate removed.

    Plain text is returned unchanged when no rules are given.
    """
    return ingest(raw, rules).text
