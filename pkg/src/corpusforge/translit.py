"""Reversible romanization of Ethiopic text.

The table maps each Ethiopic codepoint to a Latin string.  The images form
a prefix-free code, so decoding by longest match is unambiguous and
``deromanize(romanize(x)) == x`` for any text the table covers.  The
shipped scheme is consonant code + vowel code, with vowel codes starting
with characters that never occur in consonant codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .textnorm import is_ethiopic


class TranslitError(ValueError):
    pass


class UnmappedCharacterError(TranslitError):
    def __init__(self, char: str, offset: int):
        self.char = char
        self.offset = offset
        super().__init__(f"no romanization for U+{ord(char):04X} {char!r} at offset {offset}")


class DecodeError(TranslitError):
    def __init__(self, offset: int, residue: str):
        self.offset = offset
        super().__init__(f"cannot decode {residue!r} at offset {offset}")


def _prefix_violations(codes: Iterable[str]) -> list[tuple[str, str]]:
    ordered = sorted(codes)
    # in sorted order a prefix sorts immediately before some extension of it
    return [(a, b) for a, b in zip(ordered, ordered[1:]) if b.startswith(a)]


@dataclass(frozen=True)
class TranslitTable:
    forward: Mapping[str, str]
    reverse: Mapping[str, str] = field(init=False)

    def __post_init__(self):
        reverse: dict[str, str] = {}
        for eth, latin in self.forward.items():
            if len(eth) != 1 or not is_ethiopic(eth):
                raise TranslitError(f"table key {eth!r} is not a single Ethiopic codepoint")
            if not latin:
                raise TranslitError(f"empty romanization for {eth!r}")
            if latin != latin.lower():
                raise TranslitError(f"romanization {latin!r} is not lowercase")
            if latin in reverse:
                raise TranslitError(f"{latin!r} is the image of both {reverse[latin]!r} and {eth!r}")
            reverse[latin] = eth
        bad = _prefix_violations(reverse)
        if bad:
            a, b = bad[0]
            raise TranslitError(f"code is not prefix-free: {a!r} is a prefix of {b!r}")
        object.__setattr__(self, "reverse", reverse)

    @property
    def max_code(self) -> int:
        return max(map(len, self.reverse), default=0)

    @property
    def code_alphabet(self) -> frozenset[str]:
        return frozenset("".join(self.reverse))

    @property
    def code_initials(self) -> frozenset[str]:
        return frozenset(code[0] for code in self.reverse)


def parse_translit(lines: Iterable[str]) -> TranslitTable:
    forward = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise TranslitError(f"line {lineno}: expected 'ethiopic<TAB>latin'")
        if parts[0] in forward:
            raise TranslitError(f"line {lineno}: duplicate row for {parts[0]!r}")
        forward[parts[0]] = parts[1]
    return TranslitTable(forward)


def load_translit(path: "str | Path") -> TranslitTable:
    with open(path, encoding="utf-8") as fh:
        return parse_translit(fh)


@lru_cache(maxsize=None)
def default_translit() -> TranslitTable:
    text = resources.files("corpusforge").joinpath("data/translit.tsv").read_text("utf-8")
    return parse_translit(text.splitlines())


def romanize(text: str, table: TranslitTable | None = None) -> str:
    table = table or default_translit()
    out = []
    for i, ch in enumerate(text):
        if is_ethiopic(ch):
            try:
                out.append(table.forward[ch])
            except KeyError:
                raise UnmappedCharacterError(ch, i) from None
        else:
            out.append(ch)
    return "".join(out)


def deromanize(text: str, table: TranslitTable | None = None) -> str:
    """Greedy longest-match decoding.  A character that cannot start a code
    passes through; one that starts a code it does not complete is an error."""
    table = table or default_translit()
    reverse = table.reverse
    initials = table.code_initials
    longest = table.max_code
    out = []
    i, n = 0, len(text)
    while i < n:
        for size in range(min(longest, n - i), 0, -1):
            eth = reverse.get(text[i:i + size])
            if eth is not None:
                out.append(eth)
                i += size
                break
        else:
            if text[i] in initials:
                raise DecodeError(i, text[i:i + longest])
            out.append(text[i])
            i += 1
    return "".join(out)
