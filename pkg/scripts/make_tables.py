#!/usr/bin/env python3
"""Regenerate the Ethiopic data tables shipped in ``corpusforge/data``.

    python3 scripts/make_tables.py [--out DIR]

Writes ``normalization.tsv`` (punctuation + homophone folding) and
``translit.tsv`` (bijective romanization).  Both are plain data; edit the
generated files directly if a row needs correcting, this script only
exists so the bulk rows are reproducible.
"""

import argparse
import unicodedata
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "corpusforge" / "data"

PUNCT_ROWS = [
    ("‹‹", '"'),
    ("››", '"'),
    ("«", '"'),
    ("»", '"'),
    ("“", '"'),
    ("”", '"'),
    ("„", '"'),
    ("''", '"'),
    ("``", '"'),
    ("‘", "'"),
    ("’", "'"),
    ("፡፡", "።"),
    ("፧", "?"),
    # a lone word separator inside a sentence becomes a plain space
    ("፡", r"\s"),
]

# (variant series base, canonical series base): all seven vowel orders fold
HOMOPHONE_SERIES = [
    (0x1210, 0x1200),  # HHA -> HA
    (0x1280, 0x1200),  # XA -> HA
    (0x1220, 0x1230),  # SZA -> SA
    (0x12D0, 0x12A0),  # PHARYNGEAL -> GLOTTAL
    (0x1340, 0x1338),  # TZA -> TSA
]

LABIOVELAR_ROWS = [
    (0x1217, 0x128B),  # HHWA -> XWAA
    (0x1227, 0x1237),  # SZWA -> SWA
    (0x124D, 0x1241),  # QWE -> QU
    (0x12B5, 0x12A9),  # KWE -> KU
    (0x1315, 0x1309),  # GWE -> GU
    (0x128D, 0x1201),  # XWE -> HU
]

# vowel order -> Latin vowel code; the vowel codes start with characters
# never used in consonant codes, which makes the syllable code prefix-free
VOWELS = ["a", "u", "i", "ā", "e", "ə", "o"]
LABIO_VOWELS = {0: "a", 2: "i", 3: "ā", 4: "e", 5: "ə"}

CONSONANT_SERIES = [
    (0x1200, "h"), (0x1208, "l"), (0x1218, "m"), (0x1228, "r"),
    (0x1230, "s"), (0x1238, "sh"), (0x1240, "q"), (0x1260, "b"),
    (0x1268, "v"), (0x1270, "t"), (0x1278, "ch"), (0x1290, "n"),
    (0x1298, "ny"), (0x12A0, ""), (0x12A8, "k"), (0x12B8, "kh"),
    (0x12C8, "w"), (0x12D8, "z"), (0x12E0, "zh"), (0x12E8, "y"),
    (0x12F0, "d"), (0x1300, "j"), (0x1308, "g"), (0x1320, "t'"),
    (0x1328, "ch'"), (0x1330, "p'"), (0x1338, "ts'"), (0x1348, "f"),
    (0x1350, "p"),
]
LABIOVELAR_SERIES = [
    (0x1248, "qw"), (0x1288, "hw"), (0x12B0, "kw"), (0x1310, "gw"),
]
PUNCT_TRANSLIT = {
    0x1360: "§", 0x1361: "|", 0x1362: ".", 0x1363: ",", 0x1364: ";",
    0x1365: ":", 0x1366: "=", 0x1367: "?", 0x1368: "¶",
}
DIGIT_VALUES = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 10000]


def homophone_rows():
    rows = []
    for variant, canonical in HOMOPHONE_SERIES:
        for order in range(7):
            rows.append((chr(variant + order), chr(canonical + order)))
    rows.extend((chr(v), chr(c)) for v, c in LABIOVELAR_ROWS)
    return rows


def translit_rows():
    rows = []
    for base, cons in CONSONANT_SERIES:
        for order, vowel in enumerate(VOWELS):
            rows.append((chr(base + order), cons + vowel))
        wa = chr(base + 7)
        if unicodedata.name(wa, "").endswith("WA"):
            # the glottal series has no consonant code, so its WA form
            # needs its own marker to stay distinct from the W series
            rows.append((wa, (cons or "'") + "wā"))
    for base, cons in LABIOVELAR_SERIES:
        for order, vowel in LABIO_VOWELS.items():
            rows.append((chr(base + order), cons + vowel))
    for cp, latin in PUNCT_TRANSLIT.items():
        rows.append((chr(cp), latin))
    for offset, value in enumerate(DIGIT_VALUES):
        rows.append((chr(0x1369 + offset), "{%d}" % value))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA, help="output directory")
    out = ap.parse_args().out
    with open(out / "normalization.tsv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# variant<TAB>canonical; \\s is a space, \\uXXXX any codepoint\n")
        fh.write("# punctuation\n")
        for variant, canonical in PUNCT_ROWS:
            fh.write(f"{variant}\t{canonical}\n")
        fh.write("# homophones and peculiar labiovelars (spelling reform)\n")
        for variant, canonical in homophone_rows():
            fh.write(f"{variant}\t{canonical}\n")
    with open(out / "translit.tsv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# ethiopic<TAB>latin\n")
        for ethiopic, latin in translit_rows():
            fh.write(f"{ethiopic}\t{latin}\n")


if __name__ == "__main__":
    main()
