"""Generate the three-document fixture corpus used by the pipeline tests.

The Amharic side is a word-substitution cipher of the English side written
in Ethiopic syllables, with homophone spellings, doubled word separators for
the full stop, guillemets, verse numbers, HTML markup and boilerplate lines
mixed in.  Ground truth (sentence counts, true pairs, cleaning rejections)
comes from the construction and is written to expected.json.

    python3 scripts/make_fixture.py [--out tests/fixtures/corpus]
"""

from __future__ import annotations

import argparse
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

WORDS = """the a man woman child king house city river land bread water stone book law
court judge people word day night light road field tree fire gold silver and
of to in on with from by for he she they we it was is will said went came
gave took made saw heard spoke wrote built found kept sent old new great small
good first last many every other this that his her their our all""".split()

# canonical consonant bases; orders are base + 0..6
BASES = [0x1200, 0x1208, 0x1218, 0x1230, 0x1228, 0x1240, 0x1260, 0x1270, 0x1290,
         0x12A0, 0x12A8, 0x12C8, 0x12D8, 0x12E8, 0x12F0, 0x1308, 0x1320, 0x1348, 0x1338]
# canonical base -> interchangeable spellings that fold back to it
VARIANTS = {0x1200: (0x1210, 0x1280), 0x1230: (0x1220,), 0x12A0: (0x12D0,), 0x1338: (0x1340,)}
GEEZ_DIGITS = "፩፪፫፬፭፮፯፰፱"


@dataclass
class Side:
    lines: list[str] = field(default_factory=list)
    sentences: int = 0


@dataclass
class Doc:
    id: str
    am: Side = field(default_factory=Side)
    en: Side = field(default_factory=Side)
    pairs: list[tuple[int, int]] = field(default_factory=list)
    long_pairs: int = 0


class Cipher:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.table: dict[str, list[tuple[int, int]]] = {}
        used = set()
        for w in WORDS + ["mr.", "e.g."]:
            while True:
                syl = [(rng.choice(BASES), rng.randrange(7)) for _ in range(rng.randint(2, 4))]
                key = tuple(syl)
                if key not in used:
                    used.add(key)
                    self.table[w] = syl
                    break

    def word(self, w: str, vary: bool = True) -> str:
        out = []
        for base, order in self.table[w]:
            if vary and base in VARIANTS and self.rng.random() < 0.4:
                base = self.rng.choice(VARIANTS[base])
            out.append(chr(base + order))
        return "".join(out)


class Writer:
    def __init__(self, rng: random.Random, cipher: Cipher):
        self.rng = rng
        self.cipher = cipher

    def words(self, lo: int = 4, hi: int = 12) -> list[str]:
        words = [self.rng.choice(WORDS) for _ in range(self.rng.randint(lo, hi))]
        if len(words[-1]) == 1:
            # "a." would read as an initial, not a sentence end
            words[-1] = "day"
        return words

    def english(self, words: list[str], question: bool) -> str:
        text = " ".join(words)
        return text[0].upper() + text[1:] + ("?" if question else ".")

    def amharic(self, words: list[str], question: bool) -> str:
        sep = "፡" if self.rng.random() < 0.3 else " "
        body = sep.join(self.cipher.word(w) for w in words)
        if question:
            return body + "?"
        return body + ("፡፡" if self.rng.random() < 0.5 else "።")

    def pair(self, lo: int = 4, hi: int = 12) -> tuple[str, str]:
        words = self.words(lo, hi)
        q = self.rng.random() < 0.15
        kind = self.rng.random()
        if kind < 0.15:
            # quoted word
            k = self.rng.randrange(1, len(words))
            en = words[:k] + ["“" + words[k] + "”"] + words[k + 1:]
            am_words = [self.cipher.word(w) for w in words]
            am_words[k] = "«" + am_words[k] + "»"
            am = " ".join(am_words) + ("?" if q else "፡፡")
            return am, self.english(en, q)
        if kind < 0.25:
            # abbreviation inside the sentence
            k = self.rng.randrange(1, len(words))
            abbr = self.rng.choice(["mr.", "e.g."])
            en = words[:k] + ["Mr." if abbr == "mr." else abbr] + words[k:]
            am = words[:k] + [abbr] + words[k:]
            return self.amharic(am, q), self.english(en, q)
        if kind < 0.3:
            k = self.rng.randrange(1, len(words))
            url = "https://example.org/news/item.html"
            en_text = self.english(words[:k] + [url] + words[k:], q)
            am_text = " ".join([self.cipher.word(w) for w in words[:k]] + [url]
                               + [self.cipher.word(w) for w in words[k:]]) + ("?" if q else "።")
            return am_text, en_text
        return self.amharic(words, q), self.english(words, q)


def bible(w: Writer) -> Doc:
    doc = Doc("bible")
    for verse in range(1, 19):
        n = 2 if verse % 5 == 0 else 1
        am, en = zip(*(w.pair() for _ in range(n)))
        num_am = GEEZ_DIGITS[verse - 1] if verse <= 9 else str(verse)
        doc.am.lines.append(f"{num_am} " + " ".join(am))
        doc.en.lines.append(f"{verse} " + " ".join(en))
        for _ in range(n):
            doc.pairs.append((doc.am.sentences, doc.en.sentences))
            doc.am.sentences += 1
            doc.en.sentences += 1
    return doc


def news(w: Writer) -> Doc:
    doc = Doc("news")
    head = w.words(3, 5)
    am_html = ["<html><head><title>ዜና</title><style>p { margin: 0 }</style></head><body>",
               "<h1>" + " ".join(w.cipher.word(x) for x in head) + "</h1>"]
    en_html = ["<html><head><title>News</title><style>p { margin: 0 }</style></head><body>",
               "<h1>" + " ".join(head).title() + "</h1>"]
    doc.pairs.append((0, 0))
    doc.am.sentences = doc.en.sentences = 1
    for para in range(6):
        am, en = zip(*(w.pair() for _ in range(1 + para % 3)))
        if para == 2:
            # an entity on both sides
            am = (am[0].replace(" ", " &amp; ", 1),) + am[1:]
            en = (en[0].replace(" ", " &amp; ", 1),) + en[1:]
        am_html.append("<p>" + " ".join(am) + "</p>")
        en_html.append("<p>" + " ".join(en) + "</p>")
        for _ in am:
            doc.pairs.append((doc.am.sentences, doc.en.sentences))
            doc.am.sentences += 1
            doc.en.sentences += 1
    am_html.append("<footer>© 2020 ዜና</footer></body></html>")
    en_html.append("<footer>Copyright 2020 News Agency</footer></body></html>")
    doc.am.lines, doc.en.lines = am_html, en_html
    return doc


def legal(w: Writer) -> Doc:
    doc = Doc("legal")
    am_par, en_par = [], []

    def flush():
        doc.am.lines.append(" ".join(am_par))
        doc.en.lines.append(" ".join(en_par))
        am_par.clear()
        en_par.clear()

    for k in range(20):
        if k == 6:
            # English-only sentence
            en_par.append(w.english(w.words(), False))
            doc.en.sentences += 1
        if k == 14:
            # Amharic-only sentence
            am_par.append(w.amharic(w.words(), False))
            doc.am.sentences += 1
        if k == 10:
            # over-long pair: aligned, then rejected by the length filter
            am, en = w.pair(85, 85)
            doc.long_pairs += 1
        else:
            am, en = w.pair()
        am_par.append(am)
        en_par.append(en)
        doc.pairs.append((doc.am.sentences, doc.en.sentences))
        doc.am.sentences += 1
        doc.en.sentences += 1
        if k % 4 == 3:
            flush()
    if am_par:
        flush()
    return doc


CONFIG = """\
seed: 7
output_dir: out
documents:
  - id: bible
    source: religious
    src: bible.am.txt
    tgt: bible.en.txt
    rules:
      verse_numbers: true
  - id: news
    source: news
    src: news.am.html
    tgt: news.en.html
    rules:
      drop: ["^Copyright ", "^© "]
  - id: legal
    source: legal
    src: legal.am.txt
    tgt: legal.en.txt
split:
  dev: 5
  test: 5
bpe:
  merges: [50, 100, 200]
vocab:
  top_k: 500
"""


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="tests/fixtures/corpus")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    w = Writer(rng, Cipher(rng))
    docs = [bible(w), news(w), legal(w)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ext = {"news": "html"}
    expected = {"documents": [], "clean": {"length": 0}}
    for doc in docs:
        e = ext.get(doc.id, "txt")
        for lang, side in (("am", doc.am), ("en", doc.en)):
            (out / f"{doc.id}.{lang}.{e}").write_text("\n".join(side.lines) + "\n", encoding="utf-8")
        expected["documents"].append({
            "id": doc.id, "src_sentences": doc.am.sentences, "tgt_sentences": doc.en.sentences,
            "pairs": [list(p) for p in doc.pairs]})
        expected["clean"]["length"] += doc.long_pairs
    total = sum(len(d.pairs) for d in docs)
    kept = total - expected["clean"]["length"]
    expected.update(total_pairs=total, kept=kept,
                    splits={"train": kept - 10, "dev": 5, "test": 5, "unused": 0})
    (out / "expected.json").write_text(json.dumps(expected, indent=1) + "\n", encoding="utf-8")
    (out / "forge.yaml").write_text(CONFIG, encoding="utf-8")
    print(f"wrote {len(docs)} documents, {total} true pairs, to {out}")


if __name__ == "__main__":
    main()
