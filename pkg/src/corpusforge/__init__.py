"""corpusforge: parallel corpus construction for a low-resource language pair.

Normalize, segment, align without a bilingual lexicon, filter, romanize,
segment into subwords, split, and score translations.
"""

__version__ = "0.1.0"
