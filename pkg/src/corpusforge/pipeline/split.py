"""Seeded shuffle and train/dev/test carve-out."""

from __future__ import annotations

import random
from typing import Sequence, TypeVar

from ..errors import ConfigError

T = TypeVar("T")


def fisher_yates(n: int, seed: int) -> list[int]:
    """Permutation of ``range(n)``; swaps index i with a uniform j <= i,
    from the top down, drawing from a Mersenne Twister seeded with ``seed``."""
    rng = random.Random(seed)
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.randrange(i + 1)
        order[i], order[j] = order[j], order[i]
    return order


def resolve_sizes(total: int, train: int | None, dev: int, test: int) -> tuple[int, int, int]:
    """``train=None`` takes everything left after dev and test."""
    if train is None:
        train = total - dev - test
    sizes = (train, dev, test)
    if any(s < 1 for s in sizes):
        raise ConfigError(f"split sizes must be positive, got {sizes} for {total} pairs")
    return sizes


def split_corpus(pairs: Sequence[T], sizes: tuple[int, int, int], seed: int,
                 ) -> tuple[list[T], list[T], list[T]]:
    """Shuffle under ``seed`` and cut contiguous train, dev, test blocks."""
    if len(sizes) != 3 or any(int(s) != s or s < 1 for s in sizes):
        raise ConfigError(f"split sizes must be three positive integers, got {sizes!r}")
    if sum(sizes) > len(pairs):
        raise ConfigError(f"split sizes {tuple(sizes)} sum to {sum(sizes)} but the corpus has {len(pairs)} pairs")
    order = fisher_yates(len(pairs), seed)
    train, dev, test = sizes
    cut = [0, train, train + dev, train + dev + test]
    return tuple([pairs[k] for k in order[a:b]] for a, b in zip(cut, cut[1:]))  # type: ignore[return-value]
