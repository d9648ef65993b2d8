import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpusforge.align import AlignedPair
from corpusforge.clean import CleanConfig, filter_pairs, rejection_reason

CFG = CleanConfig()


def side(n):
    return " ".join(["w"] * n)


@pytest.mark.parametrize("ls, lt, reason", [
    (80, 80, None),
    (81, 10, "length"),
    (10, 81, "length"),
    (18, 2, None),
    (2, 18, None),
    (19, 2, "ratio"),
    (0, 5, "empty"),
    (5, 0, "empty"),
    (1, 1, None),
])
def test_boundaries(ls, lt, reason):
    assert rejection_reason(side(ls), side(lt), CFG) == reason


def test_empty_pair_from_literal():
    assert rejection_reason("", "hello", CFG) == "empty"
    assert rejection_reason("   ", "hello", CFG) == "empty"


def test_invalid_config():
    with pytest.raises(ValueError):
        CleanConfig(max_tokens=0)
    with pytest.raises(ValueError):
        CleanConfig(max_ratio=0.5)


def test_report_counts():
    pairs = [AlignedPair(side(a), side(b), k, k) for k, (a, b) in enumerate([(3, 3), (81, 3), (0, 2), (19, 2), (4, 4)])]
    kept, report = filter_pairs(pairs)
    assert [p.src_index for p in kept] == [0, 4]
    assert report.to_dict() == {"total": 5, "kept": 2, "rejected": {"empty": 1, "length": 1, "ratio": 1}}


def test_report_lists_every_reason():
    assert filter_pairs([])[1].to_dict()["rejected"] == {"empty": 0, "length": 0, "ratio": 0}


PAIRS = st.lists(st.tuples(st.integers(0, 100), st.integers(0, 100)), max_size=30).map(
    lambda xs: [AlignedPair(side(a), side(b), k, k) for k, (a, b) in enumerate(xs)])


@settings(max_examples=150, deadline=None)
@given(PAIRS)
def test_idempotent_and_order_preserving(pairs):
    kept, report = filter_pairs(pairs)
    again, report2 = filter_pairs(kept)
    assert again == kept and report2.kept == report2.total == len(kept)
    idx = [p.src_index for p in kept]
    assert idx == sorted(idx)
    assert report.kept + sum(report.rejected.values()) == report.total == len(pairs)
