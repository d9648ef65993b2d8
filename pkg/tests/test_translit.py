import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpusforge.textnorm import is_ethiopic
from corpusforge.translit import (
    DecodeError,
    TranslitError,
    TranslitTable,
    UnmappedCharacterError,
    default_translit,
    deromanize,
    load_translit,
    parse_translit,
    romanize,
)

TABLE = default_translit()


def test_examples():
    assert romanize("ሀ") == "ha"
    assert deromanize("ha") == "ሀ"
    assert romanize("abc 123") == "abc 123"
    assert romanize("") == "" and deromanize("") == ""


def test_every_row_round_trips():
    for eth, latin in TABLE.forward.items():
        assert romanize(eth) == latin
        assert deromanize(latin) == eth
    joined = "".join(TABLE.forward)
    assert deromanize(romanize(joined)) == joined


def test_table_covers_the_syllabary_in_use():
    assert len(TABLE.forward) >= 200
    assert all(is_ethiopic(k) for k in TABLE.forward)
    assert all(v == v.lower() for v in TABLE.forward.values())


def test_prefix_free_checked_at_load():
    with pytest.raises(TranslitError, match="prefix-free"):
        parse_translit(["ሀ\th", "ሁ\thu"])


def test_not_bijective():
    with pytest.raises(TranslitError, match="image of both"):
        TranslitTable({"ሀ": "ha", "ሁ": "ha"})


def test_bad_rows(tmp_path):
    with pytest.raises(TranslitError):
        TranslitTable({"a": "x"})
    with pytest.raises(TranslitError):
        TranslitTable({"ሀ": "HA"})
    with pytest.raises(TranslitError, match="duplicate"):
        parse_translit(["ሀ\tha", "ሀ\thb"])
    path = tmp_path / "t.tsv"
    path.write_text("# c\nሀ\tq\nሁ\tr\n", encoding="utf-8")
    assert romanize("ሀሁ!", load_translit(path)) == "qr!"


def test_unmapped_character():
    small = TranslitTable({"ሀ": "ha"})
    with pytest.raises(UnmappedCharacterError) as err:
        romanize("ሀሁ", small)
    assert err.value.offset == 1 and "U+1201" in str(err.value)


def test_decode_error_and_pass_through():
    small = TranslitTable({"ሀ": "ha", "ሁ": "hu"})
    assert deromanize("zzz-not-in-code", small) == "zzz-not-in-code"
    # "z" starts a code in the shipped table but "zz" completes none
    with pytest.raises(DecodeError):
        deromanize("zzz-not-in-code")
    assert deromanize("x0 ha") == "x0 ሀ"
    with pytest.raises(DecodeError) as err:
        deromanize("hax", small.__class__({"ሀ": "ha", "ሁ": "xu"}))
    assert err.value.offset == 2


ETH = st.text(st.sampled_from(sorted(TABLE.forward) + list(" 0123!\n")), max_size=40)


@settings(max_examples=300, deadline=None)
@given(ETH)
def test_round_trip_property(text):
    assert deromanize(romanize(text)) == text
