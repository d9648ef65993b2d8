import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpusforge.segment import (
    NegativeWordlist,
    ProtectedSpan,
    SpanKind,
    default_wordlist,
    load_wordlist,
    parse_wordlist,
    protect_spans,
    sentence_offsets,
    split_sentences,
)

DR = NegativeWordlist(frozenset({"dr."}))


def test_protect_email():
    text = "Mail a@b.co now."
    spans = protect_spans(text, NegativeWordlist())
    assert [(text[s.start:s.end], s.kind) for s in spans] == [("a@b.co", SpanKind.EMAIL)]


def test_protect_abbreviation():
    spans = protect_spans("Dr. Smith", DR)
    assert spans == [ProtectedSpan(0, 3, SpanKind.ABBREVIATION)]
    assert spans[0].kind is SpanKind.ABBREVIATION


def test_protect_nothing():
    assert protect_spans("no punctuation here", DR) == []


def test_protect_url_hashtag_initials():
    text = "see https://x.org/a.b. #tag J. R. Tolkien"
    kinds = {text[s.start:s.end]: s.kind for s in protect_spans(text)}
    assert kinds == {"https://x.org/a.b": SpanKind.URL, "#tag": SpanKind.HASHTAG,
                     "J.": SpanKind.INITIAL, "R.": SpanKind.INITIAL}


def test_overlap_longest_wins():
    # "e.g." as an abbreviation beats the initials "e." and "g."
    text = "use e.g. this"
    spans = protect_spans(text, default_wordlist("en"))
    assert [(text[s.start:s.end], s.kind) for s in spans] == [("e.g.", SpanKind.ABBREVIATION)]


def test_split_amharic():
    assert split_sentences("ሰላም ነው። እንዴት ነህ?", "am") == ["ሰላም ነው።", "እንዴት ነህ?"]


def test_split_english_with_abbreviation():
    assert split_sentences("Dr. Smith arrived. He left.", "en", DR) == ["Dr. Smith arrived.", "He left."]


def test_split_empty():
    assert split_sentences("", "en") == []
    assert split_sentences("   \n ", "am") == []


def test_exclamation_and_ellipsis_are_not_boundaries():
    assert split_sentences("Wait! Then... go. Done", "en") == ["Wait! Then... go.", "Done"]


def test_period_is_not_an_amharic_boundary():
    assert split_sentences("ሀ. ለ። መ", "am") == ["ሀ. ለ።", "መ"]


def test_closers_after_boundary():
    assert split_sentences('He said "go." She went.', "en") == ['He said "go."', "She went."]


def test_boundary_needs_following_space():
    assert split_sentences("version 2.5 is out.", "en") == ["version 2.5 is out."]


def test_offsets_point_at_trimmed_sentences():
    text = "  One.  Two?  "
    assert [text[a:b] for a, b in sentence_offsets(text, "en")] == ["One.", "Two?"]


def test_wordlist_entries_need_terminal_punctuation():
    with pytest.raises(ValueError):
        NegativeWordlist(frozenset({"dr"}))


def test_wordlist_file(tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("# c\n[abbreviations]\nProf.\n[clitics]\nyo.\n", encoding="utf-8")
    wl = load_wordlist(path, "en")
    assert wl.abbreviations == {"prof."} and wl.clitics == {"yo."}
    assert split_sentences("Prof. X spoke. yo. fine.", "en", wl) == ["Prof. X spoke.", "yo. fine."]
    with pytest.raises(ValueError):
        parse_wordlist(["[nonsense]"])


def test_default_wordlists_load():
    assert "etc." in default_wordlist("en").abbreviations
    assert default_wordlist("am").abbreviations == frozenset()


WORD = st.text(st.sampled_from("abcሀለመ"), min_size=1, max_size=5)
PUNCT = st.sampled_from([".", "?", "።", "!", "...", ",", ""])
INJECT = st.sampled_from(["Dr.", "e.g.", "J.", "https://a.b/c.d", "x@y.org", "#x.y", "etc."])


@st.composite
def texts(draw):
    parts = draw(st.lists(st.one_of(
        st.tuples(WORD, PUNCT).map("".join), INJECT), max_size=15))
    seps = draw(st.lists(st.sampled_from([" ", "  ", "\n", " \t"]), min_size=len(parts), max_size=len(parts)))
    return "".join(p + s for p, s in zip(parts, seps))


@settings(max_examples=300, deadline=None)
@given(texts(), st.sampled_from(["en", "am"]))
def test_reconstruction(text, lang):
    sents = split_sentences(text, lang)
    assert " ".join(sents) == " ".join(text.split())
    assert all(s.strip() == s and s for s in sents)
    assert split_sentences(text, lang) == sents


@settings(max_examples=300, deadline=None)
@given(texts())
def test_no_cut_inside_protected_spans(text):
    wl = default_wordlist("en")
    spans = protect_spans(text, wl)
    for a, b in sentence_offsets(text, "en", wl):
        for s in spans:
            assert not (s.start < b < s.end), (text, s)
    prev = 0
    for s in spans:
        assert prev <= s.start < s.end <= len(text)
        prev = s.end
