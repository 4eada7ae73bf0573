import pytest

from arabstop.io import ResourceError
from arabstop.textkit import VariantTable
from arabstop.translit import (
    FrancoTransliterator,
    TranslitRules,
    candidates,
    rank_candidates,
    transliterate_franco,
)

RULES = TranslitRules.load()
LEXICON = {"ضحك": 7, "ضحكت": 2, "حلو": 12, "مالوش": 3, "جدا": 9}


def test_digit_letters():
    assert "ضحك" in candidates("de7k", RULES)
    assert "عربي" in candidates("3araby", RULES)


def test_no_elision_at_start():
    assert all(c.startswith("ا") for c in candidates("a5", RULES))


def test_doubled_letter_collapses():
    assert "حلو" in candidates("7elloo", RULES)


def test_unknown_letter_gives_nothing():
    assert candidates("de7k!", RULES) == set()
    assert candidates("", RULES) == set()


def test_rank_by_count_then_length():
    ranked = rank_candidates({"ضحك", "ضحكت", "دحك"}, LEXICON)
    assert ranked == [("ضحك", 7), ("ضحكت", 2), ("دحك", 0)]


def test_rank_lookup_ignores_letter_variants():
    ranked = rank_candidates({"علي"}, {"على": 4})
    assert ranked == [("على", 4)]


def test_transliterate_attested_word():
    text, diags = transliterate_franco("de7k gamed", RULES, LEXICON)
    assert text.split()[0] == "ضحك"
    assert [d.word for d in diags] == ["gamed"]
    assert diags[0].reason == "unattested"
    assert diags[0].candidates


def test_override_wins():
    text, diags = transliterate_franco("maloosh", RULES, {}, overrides={"Maloosh": "مالوش"})
    assert (text, diags) == ("مالوش", [])


def test_arabic_and_punctuation_untouched():
    text, diags = transliterate_franco("الفيلم de7k :D!", RULES, LEXICON, emoticon_lexicon={":D"})
    assert text == "الفيلم ضحك :D!"
    assert diags == []


def test_no_candidate_reason():
    rules = TranslitRules({"a": ("ا",)})
    _, diags = transliterate_franco("abc", rules, LEXICON)
    assert diags[0].reason == "no_candidate"


def test_candidate_cap():
    rules = TranslitRules({"a": ("ا", "ى", "ء"), "b": ("ب", "پ")}, max_candidates=4)
    # the cap bounds the partial strings carried forward, not the final count
    assert len(candidates("abab", rules)) <= 4 * 3


def test_transliterator_reuses_index():
    tr = FrancoTransliterator(RULES, LEXICON)
    assert tr.resolve("de7k")[0] == "ضحك"
    assert tr("7elw")[0] == "حلو"


def test_custom_variant_table():
    table = VariantTable((("ك", "ق"),))
    assert rank_candidates({"قحق"}, {"كحك": 1}, table) == [("كحك", 1)]


def test_load_rejects_duplicate_rule(tmp_path):
    p = tmp_path / "rules.tsv"
    p.write_text("a\tا\nA\tى\n", encoding="utf-8")
    with pytest.raises(ResourceError, match="duplicate"):
        TranslitRules.load(p)


def test_load_reads_elision(tmp_path):
    p = tmp_path / "rules.tsv"
    p.write_text("# c\na\tا -\n", encoding="utf-8")
    assert TranslitRules.load(p).table == {"a": ("ا", "")}
