import time

import pytest

from arabstop.corpus_prep import Document, Label, Source
from arabstop.evaluate import (
    CSV_HEADER,
    STOPWORD_MODES,
    SplitSpec,
    accuracy,
    measure_training_time,
    run_matrix,
    split_corpus,
)
from arabstop.stopgen import ListKind, StopwordList
from arabstop.textkit import tokenize


def make_doc(i, label, text=None):
    text = text or ("حلو جميل" if label is Label.POSITIVE else "وحش ممل")
    return Document(f"d{i}", Source.FACEBOOK, text, text, tokenize(text), label)


def balanced(n):
    return [make_doc(i, Label.POSITIVE if i % 2 else Label.NEGATIVE) for i in range(n)]


def test_split_sizes():
    train, test = split_corpus(balanced(100))
    assert (len(train), len(test)) == (75, 25)
    assert not {d.id for d in train} & {d.id for d in test}


def test_split_drops_neutral():
    docs = balanced(8) + [make_doc(100, Label.NEUTRAL), make_doc(101, Label.NEUTRAL)]
    train, test = split_corpus(docs)
    assert (len(train), len(test)) == (6, 2)
    train, test = split_corpus(docs, SplitSpec(exclude_neutral=False))
    assert len(train) + len(test) == 10


def test_split_drops_unlabeled():
    docs = balanced(4) + [make_doc(9, Label.UNLABELED)]
    train, test = split_corpus(docs)
    assert len(train) + len(test) == 4


def test_split_rounding():
    train, _ = split_corpus(balanced(10), SplitSpec(train_fraction=0.7))
    assert len(train) == 7


def test_split_is_seeded():
    docs = balanced(40)
    assert split_corpus(docs, SplitSpec(seed=3)) == split_corpus(docs, SplitSpec(seed=3))
    assert split_corpus(docs, SplitSpec(seed=3)) != split_corpus(docs, SplitSpec(seed=4))


def test_split_stratified():
    docs = [make_doc(i, Label.POSITIVE) for i in range(30)] + [make_doc(100 + i, Label.NEGATIVE) for i in range(10)]
    train, test = split_corpus(docs, SplitSpec(stratify=True))
    assert sum(d.label is Label.NEGATIVE for d in test) == 2
    assert sum(d.label is Label.POSITIVE for d in test) == 7


def test_split_errors():
    with pytest.raises(ValueError):
        split_corpus([make_doc(i, Label.POSITIVE) for i in range(5)])
    with pytest.raises(ValueError):
        SplitSpec(train_fraction=1.0)


def test_accuracy():
    assert accuracy(["a", "b", "a", "a"], ["a", "b", "b", "a"]) == 0.75
    with pytest.raises(ValueError):
        accuracy(["a"], ["a", "b"])
    with pytest.raises(ValueError):
        accuracy([], [])


def test_training_time_calibration():
    result, secs = measure_training_time(time.sleep, 0.05)
    assert result is None
    assert abs(secs - 0.050) <= 0.02
    assert secs == round(secs, 3)


def _lists():
    return {m: StopwordList(m, ListKind.COMBINED, {"و"}) for m in STOPWORD_MODES if m != "without"}


def test_matrix_rows_and_csv():
    corpora = {"reviews": balanced(40)}
    result = run_matrix(corpora, _lists())
    assert len(result.results) == 20
    lines = result.to_csv().splitlines()
    assert lines[0] == CSV_HEADER == "corpus,classifier,features,stopwords,accuracy,train_time_s"
    assert lines[1].startswith("reviews,NB,unigram,without,1.0000,")
    assert all(r.error is None for r in result.results)
    table = result.to_table()
    assert table.splitlines()[0].startswith("| Classifier | Features | Stopwords | Accuracy reviews")
    assert "| Naive Bayes | Unigram | Corpus-based | 100.00% |" in table


def test_matrix_is_deterministic_apart_from_time():
    corpora = {"a": balanced(30), "b": balanced(22)}

    def strip(csv):
        return [line.rsplit(",", 1)[0] for line in csv.splitlines()]

    first = run_matrix(corpora, _lists(), SplitSpec(seed=5)).to_csv()
    again = run_matrix(corpora, _lists(), SplitSpec(seed=5), n_jobs=2).to_csv()
    assert strip(first) == strip(again)
    assert len(first.splitlines()) == 41


def test_matrix_records_unsplittable_corpus():
    corpora = {"ok": balanced(12), "bad": [make_doc(0, Label.POSITIVE)]}
    result = run_matrix(corpora, _lists(), classifiers=("NB",), feature_modes=("unigram",))
    bad = [r for r in result.results if r.corpus_name == "bad"]
    assert len(bad) == 5 and all(r.accuracy is None and r.error for r in bad)
    assert "bad,NB,unigram,without,NA,NA" in result.to_csv()


def test_matrix_missing_list():
    with pytest.raises(ValueError, match="corpus_based"):
        run_matrix({"a": balanced(8)}, {})


def test_stopword_counts_recorded():
    docs = [make_doc(i, Label.POSITIVE if i % 2 else Label.NEGATIVE, "و حلو" if i % 2 else "و وحش")
            for i in range(8)]
    result = run_matrix({"a": docs}, _lists(), classifiers=("NB",), feature_modes=("unigram",))
    without, msa = result.results[0], result.results[1]
    assert without.tokens_before == without.tokens_after == 16
    assert msa.tokens_after == 8
