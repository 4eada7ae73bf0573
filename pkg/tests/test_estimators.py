import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from arabstop.estimators import (
    BernoulliNaiveBayes,
    CutoffDecisionTree,
    PresenceFeatures,
    StopwordFilter,
    check_feature_sets,
    check_X_y,
)
from arabstop.stopgen import ListKind, StopwordList
from arabstop.textkit import tokenize

DOCS = [tokenize(t) for t in ("بس الفيلم حلو", "الفيلم حلو جدا", "بس الفيلم وحش", "وحش و ممل")]
Y = ["positive", "positive", "negative", "negative"]


def test_get_params_and_clone():
    tree = CutoffDecisionTree(entropy_cutoff=0.5, support_cutoff=3)
    assert tree.get_params() == {"entropy_cutoff": 0.5, "depth_cutoff": 5, "support_cutoff": 3}
    copy = clone(tree)
    assert copy.get_params() == tree.get_params() and copy is not tree
    assert BernoulliNaiveBayes().set_params(smoothing=1.0).smoothing == 1.0


def test_pipeline_nb():
    clf = make_pipeline(StopwordFilter({"بس"}), PresenceFeatures("unigram"), BernoulliNaiveBayes())
    clf.fit(DOCS, Y)
    assert list(clf.classes_) == ["negative", "positive"]
    assert clf.predict([tokenize("حلو جدا")]).tolist() == ["positive"]
    proba = clf.predict_proba([tokenize("ممل")])
    assert proba.shape == (1, 2) and np.isclose(proba.sum(), 1.0)
    assert clf.score(DOCS, Y) == 1.0


def test_pipeline_dt_bigram():
    clf = make_pipeline(PresenceFeatures("bigram"), CutoffDecisionTree(0.5, 5, 1)).fit(DOCS, Y)
    assert clf.predict(DOCS).tolist() == Y


def test_stopword_filter_accepts_list_object():
    sw = StopwordList("s", ListKind.COMBINED, {"بس", "و"})
    out = StopwordFilter(sw).fit(DOCS).transform(DOCS)
    assert [t.text for t in out[0]] == ["الفيلم", "حلو"]
    assert StopwordFilter().fit(DOCS).transform(DOCS) == [list(d) for d in DOCS]


def test_unfitted_raises():
    with pytest.raises(NotFittedError):
        BernoulliNaiveBayes().predict([{"a"}])
    with pytest.raises(NotFittedError):
        PresenceFeatures().transform(DOCS)


def test_bad_ngram():
    with pytest.raises(ValueError):
        PresenceFeatures("trigram").fit(DOCS)


def test_validation_helpers():
    with pytest.raises(TypeError):
        check_feature_sets("abc")
    with pytest.raises(TypeError):
        check_feature_sets(["abc"])
    with pytest.raises(TypeError):
        check_feature_sets([{1, 2}])
    with pytest.raises(ValueError):
        check_X_y([{"a"}], ["pos", "neg"])
    with pytest.raises(ValueError):
        check_X_y([], [])
    with pytest.raises(TypeError):
        PresenceFeatures().fit(["raw text"])


def test_dump_methods():
    feats = PresenceFeatures().fit_transform(DOCS)
    assert BernoulliNaiveBayes().fit(feats, Y).dump().startswith("naive_bayes")
    assert CutoffDecisionTree().fit(feats, Y).dump().startswith("decision_tree")
