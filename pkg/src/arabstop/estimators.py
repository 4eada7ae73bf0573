"""scikit-learn compatible wrappers so the classifiers compose in Pipelines.

Inputs are documents, not numeric matrices: transformers take sequences of
token sequences and classifiers take sequences of feature sets.

>>> from sklearn.pipeline import make_pipeline
>>> clf = make_pipeline(PresenceFeatures("unigram"), BernoulliNaiveBayes())
>>> _ = clf.fit([["حلو", "جدا"], ["وحش"]], ["positive", "negative"])
>>> clf.predict([["حلو"]]).tolist()
['positive']
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import classify
from .stopgen import StopwordList, remove_stopwords

NGRAM_MODES = ("unigram", "bigram")


def check_token_docs(X) -> list[list]:
    """Validate a batch of token sequences (Tokens or strings)."""
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a sequence of token sequences, got a single string")
    docs = []
    for i, doc in enumerate(X):
        if isinstance(doc, (str, bytes)):
            raise TypeError(f"document {i} is a string; tokenize it first")
        docs.append(list(doc))
    return docs


def check_feature_sets(X) -> list[frozenset]:
    """Validate a batch of feature sets (iterables of strings)."""
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a sequence of feature sets, got a single string")
    out = []
    for i, feats in enumerate(X):
        if isinstance(feats, (str, bytes)):
            raise TypeError(f"sample {i} is a string, not a feature set")
        fs = frozenset(feats)
        if not all(isinstance(f, str) for f in fs):
            raise TypeError(f"sample {i} has non-string features")
        out.append(fs)
    return out


def check_X_y(X, y) -> tuple[list[frozenset], list]:
    feats = check_feature_sets(X)
    labels = list(y)
    if len(feats) != len(labels):
        raise ValueError(f"X has {len(feats)} samples but y has {len(labels)}")
    if not feats:
        raise ValueError("cannot fit on zero samples")
    return feats, labels


class PresenceFeatures(TransformerMixin, BaseEstimator):
    """Token sequences -> unigram or bigram presence sets. Stateless."""

    def __init__(self, ngram="unigram"):
        self.ngram = ngram

    def fit(self, X, y=None):
        if self.ngram not in NGRAM_MODES:
            raise ValueError(f"ngram must be one of {NGRAM_MODES}, got {self.ngram!r}")
        check_token_docs(X)
        self.fitted_ = True
        return self

    def transform(self, X):
        check_is_fitted(self)
        extract = classify.extract_unigrams if self.ngram == "unigram" else classify.extract_bigrams
        return [extract(doc) for doc in check_token_docs(X)]


class StopwordFilter(TransformerMixin, BaseEstimator):
    """Drop tokens whose surface text is a stopword. ``stopwords=None`` keeps all."""

    def __init__(self, stopwords=None):
        self.stopwords = stopwords

    def fit(self, X, y=None):
        check_token_docs(X)
        sw = self.stopwords
        if sw is None:
            self.words_ = frozenset()
        elif isinstance(sw, StopwordList):
            self.words_ = sw.words
        else:
            self.words_ = frozenset(sw)
        return self

    def transform(self, X):
        check_is_fitted(self)
        return [remove_stopwords(doc, self.words_) for doc in check_token_docs(X)]


class BernoulliNaiveBayes(ClassifierMixin, BaseEstimator):
    def __init__(self, smoothing=classify.DEFAULT_SMOOTHING):
        self.smoothing = smoothing

    def fit(self, X, y):
        feats, labels = check_X_y(X, y)
        self.model_ = classify.nb_train(zip(feats, labels), self.smoothing)
        self.classes_ = np.array(self.model_.labels)
        return self

    def predict(self, X):
        check_is_fitted(self)
        return np.array([classify.nb_predict(self.model_, f)[0] for f in check_feature_sets(X)])

    def predict_proba(self, X):
        check_is_fitted(self)
        rows = []
        for f in check_feature_sets(X):
            _, post = classify.nb_predict(self.model_, f)
            rows.append([post[c] for c in self.model_.labels])
        return np.array(rows)

    def dump(self) -> str:
        check_is_fitted(self)
        return classify.dump_nb(self.model_)


class CutoffDecisionTree(ClassifierMixin, BaseEstimator):
    def __init__(self, entropy_cutoff=0.8, depth_cutoff=5, support_cutoff=30):
        self.entropy_cutoff = entropy_cutoff
        self.depth_cutoff = depth_cutoff
        self.support_cutoff = support_cutoff

    def fit(self, X, y):
        feats, labels = check_X_y(X, y)
        params = classify.TrainParams(self.entropy_cutoff, self.depth_cutoff, self.support_cutoff)
        self.model_ = classify.dt_train(zip(feats, labels), params)
        self.classes_ = np.array(self.model_.labels)
        return self

    def predict(self, X):
        check_is_fitted(self)
        return np.array([classify.dt_predict(self.model_, f) for f in check_feature_sets(X)])

    def dump(self) -> str:
        check_is_fitted(self)
        return classify.dump_dt(self.model_)


CLASSIFIERS = {"NB": BernoulliNaiveBayes, "DT": CutoffDecisionTree}
