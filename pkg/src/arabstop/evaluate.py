"""Train/test splitting, accuracy, training-time measurement and the experiment matrix."""

from __future__ import annotations

import logging
import math
import random
import time
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field

from .corpus_prep import Document, Label
from .estimators import CLASSIFIERS, PresenceFeatures
from .stopgen import StopwordList, remove_stopwords

log = logging.getLogger(__name__)

STOPWORD_MODES = ("without", "msa_lists", "corpus_based", "egyptian_general", "all_lists")
MODE_TITLES = {
    "without": "Without",
    "msa_lists": "Other lists",
    "corpus_based": "Corpus-based",
    "egyptian_general": "General",
    "all_lists": "All lists",
}
CLASSIFIER_TITLES = {"NB": "Naive Bayes", "DT": "Decision Tree"}
CSV_HEADER = "corpus,classifier,features,stopwords,accuracy,train_time_s"


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.75
    seed: int = 0
    exclude_neutral: bool = True
    stratify: bool = False

    def __post_init__(self):
        if not 0 < self.train_fraction < 1:
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction}")


def _n_train(n: int, fraction: float) -> int:
    # round first so 0.7 * 10 does not ceil to 8
    return math.ceil(round(fraction * n, 9))


def split_corpus(docs: Sequence[Document], spec: SplitSpec = SplitSpec()) -> tuple[list, list]:
    """Seeded shuffle split; the first ceil(fraction * n) documents train.

    Neutral (and unlabeled) documents are dropped first when
    ``exclude_neutral`` is set. With ``stratify`` each label is split
    separately, then both sides are shuffled again.
    """
    kept = [d for d in docs if d.label is not Label.UNLABELED]
    if spec.exclude_neutral:
        kept = [d for d in kept if d.label is not Label.NEUTRAL]
    labels = {d.label for d in kept}
    if len(kept) < 2 or len(labels) < 2:
        raise ValueError(f"need at least 2 documents with 2 labels to split, got {len(kept)} "
                         f"with labels {sorted(l.value for l in labels)}")
    rng = random.Random(spec.seed)
    if spec.stratify:
        train, test = [], []
        for lab in sorted(labels, key=lambda l: l.value):
            group = [d for d in kept if d.label is lab]
            rng.shuffle(group)
            k = _n_train(len(group), spec.train_fraction)
            train += group[:k]
            test += group[k:]
        rng.shuffle(train)
        rng.shuffle(test)
    else:
        shuffled = list(kept)
        rng.shuffle(shuffled)
        k = _n_train(len(shuffled), spec.train_fraction)
        train, test = shuffled[:k], shuffled[k:]
    if not train or not test:
        raise ValueError(f"split of {len(kept)} documents leaves an empty side")
    return train, test


def accuracy(predictions: Sequence, gold: Sequence) -> float:
    if len(predictions) != len(gold):
        raise ValueError(f"length mismatch: {len(predictions)} predictions vs {len(gold)} gold labels")
    if not gold:
        raise ValueError("accuracy of an empty set is undefined")
    return sum(p == g for p, g in zip(predictions, gold)) / len(gold)


def measure_training_time(train: Callable, *args, **kwargs):
    """Run ``train`` once; return ``(result, seconds)`` with seconds rounded to the millisecond."""
    start = time.perf_counter()
    result = train(*args, **kwargs)
    return result, round(time.perf_counter() - start, 3)


@dataclass
class EvalResult:
    corpus_name: str
    classifier: str
    feature_mode: str
    stopword_mode: str
    accuracy: float | None
    train_time_seconds: float | None
    n_train: int = 0
    n_test: int = 0
    tokens_before: int = 0
    tokens_after: int = 0
    error: str | None = None

    def csv_row(self) -> str:
        acc = "NA" if self.accuracy is None else f"{self.accuracy:.4f}"
        t = "NA" if self.train_time_seconds is None else f"{self.train_time_seconds:.3f}"
        return f"{self.corpus_name},{self.classifier},{self.feature_mode},{self.stopword_mode},{acc},{t}"


@dataclass
class MatrixResult:
    results: list[EvalResult] = field(default_factory=list)

    def to_csv(self) -> str:
        return "\n".join([CSV_HEADER] + [r.csv_row() for r in self.results]) + "\n"

    def to_table(self) -> str:
        """Markdown table with one row per
        classifier/features/stopwords cell, accuracy then time per corpus."""
        corpora = list(dict.fromkeys(r.corpus_name for r in self.results))
        cells = {(r.classifier, r.feature_mode, r.stopword_mode, r.corpus_name): r for r in self.results}
        rows = list(dict.fromkeys((r.classifier, r.feature_mode, r.stopword_mode) for r in self.results))
        head = ["Classifier", "Features", "Stopwords"]
        head += [f"Accuracy {c}" for c in corpora] + [f"Time (s) {c}" for c in corpora]
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for clf, feat, mode in rows:
            accs, times = [], []
            for c in corpora:
                r = cells.get((clf, feat, mode, c))
                accs.append("error" if r is None or r.accuracy is None else f"{100 * r.accuracy:.2f}%")
                times.append("" if r is None or r.train_time_seconds is None else f"{r.train_time_seconds:.3f}")
            row = [CLASSIFIER_TITLES.get(clf, clf), feat.capitalize(), MODE_TITLES.get(mode, mode)]
            lines.append("| " + " | ".join(row + accs + times) + " |")
        return "\n".join(lines) + "\n"


def _run_cell(corpus_name, train, test, clf_name, feature_mode, mode, stoplist) -> EvalResult:
    words = stoplist.words if stoplist is not None else frozenset()
    train_tokens = [remove_stopwords(d.tokens, words) for d in train]
    test_tokens = [remove_stopwords(d.tokens, words) for d in test]
    result = EvalResult(
        corpus_name, clf_name, feature_mode, mode, None, None,
        n_train=len(train_tokens), n_test=len(test_tokens),
        tokens_before=sum(len(d.tokens) for d in list(train) + list(test)),
        tokens_after=sum(map(len, train_tokens)) + sum(map(len, test_tokens)),
    )
    try:
        feats = PresenceFeatures(feature_mode).fit(train_tokens)
        X_train, X_test = feats.transform(train_tokens), feats.transform(test_tokens)
        y_train = [d.label.value for d in train]
        y_test = [d.label.value for d in test]
        clf = CLASSIFIERS[clf_name]()
        _, seconds = measure_training_time(clf.fit, X_train, y_train)
        result.train_time_seconds = seconds
        result.accuracy = accuracy(list(clf.predict(X_test)), y_test)
    except Exception as exc:  # a failed cell must not abort the matrix
        log.warning("cell %s/%s/%s/%s failed: %s", corpus_name, clf_name, feature_mode, mode, exc)
        result.error = f"{type(exc).__name__}: {exc}"
    return result


def run_matrix(
    corpora: Mapping[str, Sequence[Document]],
    stopword_lists: Mapping[str, StopwordList | None],
    spec: SplitSpec = SplitSpec(),
    classifiers: Sequence[str] = ("NB", "DT"),
    feature_modes: Sequence[str] = ("unigram", "bigram"),
    stopword_modes: Sequence[str] = STOPWORD_MODES,
    n_jobs: int = 1,
) -> MatrixResult:
    """Evaluate every corpus x classifier x features x stopword-mode cell.

    Each corpus is split once and the same split feeds all of its cells.
    Stopwords are removed from training and test documents alike. Cells run
    serially unless ``n_jobs > 1``; parallel cells make timings noisy.
    """
    missing = [m for m in stopword_modes if m != "without" and stopword_lists.get(m) is None]
    if missing:
        raise ValueError(f"no stopword list for modes {missing}")
    jobs = []
    failed: list[EvalResult] = []
    for name, docs in corpora.items():
        try:
            train, test = split_corpus(docs, spec)
        except ValueError as exc:
            log.warning("corpus %s cannot be split: %s", name, exc)
            for clf_name in classifiers:
                for feat in feature_modes:
                    for mode in stopword_modes:
                        failed.append(EvalResult(name, clf_name, feat, mode, None, None, error=str(exc)))
            continue
        for clf_name in classifiers:
            for feat in feature_modes:
                for mode in stopword_modes:
                    stoplist = None if mode == "without" else stopword_lists[mode]
                    jobs.append((name, train, test, clf_name, feat, mode, stoplist))
    if n_jobs > 1:
        from joblib import Parallel, delayed

        results = Parallel(n_jobs=n_jobs)(delayed(_run_cell)(*job) for job in jobs)
    else:
        results = [_run_cell(*job) for job in jobs]
    order = {name: i for i, name in enumerate(corpora)}
    combined = sorted(results + failed, key=lambda r: (
        order[r.corpus_name], list(classifiers).index(r.classifier),
        list(feature_modes).index(r.feature_mode), list(stopword_modes).index(r.stopword_mode)))
    return MatrixResult(combined)
