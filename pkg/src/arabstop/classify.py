"""Presence features and the two classifiers: Bernoulli Naive Bayes and a
binary decision tree refined under entropy, depth and support cutoffs."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass, field

from .textkit import Token, TokenKind

BIGRAM_JOINER = "\x1f"  # whitespace to str.isspace, so never inside a token
FEATURE_KINDS = (TokenKind.WORD, TokenKind.EMOTICON)
DEFAULT_SMOOTHING = 0.5
GAIN_EPSILON = 1e-12

FeatureSet = frozenset


def _feature_texts(tokens) -> list[str]:
    out = []
    for t in tokens:
        if isinstance(t, Token):
            if t.kind in FEATURE_KINDS:
                out.append(t.text)
        else:
            out.append(t)
    return out


def extract_unigrams(tokens) -> FeatureSet:
    """Distinct word and emoticon texts. Plain strings count as words."""
    return frozenset(_feature_texts(tokens))


def extract_bigrams(tokens) -> FeatureSet:
    """Distinct adjacent pairs over the word/emoticon sequence."""
    texts = _feature_texts(tokens)
    return frozenset(a + BIGRAM_JOINER + b for a, b in zip(texts, texts[1:]))


def display_feature(feature: str) -> str:
    return feature.replace(BIGRAM_JOINER, "␟")


# --- Naive Bayes ---------------------------------------------------------------

@dataclass(frozen=True)
class NBModel:
    labels: tuple
    prior: Mapping[Hashable, float]
    cond: Mapping[tuple[str, Hashable], float]
    vocabulary: frozenset[str]
    smoothing_constant: float = DEFAULT_SMOOTHING
    # per-label sum of log(1 - cond) over the vocabulary, the score of an empty input
    _base: Mapping[Hashable, float] = field(default_factory=dict, repr=False, compare=False)


def _check_examples(examples) -> list[tuple[frozenset, Hashable]]:
    checked = []
    for i, item in enumerate(examples):
        try:
            feats, label = item
        except (TypeError, ValueError):
            raise ValueError(f"example {i} is not a (features, label) pair") from None
        if isinstance(feats, str):
            raise TypeError(f"example {i}: features must be a set of strings, not a string")
        checked.append((frozenset(feats), label))
    return checked


def nb_train(examples, smoothing: float = DEFAULT_SMOOTHING) -> NBModel:
    """Bernoulli presence model with symmetric smoothing ``s``:
    ``P(f | l) = (docs of l containing f + s) / (docs of l + 2s)``.
    """
    if smoothing <= 0:
        raise ValueError("smoothing must be positive")
    examples = _check_examples(examples)
    label_counts = Counter(label for _, label in examples)
    if len(label_counts) < 2:
        raise ValueError(f"need at least two labels to train, got {sorted(label_counts)}")
    labels = tuple(sorted(label_counts))
    n = len(examples)
    presence: dict[Hashable, Counter] = {lab: Counter() for lab in labels}
    for feats, label in examples:
        presence[label].update(feats)
    vocabulary = frozenset().union(*(feats for feats, _ in examples))
    prior = {lab: label_counts[lab] / n for lab in labels}
    cond = {}
    base = {}
    for lab in labels:
        denom = label_counts[lab] + 2 * smoothing
        total = 0.0
        for f in sorted(vocabulary):
            p = (presence[lab][f] + smoothing) / denom
            cond[(f, lab)] = p
            total += math.log1p(-p)
        base[lab] = total
    return NBModel(labels, prior, cond, vocabulary, smoothing, base)


def nb_scores(model: NBModel, features) -> dict:
    """Unnormalized log scores; features outside the vocabulary are ignored."""
    present = sorted(model.vocabulary.intersection(features))
    scores = {}
    for lab in model.labels:
        base = model._base.get(lab)
        if base is None:
            base = sum(math.log1p(-model.cond[(f, lab)]) for f in sorted(model.vocabulary))
        s = math.log(model.prior[lab]) + base
        for f in present:
            p = model.cond[(f, lab)]
            s += math.log(p) - math.log1p(-p)
        scores[lab] = s
    return scores


def nb_predict(model: NBModel, features) -> tuple[Hashable, dict]:
    """Most probable label (ties go to the smallest label) and the posterior."""
    scores = nb_scores(model, features)
    top = max(scores.values())
    weights = {lab: math.exp(s - top) for lab, s in scores.items()}
    z = math.fsum(weights.values())
    posterior = {lab: w / z for lab, w in weights.items()}
    best = min(model.labels, key=lambda lab: (-scores[lab], lab))
    return best, posterior


def dump_nb(model: NBModel) -> str:
    lines = [f"naive_bayes smoothing={model.smoothing_constant!r}", "priors:"]
    for lab in model.labels:
        lines.append(f"  {lab}\t{model.prior[lab]:.12g}")
    lines.append("conditionals:")
    for f in sorted(model.vocabulary):
        probs = "\t".join(f"{lab}={model.cond[(f, lab)]:.12g}" for lab in model.labels)
        lines.append(f"  {display_feature(f)}\t{probs}")
    return "\n".join(lines) + "\n"


# --- Decision tree ---------------------------------------------------------------

@dataclass(frozen=True)
class TrainParams:
    entropy_cutoff: float = 0.8
    depth_cutoff: int = 5
    support_cutoff: int = 30

    def __post_init__(self):
        if not 0 < self.entropy_cutoff <= 1:
            raise ValueError("entropy_cutoff must be in (0, 1]")
        if self.depth_cutoff < 1 or self.support_cutoff < 1:
            raise ValueError("depth_cutoff and support_cutoff must be positive")


def entropy(distribution) -> float:
    """Shannon entropy in bits of a probability distribution (sequence or mapping)."""
    probs = list(distribution.values()) if isinstance(distribution, Mapping) else list(distribution)
    if any(p < 0 for p in probs):
        raise ValueError("probabilities must be non-negative")
    if abs(math.fsum(probs) - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {math.fsum(probs)!r}, not 1")
    return -math.fsum(p * math.log2(p) for p in probs if p > 0) + 0.0


def _label_entropy(counts: Mapping) -> float:
    n = sum(counts.values())
    if n == 0:
        return 0.0
    return entropy([counts[k] / n for k in sorted(counts)])


@dataclass(frozen=True)
class Leaf:
    label: Hashable
    distribution: Mapping[Hashable, int]
    depth: int
    support: int
    entropy: float
    best_gain: float
    reason: str


@dataclass(frozen=True)
class Split:
    feature: str
    present: "Leaf | Split"
    absent: "Leaf | Split"
    depth: int
    support: int
    gain: float


@dataclass(frozen=True)
class DTModel:
    root: Leaf | Split
    params: TrainParams
    labels: tuple


def information_gain(examples: Sequence[tuple[frozenset, Hashable]], feature: str) -> float:
    """Entropy reduction from splitting ``examples`` on presence of ``feature``."""
    parent = Counter(lab for _, lab in examples)
    with_f = Counter(lab for feats, lab in examples if feature in feats)
    return _gain(parent, with_f)


def _gain(parent: Counter, with_f: Counter) -> float:
    n = sum(parent.values())
    n_with = sum(with_f.values())
    if n == 0 or n_with in (0, n):
        return 0.0
    without = parent - with_f
    child = (n_with / n) * _label_entropy(with_f) + ((n - n_with) / n) * _label_entropy(without)
    return _label_entropy(parent) - child


def _majority(counts: Counter):
    return min(counts, key=lambda lab: (-counts[lab], lab))


def best_split(examples) -> tuple[str | None, float]:
    """Feature with the largest information gain (ties: smallest feature)."""
    parent = Counter(lab for _, lab in examples)
    by_feature: dict[str, Counter] = {}
    for feats, lab in examples:
        for f in feats:
            by_feature.setdefault(f, Counter())[lab] += 1
    best, best_gain = None, 0.0
    for f in sorted(by_feature):
        g = _gain(parent, by_feature[f])
        if best is None or round(g, 12) > round(best_gain, 12):
            best, best_gain = f, g
    return best, best_gain


def _grow(examples, depth, params: TrainParams):
    counts = Counter(lab for _, lab in examples)
    n = len(examples)
    h = _label_entropy(counts)
    label = _majority(counts)

    def leaf(reason, gain=0.0):
        return Leaf(label, dict(sorted(counts.items())), depth, n, h, gain, reason)

    if h <= params.entropy_cutoff:
        return leaf("entropy")
    if depth >= params.depth_cutoff:
        return leaf("depth")
    if n <= params.support_cutoff:
        return leaf("support")
    feature, gain = best_split(examples)
    if feature is None or gain <= GAIN_EPSILON:
        return leaf("no_gain", max(gain, 0.0))
    present = [ex for ex in examples if feature in ex[0]]
    absent = [ex for ex in examples if feature not in ex[0]]
    return Split(feature, _grow(present, depth + 1, params), _grow(absent, depth + 1, params), depth, n, gain)


def dt_train(examples, params: TrainParams = TrainParams()) -> DTModel:
    """Grow a tree top-down on presence/absence splits.

    A node stops as a majority-label leaf when its label entropy is at most
    ``entropy_cutoff``, it sits at ``depth_cutoff``, it holds at most
    ``support_cutoff`` examples, or no feature has positive gain.
    """
    examples = _check_examples(examples)
    if not examples:
        raise ValueError("need at least one example")
    labels = tuple(sorted({lab for _, lab in examples}))
    return DTModel(_grow(examples, 0, params), params, labels)


def dt_predict(model: DTModel, features) -> Hashable:
    features = frozenset(features)
    node = model.root
    while isinstance(node, Split):
        node = node.present if node.feature in features else node.absent
    return node.label


def iter_leaves(node):
    if isinstance(node, Leaf):
        yield node
    else:
        yield from iter_leaves(node.present)
        yield from iter_leaves(node.absent)


def tree_depth(node) -> int:
    if isinstance(node, Leaf):
        return node.depth
    return max(tree_depth(node.present), tree_depth(node.absent))


def dump_dt(model: DTModel) -> str:
    p = model.params
    lines = [f"decision_tree entropy_cutoff={p.entropy_cutoff!r} depth_cutoff={p.depth_cutoff} "
             f"support_cutoff={p.support_cutoff}"]

    def walk(node, indent, prefix):
        pad = "  " * indent
        if isinstance(node, Leaf):
            dist = " ".join(f"{k}={v}" for k, v in node.distribution.items())
            lines.append(f"{pad}{prefix}-> {node.label} [{dist}] ({node.reason})")
            return
        lines.append(f"{pad}{prefix}{display_feature(node.feature)}? gain={node.gain:.6f} n={node.support}")
        walk(node.present, indent + 1, "present ")
        walk(node.absent, indent + 1, "absent ")

    walk(model.root, 0, "")
    return "\n".join(lines) + "\n"
