import math
import random
from fractions import Fraction

import pytest

from arabstop.classify import (
    BIGRAM_JOINER,
    GAIN_EPSILON,
    Leaf,
    Split,
    TrainParams,
    best_split,
    display_feature,
    dt_predict,
    dt_train,
    dump_dt,
    dump_nb,
    entropy,
    extract_bigrams,
    extract_unigrams,
    information_gain,
    iter_leaves,
    nb_predict,
    nb_scores,
    nb_train,
    tree_depth,
)
from arabstop.textkit import tokenize

TOY = [({"a"}, "pos"), ({"a", "b"}, "pos"), ({"b"}, "neg")]


# --- features --------------------------------------------------------------------

def test_unigrams_are_words_and_emoticons():
    toks = tokenize("الفيلم حلو حلو :D #تحفة @x 2014 !", {":D"})
    assert extract_unigrams(toks) == {"الفيلم", "حلو", ":D"}


def test_bigrams_skip_non_features():
    toks = tokenize("الفيلم، حلو :D", {":D"})
    j = BIGRAM_JOINER
    assert extract_bigrams(toks) == {"الفيلم" + j + "حلو", "حلو" + j + ":D"}
    assert extract_bigrams(tokenize("حلو")) == frozenset()


def test_bigram_joiner_never_in_token():
    assert tokenize("a" + BIGRAM_JOINER + "b") == tokenize("a b")
    assert display_feature("a" + BIGRAM_JOINER + "b") == "a␟b"


# --- naive bayes -----------------------------------------------------------------

def test_nb_hand_computed():
    model = nb_train(TOY)
    assert model.prior == {"neg": pytest.approx(1 / 3), "pos": pytest.approx(2 / 3)}
    assert model.cond[("a", "pos")] == pytest.approx(5 / 6)
    assert model.cond[("a", "neg")] == pytest.approx(0.25)
    assert model.cond[("b", "neg")] == pytest.approx(0.75)
    label, post = nb_predict(model, {"a"})
    # pos: 2/3 * 5/6 * 1/2 = 5/18, neg: 1/3 * 1/4 * 1/4 = 1/48
    assert label == "pos"
    assert post["pos"] == pytest.approx(40 / 43, abs=1e-12)


def test_nb_unseen_features_ignored():
    model = nb_train(TOY)
    assert nb_scores(model, {"a", "zzz"}) == nb_scores(model, {"a"})


def test_nb_matches_fraction_oracle():
    rng = random.Random(7)
    vocab = "abcd"
    for _ in range(200):
        n = rng.randint(2, 6)
        ex = [(frozenset(f for f in vocab if rng.random() < 0.5), rng.choice("pn")) for _ in range(n)]
        if len({lab for _, lab in ex}) < 2:
            continue
        model = nb_train(ex)
        seen = sorted(set().union(*(f for f, _ in ex)))
        query = frozenset(f for f in vocab if rng.random() < 0.5)
        joint = {}
        for lab in "np":
            n_l = sum(1 for _, l in ex if l == lab)
            p = Fraction(n_l, n)
            for f in seen:
                c = sum(1 for fs, l in ex if l == lab and f in fs)
                q = (c + Fraction(1, 2)) / (n_l + 1)
                p *= q if f in query else 1 - q
            joint[lab] = p
        z = sum(joint.values())
        _, post = nb_predict(model, query)
        for lab in "np":
            assert abs(post[lab] - float(joint[lab] / z)) < 1e-9


def test_nb_tie_goes_to_smallest_label():
    model = nb_train([({"a"}, "pos"), ({"a"}, "neg")])
    assert nb_predict(model, {"a"})[0] == "neg"


def test_nb_input_errors():
    with pytest.raises(ValueError):
        nb_train([({"a"}, "pos")])
    with pytest.raises(ValueError):
        nb_train(TOY, smoothing=0)
    with pytest.raises(TypeError):
        nb_train([("abc", "pos"), ("d", "neg")])


def test_nb_dump():
    text = dump_nb(nb_train(TOY))
    assert text.splitlines()[0] == "naive_bayes smoothing=0.5"
    assert "  a\tneg=0.25\tpos=0.833333333333" in text


# --- entropy and gain ------------------------------------------------------------

@pytest.mark.parametrize("dist, h", [
    ([0.5, 0.5], 1.0), ([1.0], 0.0), ([1.0, 0.0], 0.0), ([0.25, 0.75], 0.8112781244591328),
    ({"a": 0.25, "b": 0.25, "c": 0.5}, 1.5)])
def test_entropy(dist, h):
    assert entropy(dist) == pytest.approx(h, abs=1e-12)


def test_entropy_zero_is_positive_zero():
    assert math.copysign(1, entropy([1.0])) == 1


@pytest.mark.parametrize("bad", [[0.5, 0.6], [-0.1, 1.1], []])
def test_entropy_rejects_non_distribution(bad):
    with pytest.raises(ValueError):
        entropy(bad)


def test_information_gain():
    ex = [(frozenset(f), lab) for f, lab in TOY]
    # parent 2/1, split on b: {pos, neg} vs {pos}
    expected = entropy([2 / 3, 1 / 3]) - (2 / 3) * 1.0
    assert information_gain(ex, "b") == pytest.approx(expected)
    assert information_gain(ex, "zzz") == 0.0


# --- decision tree ---------------------------------------------------------------

HAND = [({"a", "b"}, "pos"), ({"a", "b"}, "pos"), ({"a"}, "pos"), ({"a"}, "neg"), (set(), "neg"), (set(), "neg")]


def test_tree_hand_traced():
    model = dt_train(HAND, TrainParams(entropy_cutoff=0.5, depth_cutoff=5, support_cutoff=1))
    root = model.root
    # a and b tie at gain 0.459; the smaller feature wins
    assert isinstance(root, Split) and root.feature == "a"
    assert root.gain == pytest.approx(1 - (4 / 6) * entropy([0.75, 0.25]))
    inner = root.present
    assert isinstance(inner, Split) and inner.feature == "b" and inner.depth == 1
    assert inner.gain == pytest.approx(entropy([0.75, 0.25]) - 0.5)
    assert inner.present == Leaf("pos", {"pos": 2}, 2, 2, 0.0, 0.0, "entropy")
    assert inner.absent.reason == "no_gain" and inner.absent.label == "neg"
    assert inner.absent.distribution == {"neg": 1, "pos": 1}
    assert root.absent == Leaf("neg", {"neg": 2}, 1, 2, 0.0, 0.0, "entropy")
    assert tree_depth(root) == 2
    assert [dt_predict(model, f) for f in ({"a", "b"}, {"a"}, {"b"}, set())] == ["pos", "neg", "neg", "neg"]


def test_tree_separable_corpus():
    ex = [({"good", f"w{i}"}, "pos") for i in range(20)] + [({"bad", f"w{i}"}, "neg") for i in range(20)]
    model = dt_train(ex)
    assert model.root.feature == "bad"
    assert {leaf.entropy for leaf in iter_leaves(model.root)} == {0.0}
    assert all(dt_predict(model, f) == lab for f, lab in ex)


def test_tree_support_cutoff_makes_single_leaf():
    ex = [({"good"}, "pos")] * 10 + [({"bad"}, "neg")] * 10
    model = dt_train(ex)  # 20 examples <= 30
    assert isinstance(model.root, Leaf) and model.root.reason == "support"
    assert model.root.label == "neg"


def test_tree_depth_cutoff():
    rng = random.Random(3)
    ex = [(frozenset(f"f{j}" for j in range(12) if rng.random() < 0.5), rng.choice(["pos", "neg"]))
          for _ in range(400)]
    model = dt_train(ex, TrainParams(entropy_cutoff=0.01, depth_cutoff=2, support_cutoff=1))
    assert tree_depth(model.root) <= 2
    assert all(leaf.depth <= 2 for leaf in iter_leaves(model.root))


def test_tree_is_order_independent():
    rng = random.Random(11)
    ex = [(frozenset(f"f{j}" for j in range(6) if rng.random() < 0.4), rng.choice(["pos", "neg"]))
          for _ in range(120)]
    params = TrainParams(0.5, 4, 5)
    first = dt_train(ex, params)
    rng.shuffle(ex)
    assert dt_train(ex, params) == first


def test_best_split_no_features():
    assert best_split([(frozenset(), "pos"), (frozenset(), "neg")]) == (None, 0.0)


def test_gain_epsilon_is_tiny():
    assert 0 < GAIN_EPSILON < 1e-9


@pytest.mark.parametrize("kwargs", [dict(entropy_cutoff=0), dict(entropy_cutoff=1.5),
                                    dict(depth_cutoff=0), dict(support_cutoff=0)])
def test_train_params_validation(kwargs):
    with pytest.raises(ValueError):
        TrainParams(**kwargs)


def test_dt_dump():
    model = dt_train(HAND, TrainParams(0.5, 5, 1))
    lines = dump_dt(model).splitlines()
    assert lines[0] == "decision_tree entropy_cutoff=0.5 depth_cutoff=5 support_cutoff=1"
    assert lines[1].startswith("a? gain=0.459148 n=6")
    assert "    present -> pos [pos=2] (entropy)" in lines
