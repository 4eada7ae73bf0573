"""Arabic social-network corpus preparation, dialect stopword lists and
sentiment classification experiments."""

from .classify import (
    TrainParams,
    dt_predict,
    dt_train,
    entropy,
    extract_bigrams,
    extract_unigrams,
    nb_predict,
    nb_train,
)
from .corpus_prep import Document, Label, PipelineConfig, RawPost, Source, ingest, run_pipeline
from .estimators import BernoulliNaiveBayes, CutoffDecisionTree, PresenceFeatures, StopwordFilter
from .stopgen import (
    CandidateWord,
    FrequencyTable,
    MorphRules,
    StopwordList,
    build_frequency_table,
    combine_lists,
    expand_morphology,
    remove_stopwords,
    top_k,
)
from .textkit import Token, TokenKind, arabic_script_ratio, letter_variants, tokenize

__version__ = "0.1.0"

__all__ = [
    "BernoulliNaiveBayes",
    "CandidateWord",
    "CutoffDecisionTree",
    "Document",
    "FrequencyTable",
    "Label",
    "MorphRules",
    "PipelineConfig",
    "PresenceFeatures",
    "RawPost",
    "Source",
    "StopwordFilter",
    "StopwordList",
    "Token",
    "TokenKind",
    "TrainParams",
    "arabic_script_ratio",
    "build_frequency_table",
    "combine_lists",
    "dt_predict",
    "dt_train",
    "entropy",
    "expand_morphology",
    "extract_bigrams",
    "extract_unigrams",
    "ingest",
    "letter_variants",
    "nb_predict",
    "nb_train",
    "remove_stopwords",
    "run_pipeline",
    "tokenize",
    "top_k",
]
