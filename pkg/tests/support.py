"""Helpers shared by the test modules."""

from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_config(**overrides):
    """Pipeline configuration over the bundled resources and the test fixtures."""
    from arabstop.corpus_prep import PipelineConfig
    from arabstop.io import load_tsv, load_word_lines, resource_path
    from arabstop.textkit import load_lexicon

    kwargs = dict(
        topic_words=tuple(w for _, w in load_word_lines(FIXTURES / "topic_words.txt")),
        abbreviations=load_tsv(resource_path("abbreviations.tsv")),
        gloss=load_tsv(resource_path("gloss.tsv")),
        translit_overrides=load_tsv(FIXTURES / "translit_overrides.tsv"),
        emoticon_lexicon=frozenset(load_lexicon(resource_path("emoticons.txt"))),
    )
    kwargs.update(overrides)
    return PipelineConfig(**kwargs)
