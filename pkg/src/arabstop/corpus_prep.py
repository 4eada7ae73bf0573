"""Corpus preparation: ingestion, filtering stages, normalization of abbreviations,
Franco-Arab and embedded English, and rating-based annotation."""

from __future__ import annotations

import enum
import json
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .stopgen import build_frequency_table
from .textkit import (
    DEFAULT_VARIANTS,
    Token,
    TokenKind,
    VariantTable,
    arabic_script_ratio,
    hashtag_parts,
    is_latin_word,
    scan,
    tokenize,
)
from .translit import FrancoDiagnostic, FrancoTransliterator, TranslitRules

log = logging.getLogger(__name__)


class Source(str, enum.Enum):
    REVIEW = "review"
    FACEBOOK = "facebook"
    TWITTER = "twitter"


class Label(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    UNLABELED = "unlabeled"


class IngestError(Exception):
    """The corpus file cannot be used at all (unreadable, duplicate ids)."""


@dataclass(frozen=True)
class RawPost:
    id: str
    source: Source
    text: str
    has_photo_only: bool = False
    rating: int | None = None
    label: Label | None = None

    def __post_init__(self):
        if self.rating is not None and self.source is not Source.REVIEW:
            raise ValueError(f"post {self.id}: rating is only allowed on reviews")

    def to_record(self) -> dict:
        rec = {"id": self.id, "source": self.source.value, "text": self.text}
        if self.has_photo_only:
            rec["has_photo_only"] = True
        if self.rating is not None:
            rec["rating"] = self.rating
        if self.label is not None:
            rec["label"] = self.label.value
        return rec


@dataclass(frozen=True)
class Diagnostic:
    line: int
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}"


def _parse_record(obj, source: Source | None) -> RawPost:
    if not isinstance(obj, dict):
        raise ValueError("record is not a JSON object")
    pid, text = obj.get("id"), obj.get("text")
    if not isinstance(pid, str) or not pid:
        raise ValueError("missing or non-string 'id'")
    if not isinstance(text, str):
        raise ValueError("missing or non-string 'text'")
    src = obj.get("source", source.value if source else None)
    try:
        src = Source(src)
    except ValueError:
        raise ValueError(f"unknown source {src!r}") from None
    if source is not None and src is not source:
        raise ValueError(f"source {src.value!r} does not match expected {source.value!r}")
    photo = obj.get("has_photo_only", False)
    if not isinstance(photo, bool):
        raise ValueError("'has_photo_only' must be a boolean")
    rating = obj.get("rating")
    if rating is not None and (isinstance(rating, bool) or not isinstance(rating, int)):
        raise ValueError("'rating' must be an integer")
    label = obj.get("label")
    if label is not None:
        if label not in ("positive", "negative", "neutral"):
            raise ValueError(f"unknown label {label!r}")
        label = Label(label)
    return RawPost(pid, src, text, photo, rating, label)


def ingest(path: str | Path, source: Source | str | None = None) -> tuple[list[RawPost], list[Diagnostic]]:
    """Read a JSON-lines corpus file.

    Malformed lines are skipped and reported as diagnostics with their line
    number. Duplicate ids and unreadable files raise :class:`IngestError`.
    """
    source = Source(source) if source is not None else None
    try:
        raw = Path(path).read_bytes().decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    posts: list[RawPost] = []
    diagnostics: list[Diagnostic] = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(raw.splitlines(), 1):
        if not line.strip():
            continue
        try:
            post = _parse_record(json.loads(line), source)
        except (json.JSONDecodeError, ValueError) as exc:
            diagnostics.append(Diagnostic(lineno, str(exc)))
            continue
        if post.id in seen:
            raise IngestError(f"{path}:{lineno}: duplicate id {post.id!r} (first on line {seen[post.id]})")
        seen[post.id] = lineno
        posts.append(post)
    return posts, diagnostics


def dumps_posts(posts: Iterable[RawPost]) -> str:
    return "".join(json.dumps(p.to_record(), ensure_ascii=False) + "\n" for p in posts)


@dataclass
class Document:
    id: str
    source: Source
    raw_text: str
    clean_text: str
    tokens: list[Token]
    label: Label = Label.UNLABELED

    def to_record(self) -> dict:
        rec = {"id": self.id, "source": self.source.value, "text": self.clean_text,
               "raw_text": self.raw_text}
        if self.label is not Label.UNLABELED:
            rec["label"] = self.label.value
        return rec


def load_documents(path: str | Path, emoticon_lexicon: Iterable[str] = ()) -> list[Document]:
    """Read a prepared corpus (or a raw one) as tokenized Documents.

    Reviews without a label but with a rating are annotated from the rating.
    """
    posts, diagnostics = ingest(path)
    if diagnostics:
        raise IngestError(f"{path}: " + "; ".join(map(str, diagnostics)))
    raw_texts = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if line.strip():
            obj = json.loads(line)
            raw_texts[obj["id"]] = obj.get("raw_text", obj["text"])
    docs = []
    lexicon = frozenset(emoticon_lexicon)
    for p in posts:
        label = p.label
        if label is None and p.rating is not None:
            label = annotate_by_rating(p.rating)
        docs.append(Document(p.id, p.source, raw_texts[p.id], p.text,
                             tokenize(p.text, lexicon), label or Label.UNLABELED))
    return docs


def dumps_documents(docs: Iterable[Document]) -> str:
    return "".join(json.dumps(d.to_record(), ensure_ascii=False) + "\n" for d in docs)


# --- filters -----------------------------------------------------------------

STAGE_URL = "url_or_advertising"
STAGE_PHOTO = "photo_only"
STAGE_MENTION = "mention_only"
STAGE_TOPIC = "unrelated"
STAGE_NON_ARABIC = "non_arabic"
FILTER_STAGES = (STAGE_URL, STAGE_PHOTO, STAGE_MENTION, STAGE_TOPIC, STAGE_NON_ARABIC)

_CONTENT_KINDS = (TokenKind.WORD, TokenKind.EMOTICON, TokenKind.HASHTAG, TokenKind.NUMBER)


def is_mention_only(text: str) -> bool:
    tokens = tokenize(text)
    kinds = {t.kind for t in tokens}
    return TokenKind.MENTION in kinds and kinds <= {TokenKind.MENTION, TokenKind.PUNCTUATION}


def is_url_only(tokens: Sequence[Token]) -> bool:
    has_url = any(t.kind is TokenKind.URL for t in tokens)
    return has_url and not any(t.kind in _CONTENT_KINDS for t in tokens)


def _normalized_words(tokens: Iterable[Token], variants: VariantTable) -> list[str]:
    words = []
    for t in tokens:
        if t.kind is TokenKind.WORD:
            words.append(variants.normalize(t.text.lower()))
        elif t.kind is TokenKind.HASHTAG:
            words.extend(variants.normalize(p.lower()) for p in hashtag_parts(t))
    return words


def _contains_phrase(words: Sequence[str], phrase: Sequence[str]) -> bool:
    n = len(phrase)
    return any(list(words[i:i + n]) == list(phrase) for i in range(len(words) - n + 1))


def replace_abbreviations(text: str, abbreviations: Mapping[str, str],
                          emoticon_lexicon: Iterable[str] = ()) -> str:
    """Replace every whole-token occurrence of a map key by its expansion.

    Keys that are not plain words (``:D``, ``^_^``) are matched longest-first
    like emoticons; word keys must match a whole word token.
    """
    if not abbreviations:
        return text
    symbolic = {k for k in abbreviations if not k.isalnum()}
    lexicon = frozenset(emoticon_lexicon) | symbolic
    pieces, last = [], 0
    for start, end, _kind in scan(text, lexicon):
        tok = text[start:end]
        expansion = abbreviations.get(tok)
        if expansion is None:
            expansion = abbreviations.get(tok.lower()) if tok.isascii() else None
        if expansion is None:
            continue
        pieces.append(text[last:start])
        pieces.append(expansion)
        last = end
    pieces.append(text[last:])
    return "".join(pieces)


def translate_english_tokens(text: str, gloss: Mapping[str, str],
                             emoticon_lexicon: Iterable[str] = ()) -> tuple[str, list[str]]:
    """Replace Latin-script word tokens by their Arabic gloss; report the rest."""
    lowered = {k.lower(): v for k, v in gloss.items()}
    unresolved: list[str] = []
    pieces, last = [], 0
    for start, end, kind in scan(text, emoticon_lexicon):
        tok = text[start:end]
        if kind is not TokenKind.WORD or not is_latin_word(tok):
            continue
        arabic = lowered.get(tok.lower())
        if arabic is None:
            unresolved.append(tok)
            continue
        pieces.append(text[last:start])
        pieces.append(arabic)
        last = end
    pieces.append(text[last:])
    return "".join(pieces), unresolved


def annotate_by_rating(rating: int) -> Label:
    if isinstance(rating, bool) or not isinstance(rating, int) or not 1 <= rating <= 10:
        raise ValueError(f"rating must be an integer in 1..10, got {rating!r}")
    if rating > 5:
        return Label.POSITIVE
    if rating < 5:
        return Label.NEGATIVE
    return Label.NEUTRAL


# --- pipeline ----------------------------------------------------------------

@dataclass(frozen=True)
class PipelineConfig:
    """Resources for :func:`run_pipeline`. Empty resources disable their step.

    ``topic_words`` holds one entry per keyword or phrase; with no topic words
    the relatedness filter keeps everything. ``lexicon`` ranks transliteration
    candidates; when ``None`` it is built from the Arabic-script posts that
    reach the transliteration stage.
    """

    topic_words: tuple[str, ...] = ()
    spam_phrases: tuple[str, ...] = ()
    abbreviations: Mapping[str, str] = field(default_factory=dict)
    gloss: Mapping[str, str] = field(default_factory=dict)
    translit_rules: TranslitRules | None = None
    translit_overrides: Mapping[str, str] = field(default_factory=dict)
    lexicon: Mapping[str, int] | None = None
    emoticon_lexicon: frozenset[str] = frozenset()
    variants: VariantTable = DEFAULT_VARIANTS
    latin_threshold: float = 0.5
    min_resolved_fraction: float = 0.5


@dataclass
class FilterReport:
    initial_count: int
    stages: list[tuple[str, int]] = field(default_factory=list)
    dropped: dict[str, str] = field(default_factory=dict)  # post id -> stage
    franco_diagnostics: dict[str, list[FrancoDiagnostic]] = field(default_factory=dict)
    untranslated: dict[str, list[str]] = field(default_factory=dict)

    @property
    def counts(self) -> list[int]:
        return [self.initial_count] + [c for _, c in self.stages]

    def drops(self, stage: str) -> int:
        return sum(1 for s in self.dropped.values() if s == stage)

    def to_dict(self) -> dict:
        return {
            "initial_count": self.initial_count,
            "stages": [{"stage": s, "surviving": c, "dropped": self.drops(s)} for s, c in self.stages],
            "dropped": dict(sorted(self.dropped.items())),
            "franco_diagnostics": {
                pid: [{"word": d.word, "reason": d.reason, "candidates": list(d.candidates)} for d in diags]
                for pid, diags in sorted(self.franco_diagnostics.items())
            },
            "untranslated": dict(sorted(self.untranslated.items())),
        }


def _topic_phrases(config: PipelineConfig) -> list[list[str]]:
    phrases = []
    for entry in config.topic_words:
        words = _normalized_words(tokenize(entry), config.variants)
        if words:
            phrases.append(words)
    return phrases


def run_pipeline(posts: Sequence[RawPost], config: PipelineConfig = PipelineConfig()
                 ) -> tuple[list[Document], FilterReport]:
    """Filter and normalize raw posts into annotated Documents.

    Social posts pass five filters in order (URL/advertising, photo-only,
    mention-only, unrelated, non-Arabic); reviews bypass all five. Survivors
    then get abbreviations expanded and embedded English translated. The
    report counts survivors after each filter and names the stage that
    dropped each post.
    """
    report = FilterReport(initial_count=len(posts))
    lexicon = config.emoticon_lexicon | {k for k in config.abbreviations if not k.isalnum()}
    alive: list[tuple[RawPost, str]] = [(p, p.text) for p in posts]

    def apply(stage, keep):
        nonlocal alive
        survivors = []
        for post, text in alive:
            if post.source is Source.REVIEW:
                survivors.append((post, text))
                continue
            result = keep(post, text)
            if result is None:
                report.dropped[post.id] = stage
            else:
                survivors.append((post, result))
        alive = survivors
        report.stages.append((stage, len(alive)))

    spam = [s.lower() for s in config.spam_phrases]

    def url_stage(post, text):
        if is_url_only(tokenize(text, lexicon)):
            return None
        if any(s in text.lower() for s in spam):
            return None
        return text

    apply(STAGE_URL, url_stage)
    apply(STAGE_PHOTO, lambda post, text: None if post.has_photo_only else text)
    apply(STAGE_MENTION, lambda post, text: None if is_mention_only(text) else text)

    phrases = _topic_phrases(config)

    def topic_stage(post, text):
        if not phrases:
            return text
        words = _normalized_words(tokenize(text, lexicon), config.variants)
        return text if any(_contains_phrase(words, ph) for ph in phrases) else None

    apply(STAGE_TOPIC, topic_stage)

    def is_latin_post(text):
        has_letters = any(c.isalpha() for c in text)
        return has_letters and arabic_script_ratio(text) < config.latin_threshold

    translit_lexicon = config.lexicon
    if translit_lexicon is None:
        arabic_docs = [tokenize(t, lexicon) for _, t in alive if not is_latin_post(t)]
        translit_lexicon = build_frequency_table([arabic_docs])
    transliterator = FrancoTransliterator(
        config.translit_rules or TranslitRules.load(), translit_lexicon,
        config.translit_overrides, config.variants, lexicon)

    def franco_stage(post, text):
        if not is_latin_post(text):
            return text
        latin_words = [t for t in tokenize(text, lexicon) if t.kind is TokenKind.WORD and is_latin_word(t.text)]
        converted, diags = transliterator(text)
        if diags:
            report.franco_diagnostics[post.id] = diags
        resolved = len(latin_words) - len(diags)
        if not latin_words or resolved < config.min_resolved_fraction * len(latin_words):
            return None
        return converted

    apply(STAGE_NON_ARABIC, franco_stage)

    docs = []
    for post, text in alive:
        text = replace_abbreviations(text, config.abbreviations, config.emoticon_lexicon)
        text, unresolved = translate_english_tokens(text, config.gloss, lexicon)
        if unresolved:
            report.untranslated[post.id] = unresolved
        label = post.label
        if label is None and post.rating is not None:
            label = annotate_by_rating(post.rating)
        docs.append(Document(post.id, post.source, post.text, text,
                             tokenize(text, config.emoticon_lexicon), label or Label.UNLABELED))
    log.info("pipeline: %s", " -> ".join(map(str, report.counts)))
    return docs, report


# --- statistics --------------------------------------------------------------

@dataclass(frozen=True)
class LabelStats:
    source: str
    total: int
    counts: dict[str, int]
    percentages: dict[str, float]


_STAT_LABELS = (Label.POSITIVE, Label.NEGATIVE, Label.NEUTRAL, Label.UNLABELED)


def _label_stats(source: str, group: list[Document]) -> LabelStats:
    counts = {lab.value: sum(1 for d in group if d.label is lab) for lab in _STAT_LABELS}
    total = len(group)
    pct = {k: (100.0 * v / total if total else 0.0) for k, v in counts.items()}
    return LabelStats(source, total, counts, pct)


def corpus_stats(docs: Iterable[Document]) -> dict[str, LabelStats]:
    """Per-source label counts and percentages of that source's total,
    plus an ``all`` row over every document."""
    docs = list(docs)
    by_source: dict[str, list[Document]] = {}
    for d in docs:
        by_source.setdefault(d.source.value, []).append(d)
    out = {source: _label_stats(source, by_source[source]) for source in sorted(by_source)}
    out["all"] = _label_stats("all", docs)
    return out


def stats_csv(stats: Mapping[str, LabelStats]) -> str:
    lines = ["source,label,count,percent"]
    for source, st in stats.items():
        for lab in _STAT_LABELS:
            lines.append(f"{source},{lab.value},{st.counts[lab.value]},{st.percentages[lab.value]:.2f}")
    return "\n".join(lines) + "\n"
