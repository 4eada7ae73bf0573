"""Stopword list generation: frequency counting, validity checks, morphological expansion."""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

from .io import ResourceError, load_tsv_rows, load_word_lines, resource_path
from .textkit import DEFAULT_VARIANTS, Token, TokenKind, VariantTable, hashtag_parts, letter_variants

DEFAULT_K = 200
SINGLE_PREFIXES = ("ال", "و", "ب", "ف", "ل")
COMPOSED_PREFIXES = ("وال", "بال", "فال", "لل")
PRONOUN_SUFFIXES = ("ي", "نا", "هم", "ه")


class StopwordFileError(ResourceError):
    pass


class FrequencyTable(Mapping):
    """word -> occurrence count. Counts are positive; tables add like multisets."""

    def __init__(self, counts: Mapping[str, int] | None = None):
        counts = counts or {}
        if any(c < 0 for c in counts.values()):
            raise ValueError("negative count")
        self._counts = Counter({w: c for w, c in counts.items() if c > 0})

    def __getitem__(self, word):
        return self._counts[word]

    def __iter__(self):
        return iter(self._counts)

    def __len__(self):
        return len(self._counts)

    def __add__(self, other: "FrequencyTable") -> "FrequencyTable":
        return FrequencyTable(self._counts + other._counts)

    def __repr__(self):
        return f"FrequencyTable({dict(self._counts)!r})"

    @property
    def total_tokens(self) -> int:
        return sum(self._counts.values())

    def sorted_items(self) -> list[tuple[str, int]]:
        return sorted(self._counts.items(), key=lambda wc: (-wc[1], wc[0]))


def _countable_words(tokens: Iterable[Token]) -> Iterable[str]:
    for tok in tokens:
        if tok.kind is TokenKind.WORD:
            yield tok.text
        elif tok.kind is TokenKind.HASHTAG:
            yield from hashtag_parts(tok)


def build_frequency_table(corpora) -> FrequencyTable:
    """Count word tokens (and hashtag word parts) over all corpora combined.

    ``corpora`` is an iterable of document collections; a document is anything
    with a ``tokens`` attribute or a plain token sequence.
    """
    counts: Counter = Counter()
    for corpus in corpora:
        for doc in corpus:
            counts.update(_countable_words(getattr(doc, "tokens", doc)))
    return FrequencyTable(counts)


def top_k(table: Mapping[str, int], k: int = DEFAULT_K) -> list[tuple[str, int]]:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    items = table.sorted_items() if isinstance(table, FrequencyTable) else sorted(
        table.items(), key=lambda wc: (-wc[1], wc[0]))
    return items[:k]


class Dialect(str, enum.Enum):
    MSA = "MSA"
    EGYPTIAN = "egyptian"
    OTHER = "other"


class Verdict(str, enum.Enum):
    VALID = "valid"
    CONTENT_WORD = "content_word"
    NEEDS_REVIEW = "needs_review"


@dataclass(frozen=True)
class CandidateWord:
    word: str
    count: int = 0
    dialect: Dialect = Dialect.EGYPTIAN
    msa_correspondent: str | None = None
    english_gloss: str | None = None
    suffixable: bool = False
    verdict_override: Verdict | None = None


@dataclass(frozen=True)
class Validity:
    verdict: Verdict
    evidence: tuple[str, ...] = ()


def classify_validity(
    word: CandidateWord,
    msa_lists: Iterable[str] | set,
    english_stoplist: Iterable[str] | set,
    content_words: Iterable[str] = frozenset(),
) -> Validity:
    """Decide whether a frequent word may serve as a stopword.

    A manual content-word mark wins outright. Otherwise the word is valid when
    it appears in an MSA list, when its MSA correspondent does, or when its
    English meaning is an English stopword; every condition that holds is
    returned as evidence. Missing annotations never count as a match.
    """
    msa = msa_lists if isinstance(msa_lists, (set, frozenset)) else set(msa_lists)
    english = english_stoplist if isinstance(english_stoplist, (set, frozenset)) else set(english_stoplist)
    if word.verdict_override is Verdict.CONTENT_WORD or word.word in set(content_words):
        return Validity(Verdict.CONTENT_WORD, ("content_override",))
    if word.verdict_override is Verdict.NEEDS_REVIEW:
        return Validity(Verdict.NEEDS_REVIEW, ("review_override",))

    evidence = []
    if word.word in msa:
        evidence.append("msa_list")
    gloss = (word.english_gloss or "").strip().lower() or None
    has_correspondent = bool(word.msa_correspondent)
    if gloss and gloss in english and (word.dialect is Dialect.MSA or not has_correspondent):
        evidence.append("english_gloss")
    if has_correspondent and word.msa_correspondent in msa:
        evidence.append("msa_correspondent")
    if gloss and gloss in english and word.dialect is not Dialect.MSA and has_correspondent:
        evidence.append("correspondent_gloss")
    if evidence:
        return Validity(Verdict.VALID, tuple(evidence))
    return Validity(Verdict.NEEDS_REVIEW)


@dataclass(frozen=True)
class MorphRules:
    prefixes: tuple[str, ...] = SINGLE_PREFIXES + COMPOSED_PREFIXES
    pronoun_suffixes: tuple[str, ...] = PRONOUN_SUFFIXES
    variant_table: VariantTable = DEFAULT_VARIANTS
    exclusions: frozenset[str] = frozenset()

    def __post_init__(self):
        for affix in self.prefixes + self.pronoun_suffixes:
            if not affix or not all("؀" <= c <= "ۿ" for c in affix):
                raise ValueError(f"affix must be non-empty Arabic letters: {affix!r}")

    @classmethod
    def load(cls, path: str | Path | None = None) -> "MorphRules":
        """Read ``prefix``/``suffix``/``exclude``/``variants`` rows (kind TAB value).

        A ``variants`` row lists one letter group, canonical letter first.
        Variant rows replace the default groups when present.
        """
        path = path or resource_path("morph_rules.tsv")
        prefixes, suffixes, exclusions, groups = [], [], set(), []
        for lineno, cols in load_tsv_rows(path):
            if len(cols) != 2:
                raise ResourceError(f"{path}:{lineno}: expected kind<TAB>value")
            kind, value = cols[0].strip(), cols[1].strip()
            if kind == "prefix":
                prefixes.append(value)
            elif kind == "suffix":
                suffixes.append(value)
            elif kind == "exclude":
                exclusions.add(value)
            elif kind == "variants":
                groups.append(tuple(value.split()))
            else:
                raise ResourceError(f"{path}:{lineno}: unknown rule kind {kind!r}")
        table = VariantTable(tuple(groups)) if groups else DEFAULT_VARIANTS
        return cls(tuple(prefixes), tuple(suffixes), table, frozenset(exclusions))


def expand_morphology(word: str, rules: MorphRules = MorphRules(), suffixable: bool = False) -> set[str]:
    """Surface forms of ``word``: optional pronoun suffix, letter variants, then prefixes.

    Variants are taken over the stem (and suffix); prefixes are attached
    unchanged, so stripping a prefix always leaves a variant of the stem.
    Manual exclusions are removed last, but the input word itself is kept.
    """
    if not word:
        raise ValueError("word must be non-empty")
    bases = [word]
    if suffixable:
        bases += [word + s for s in rules.pronoun_suffixes]
    stems: set[str] = set()
    for base in bases:
        stems |= letter_variants(base, rules.variant_table)
    forms = set(stems)
    for prefix in rules.prefixes:
        forms.update(prefix + s for s in stems)
    forms -= rules.exclusions - {word}
    return forms


class ListKind(str, enum.Enum):
    MSA_GENERAL = "msa_general"
    CORPUS_BASED = "corpus_based"
    EGYPTIAN_GENERAL = "egyptian_general"
    COMBINED = "combined"


@dataclass(frozen=True)
class StopwordList:
    name: str
    kind: ListKind
    words: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "words", frozenset(self.words))
        bad = [w for w in self.words if not w or any(c.isspace() for c in w)]
        if bad:
            raise ValueError(f"invalid stopwords: {bad[:5]!r}")

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.words

    def dumps(self) -> str:
        header = f"# {self.name} ({self.kind.value}), {len(self.words)} words\n"
        return header + "".join(w + "\n" for w in sorted(self.words))

    @classmethod
    def load(cls, path: str | Path, kind: ListKind = ListKind.MSA_GENERAL, name: str | None = None) -> "StopwordList":
        seen: dict[str, int] = {}
        dupes = []
        for lineno, word in load_word_lines(path):
            if word in seen:
                dupes.append(f"{path}:{lineno}: duplicate {word!r} (first on line {seen[word]})")
            else:
                seen[word] = lineno
        if dupes:
            raise StopwordFileError("\n".join(dupes))
        return cls(name or Path(path).stem, kind, frozenset(seen))


def generate_corpus_based(table: FrequencyTable, rules: MorphRules = MorphRules(), k: int = DEFAULT_K,
                          name: str = "corpus_based") -> StopwordList:
    """Most frequent ``k`` words, regardless of meaning, with their surface forms."""
    if not len(table):
        raise ValueError("frequency table is empty")
    words: set[str] = set()
    for word, _ in top_k(table, k):
        words |= expand_morphology(word, rules, suffixable=False)
    return StopwordList(name, ListKind.CORPUS_BASED, frozenset(words))


@dataclass
class GenerationReport:
    stems: list[str] = field(default_factory=list)
    content_words: list[str] = field(default_factory=list)
    needs_review: list[str] = field(default_factory=list)
    evidence: dict[str, tuple[str, ...]] = field(default_factory=dict)


def generate_egyptian_general(
    table: FrequencyTable,
    candidates: Iterable[CandidateWord],
    rules: MorphRules = MorphRules(),
    k: int = DEFAULT_K,
    msa_lists: Iterable[str] = frozenset(),
    english_stoplist: Iterable[str] = frozenset(),
    content_words: Iterable[str] = frozenset(),
    name: str = "egyptian_general",
) -> tuple[StopwordList, GenerationReport]:
    """General dialect list: valid words among the top ``k`` plus every valid
    Egyptian word found in the corpora, expanded morphologically.

    Words with no annotation, or whose validity cannot be established, are
    excluded and listed in the report's ``needs_review``.
    """
    msa = frozenset(msa_lists)
    english = frozenset(w.lower() for w in english_stoplist)
    content = frozenset(content_words)
    annotated = {c.word: c for c in candidates}
    pool = [w for w, _ in top_k(table, k)] if len(table) else []
    pooled = set(pool)
    for word in sorted(annotated):
        c = annotated[word]
        if c.dialect is Dialect.EGYPTIAN and table.get(word, 0) > 0 and word not in pooled:
            pool.append(word)
            pooled.add(word)

    report = GenerationReport()
    words: set[str] = set()
    for word in pool:
        cand = annotated.get(word)
        if cand is None:
            if word in content:
                report.content_words.append(word)
            else:
                report.needs_review.append(word)
            continue
        validity = classify_validity(cand, msa, english, content)
        if validity.verdict is Verdict.VALID:
            report.stems.append(word)
            report.evidence[word] = validity.evidence
            words |= expand_morphology(word, rules, suffixable=cand.suffixable)
        elif validity.verdict is Verdict.CONTENT_WORD:
            report.content_words.append(word)
        else:
            report.needs_review.append(word)
    return StopwordList(name, ListKind.EGYPTIAN_GENERAL, frozenset(words)), report


def combine_lists(a: StopwordList, b: StopwordList, name: str | None = None) -> StopwordList:
    return StopwordList(name or f"{a.name}+{b.name}", ListKind.COMBINED, a.words | b.words)


def remove_stopwords(tokens, stoplist: StopwordList | Iterable[str]):
    """Drop tokens whose exact surface text is in the list. Accepts Tokens or strings."""
    words = stoplist.words if isinstance(stoplist, StopwordList) else frozenset(stoplist)
    return [t for t in tokens if getattr(t, "text", t) not in words]


def load_candidates(path: str | Path, table: Mapping[str, int] | None = None) -> list[CandidateWord]:
    """Read the annotation TSV: word, dialect, msa_correspondent, english_gloss,
    suffixable (0/1), verdict_override. Trailing empty columns may be omitted.
    """
    out: list[CandidateWord] = []
    seen = set()
    for lineno, cols in load_tsv_rows(path):
        cols = [c.strip() for c in cols] + [""] * (6 - len(cols))
        if len(cols) > 6 or not cols[0]:
            raise ResourceError(f"{path}:{lineno}: expected 6 tab-separated columns")
        word, dialect, corr, gloss, suffixable, override = cols
        if word in seen:
            raise ResourceError(f"{path}:{lineno}: duplicate candidate {word!r}")
        seen.add(word)
        try:
            dialect_v = Dialect(dialect or "egyptian")
        except ValueError:
            raise ResourceError(f"{path}:{lineno}: unknown dialect {dialect!r}") from None
        if suffixable not in ("", "0", "1"):
            raise ResourceError(f"{path}:{lineno}: suffixable must be 0 or 1")
        if override and override not in (Verdict.CONTENT_WORD.value, Verdict.NEEDS_REVIEW.value):
            # "valid" cannot be forced: validity needs a correspondent or gloss as evidence
            raise ResourceError(f"{path}:{lineno}: verdict_override must be content_word or needs_review")
        out.append(CandidateWord(
            word=word,
            count=(table or {}).get(word, 0),
            dialect=dialect_v,
            msa_correspondent=corr or None,
            english_gloss=gloss or None,
            suffixable=suffixable == "1",
            verdict_override=Verdict(override) if override else None,
        ))
    return out
