"""Rule-based Franco-Arab (Arabizi) to Arabic transliteration.

Each Latin word is expanded into every Arabic spelling the rule table allows,
then candidates are ranked by how often they occur in an Arabic lexicon.
Words whose candidates never occur in the lexicon are left untouched and
reported for manual review.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

from .io import ResourceError, load_tsv_rows, resource_path
from .textkit import DEFAULT_VARIANTS, TokenKind, VariantTable, is_latin_word, scan

ELIDE = "-"


@dataclass(frozen=True)
class TranslitRules:
    """Latin sequence -> tuple of Arabic options ('' means the letter may be dropped)."""

    table: Mapping[str, tuple[str, ...]]
    max_candidates: int = 5000

    @property
    def max_key(self) -> int:
        return max(map(len, self.table), default=1)

    @classmethod
    def load(cls, path: str | Path | None = None) -> "TranslitRules":
        path = path or resource_path("translit_rules.tsv")
        table: dict[str, tuple[str, ...]] = {}
        for lineno, cols in load_tsv_rows(path):
            if len(cols) != 2 or not cols[0].strip() or not cols[1].strip():
                raise ResourceError(f"{path}:{lineno}: expected latin<TAB>options")
            key = cols[0].strip().lower()
            if key in table:
                raise ResourceError(f"{path}:{lineno}: duplicate rule {key!r}")
            table[key] = tuple("" if o == ELIDE else o for o in cols[1].split())
        return cls(table)


@dataclass(frozen=True)
class FrancoDiagnostic:
    word: str
    reason: str  # "no_candidate" | "unattested"
    candidates: tuple[str, ...] = ()


def _lexicon_index(counts: Mapping[str, int], variants: VariantTable) -> dict[str, tuple[int, str]]:
    """normalized spelling -> (summed count, most frequent surface form)."""
    totals: dict[str, int] = {}
    best: dict[str, tuple[int, str]] = {}
    for word, c in counts.items():
        key = variants.normalize(word)
        totals[key] = totals.get(key, 0) + c
        if key not in best or (-c, word) < (-best[key][0], best[key][1]):
            best[key] = (c, word)
    return {k: (totals[k], best[k][1]) for k in totals}


def candidates(word: str, rules: TranslitRules) -> set[str]:
    """Every Arabic spelling of ``word`` the rule table can produce."""
    word = word.lower()
    n = len(word)
    if n == 0:
        return set()
    reach: list[set[str]] = [set() for _ in range(n + 1)]
    reach[0].add("")
    max_key = rules.max_key
    for i in range(n):
        if not reach[i]:
            continue
        partial = sorted(reach[i])[: rules.max_candidates]
        for length in range(1, min(max_key, n - i) + 1):
            key = word[i : i + length]
            options = rules.table.get(key)
            if options is None:
                continue
            _extend(reach, i + length, partial, options, at_start=i == 0)
            # doubled consonant ("ll", "77") collapses to one letter
            if length == 1 and i + 1 < n and word[i + 1] == key and "" not in options:
                _extend(reach, i + 2, partial, options, at_start=i == 0)
    return {c for c in reach[n] if c}


def _extend(reach, end, partial, options, at_start):
    for opt in options:
        if not opt and at_start:
            continue
        reach[end].update(p + opt for p in partial)


def rank_candidates(cands: set[str], lexicon: Mapping[str, int],
                    variants: VariantTable = DEFAULT_VARIANTS) -> list[tuple[str, int]]:
    """Candidates with lexicon counts, best first: count desc, then shortest, then lexicographic.

    Lookup ignores letter-variant differences; an attested candidate is
    reported in its most frequent lexicon spelling.
    """
    return _rank(cands, _lexicon_index(lexicon, variants), variants)


def _rank(cands, index, variants):
    scored = set()
    for c in cands:
        count, surface = index.get(variants.normalize(c), (0, c))
        scored.add((surface if count else c, count))
    return sorted(scored, key=lambda sc: (-sc[1], len(sc[0]), sc[0]))


class FrancoTransliterator:
    def __init__(self, rules: TranslitRules, lexicon: Mapping[str, int],
                 overrides: Mapping[str, str] | None = None,
                 variants: VariantTable = DEFAULT_VARIANTS, emoticon_lexicon=()):
        self.rules = rules
        self.variants = variants
        self.overrides = {k.lower(): v for k, v in (overrides or {}).items()}
        self.emoticon_lexicon = frozenset(emoticon_lexicon)
        self._index = _lexicon_index(lexicon, variants)

    def resolve(self, word: str) -> tuple[str | None, FrancoDiagnostic | None]:
        if word.lower() in self.overrides:
            return self.overrides[word.lower()], None
        cands = candidates(word, self.rules)
        if not cands:
            return None, FrancoDiagnostic(word, "no_candidate")
        ranked = _rank(cands, self._index, self.variants)
        best, count = ranked[0]
        if count == 0:
            return None, FrancoDiagnostic(word, "unattested", tuple(c for c, _ in ranked[:5]))
        return best, None

    def __call__(self, text: str) -> tuple[str, list[FrancoDiagnostic]]:
        diagnostics: list[FrancoDiagnostic] = []
        pieces: list[str] = []
        last = 0
        for start, end, kind in scan(text, self.emoticon_lexicon):
            word = text[start:end]
            if kind is not TokenKind.WORD or not is_latin_word(word):
                continue
            replacement, diag = self.resolve(word)
            if diag is not None:
                diagnostics.append(diag)
                continue
            pieces.append(text[last:start])
            pieces.append(replacement)
            last = end
        pieces.append(text[last:])
        return "".join(pieces), diagnostics


def transliterate_franco(
    text: str,
    rules: TranslitRules,
    lexicon: Mapping[str, int],
    overrides: Mapping[str, str] | None = None,
    variants: VariantTable = DEFAULT_VARIANTS,
    emoticon_lexicon=(),
) -> tuple[str, list[FrancoDiagnostic]]:
    """Rewrite the Latin-script words of ``text`` in Arabic letters.

    Returns the rewritten text and one diagnostic per word left unresolved.
    A word resolves through ``overrides`` or through a candidate attested in
    ``lexicon``; everything else keeps its Latin spelling.
    """
    return FrancoTransliterator(rules, lexicon, overrides, variants, emoticon_lexicon)(text)
