"""Arabic-aware text primitives: tokenization, letter variants, script detection."""

from __future__ import annotations

import enum
import itertools
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)

_ARABIC_RANGES = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)
_TATWEEL = "ـ"


class TokenKind(str, enum.Enum):
    WORD = "word"
    EMOTICON = "emoticon"
    PUNCTUATION = "punctuation"
    NUMBER = "number"
    MENTION = "mention"
    URL = "url"
    HASHTAG = "hashtag"


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind

    def __post_init__(self):
        if not self.text or any(c.isspace() for c in self.text):
            raise ValueError(f"invalid token text {self.text!r}")


@dataclass(frozen=True)
class VariantTable:
    """Letter equivalence classes. Each group lists its canonical letter first."""

    groups: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        seen: set[str] = set()
        for group in self.groups:
            if not group:
                raise ValueError("empty variant group")
            overlap = seen.intersection(group)
            if overlap:
                raise ValueError(f"variant groups overlap on {sorted(overlap)}")
            seen.update(group)

    @property
    def canonical(self) -> dict[str, str]:
        return {letter: group[0] for group in self.groups for letter in group}

    def group_of(self, letter: str) -> tuple[str, ...] | None:
        for group in self.groups:
            if letter in group:
                return group
        return None

    def normalize(self, word: str) -> str:
        canon = self.canonical
        return "".join(canon.get(c, c) for c in word)


DEFAULT_VARIANTS = VariantTable(
    groups=(
        ("ا", "آ", "أ", "إ"),
        ("ي", "ى"),
        ("ة", "ه"),
    )
)


def is_arabic_letter(ch: str) -> bool:
    if ch == _TATWEEL or not ch.isalpha():
        return False
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _ARABIC_RANGES)


def is_latin_letter(ch: str) -> bool:
    return ch.isalpha() and unicodedata.name(ch, "").startswith("LATIN")


def _is_word_char(ch: str) -> bool:
    # combining marks (Arabic diacritics) stay inside their word
    return ch.isalnum() or unicodedata.category(ch) == "Mn"


def load_lexicon(path: str | Path) -> frozenset[str]:
    """Read an emoticon lexicon: one entry per line, ``#`` starts a comment line."""
    entries = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        entry = line.strip()
        if entry and not entry.startswith("#"):
            entries.append(entry)
    return frozenset(entries)


def _emoticon_at(text: str, i: int, entry: str) -> bool:
    if any(c.isspace() for c in entry) or not text.startswith(entry, i):
        return False
    end = i + len(entry)
    # an entry ending in a letter ("XD") must not cut a longer word in two
    if _is_word_char(entry[-1]) and end < len(text) and _is_word_char(text[end]):
        return False
    return True


def scan(text: str, emoticon_lexicon: Iterable[str] = ()) -> Iterator[tuple[int, int, TokenKind]]:
    """Yield ``(start, end, kind)`` spans for every token of ``text``."""
    lexicon = sorted({e for e in emoticon_lexicon if e}, key=len, reverse=True)
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = URL_RE.match(text, i)
        if m:
            yield i, m.end(), TokenKind.URL
            i = m.end()
            continue
        emo = next((e for e in lexicon if _emoticon_at(text, i, e)), None)
        if emo is not None:
            yield i, i + len(emo), TokenKind.EMOTICON
            i += len(emo)
            continue
        if ch in "@#" and i + 1 < n and text[i + 1].isalnum():
            j = i + 1
            allow_underscore = ch == "#"
            while j < n and (_is_word_char(text[j]) or (allow_underscore and text[j] == "_")):
                j += 1
            yield i, j, TokenKind.MENTION if ch == "@" else TokenKind.HASHTAG
            i = j
            continue
        if ch.isalnum():
            j = i
            while j < n and _is_word_char(text[j]):
                j += 1
            run = text[i:j]
            kind = TokenKind.NUMBER if all(c.isdigit() or unicodedata.category(c) == "Mn" for c in run) else TokenKind.WORD
            yield i, j, kind
            i = j
            continue
        yield i, i + 1, TokenKind.PUNCTUATION
        i += 1


def tokenize(text: str, emoticon_lexicon: Iterable[str] = ()) -> list[Token]:
    """Split text into typed tokens.

    Emoticons from the lexicon are matched longest-first before any
    punctuation splitting. Words are maximal runs of letters and digits;
    a run made only of digits is a number.
    """
    return [Token(text[s:e], kind) for s, e, kind in scan(text, emoticon_lexicon)]


def hashtag_parts(token: Token) -> list[str]:
    """Word parts of a hashtag: ``#الفيل_الأزرق`` -> ``['الفيل', 'الأزرق']``."""
    if token.kind is not TokenKind.HASHTAG:
        return []
    return [p for p in token.text[1:].split("_") if p]


def letter_variants(word: str, table: VariantTable = DEFAULT_VARIANTS) -> set[str]:
    """All spellings of ``word`` reachable by swapping letters within a variant group."""
    if not word:
        raise ValueError("word must be non-empty")
    choices = [table.group_of(c) or (c,) for c in word]
    return {"".join(p) for p in itertools.product(*choices)}


def arabic_script_ratio(text: str) -> float:
    arabic = latin = 0
    for ch in text:
        if is_arabic_letter(ch):
            arabic += 1
        elif is_latin_letter(ch):
            latin += 1
    total = arabic + latin
    return arabic / total if total else 0.0


def is_latin_word(text: str) -> bool:
    """True for word text written in Latin script (digits allowed, e.g. ``de7k``)."""
    return any(is_latin_letter(c) for c in text) and not any(is_arabic_letter(c) for c in text)
