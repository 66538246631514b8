"""Syllable counting through TeX-style hyphenation patterns.

Implements Liang's pattern-matching algorithm: patterns interleave letters
with digits ("a1b", ".st2a", "1ble."), "." anchors a word boundary, and for
every inter-letter position the maximum digit over all matching patterns
decides whether a break is allowed (odd) or suppressed (even). Syllables are
counted as pieces between breaks, floored at one.

The bundled pattern files (data/hyphen_en.pat, data/hyphen_fr.pat) are
generated for syllable counting rather than typographic line breaking: they
mark one break per vowel-group transition with suppressions for silent
endings, so counting uses hyphenation minima of 1/1. Drop-in replacement
with other pattern files is a config concern, not a code change.
"""

from __future__ import annotations

from importlib import resources as importlib_resources
from pathlib import Path

from ..errors import MissingPatternFile


class HyphenationPatterns:
    def __init__(self, patterns, left_min: int = 1, right_min: int = 1):
        self.left_min = left_min
        self.right_min = right_min
        self._table: dict[str, list[tuple[int, int]]] = {}
        self._max_len = 1
        for pattern in patterns:
            pattern = pattern.strip()
            if not pattern or pattern.startswith(("%", "#")):
                continue
            letters = []
            points = []  # (letter_offset, digit)
            for ch in pattern:
                if ch.isdigit():
                    points.append((len(letters), int(ch)))
                else:
                    letters.append(ch)
            key = "".join(letters)
            self._table.setdefault(key, []).extend(points)
            self._max_len = max(self._max_len, len(key))

    @classmethod
    def from_file(cls, path, **kwargs) -> "HyphenationPatterns":
        path = Path(path)
        if not path.is_file():
            raise MissingPatternFile(f"hyphenation pattern file not found: {path}")
        return cls(path.read_text(encoding="utf-8").splitlines(), **kwargs)

    def break_points(self, word: str) -> list[int]:
        """Positions i (1..len-1) where word[:i] | word[i:] may break."""
        word = word.lower()
        marked = f".{word}."
        values = [0] * (len(marked) + 1)
        for start in range(len(marked)):
            limit = min(len(marked), start + self._max_len)
            for end in range(start + 1, limit + 1):
                for offset, digit in self._table.get(marked[start:end], ()):
                    position = start + offset
                    if digit > values[position]:
                        values[position] = digit
        breaks = []
        for i in range(1, len(word)):
            if i < self.left_min or i > len(word) - self.right_min:
                continue
            # letter i of the word sits at index i+1 of the marked string
            if values[i + 1] % 2 == 1:
                breaks.append(i)
        return breaks

    def piece_count(self, word: str) -> int:
        if not word:
            return 0
        return len(self.break_points(word)) + 1


_BUNDLED = {"en": "hyphen_en.pat", "fr": "hyphen_fr.pat"}
_cache: dict[str, HyphenationPatterns] = {}


def load_patterns(lang: str, path=None) -> HyphenationPatterns:
    """Patterns for a language: an explicit file, or the bundled defaults."""
    if path is not None:
        return HyphenationPatterns.from_file(path)
    if lang not in _BUNDLED:
        raise MissingPatternFile(f"no bundled hyphenation patterns for {lang!r}")
    if lang not in _cache:
        ref = importlib_resources.files("cltseval").joinpath("data", _BUNDLED[lang])
        try:
            text = ref.read_text(encoding="utf-8")
        except (FileNotFoundError, OSError) as exc:
            raise MissingPatternFile(
                f"bundled pattern file missing for {lang!r}: {exc}") from exc
        _cache[lang] = HyphenationPatterns(text.splitlines())
    return _cache[lang]


def syllable_count(word: str, lang: str = "en",
                   patterns: HyphenationPatterns | None = None) -> int:
    """Syllables in one word, >= 1. Non-letters are stripped first."""
    letters = "".join(ch for ch in word.lower() if ch.isalpha())
    if not letters:
        raise ValueError(f"no letters in word {word!r}")
    if patterns is None:
        patterns = load_patterns(lang)
    return max(1, patterns.piece_count(letters))
