"""Language resources for feature extraction: frequency ranks and
hyphenation patterns, immutable after load and shareable across threads."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources as importlib_resources
from pathlib import Path

from ..errors import MissingResource
from .hyphenation import HyphenationPatterns, load_patterns

_BUNDLED_FREQ = {"en": "freq_en.tsv", "fr": "freq_fr.tsv"}


@dataclass(frozen=True)
class Resources:
    lang: str
    frequency_ranks: dict = field(default_factory=dict)
    patterns: HyphenationPatterns | None = None
    top_k: int = 5000
    long_word_letters: int = 7
    short_sentence_words: int = 10

    def is_infrequent(self, word: str) -> bool:
        rank = self.frequency_ranks.get(word.lower())
        return rank is None or rank > self.top_k


def parse_frequency_list(text: str) -> dict:
    """One `word<TAB>rank` per line, rank ascending."""
    ranks: dict[str, int] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise MissingResource(
                f"frequency list line {line_no}: expected word<TAB>rank")
        word, rank = parts
        try:
            ranks[word.lower()] = int(rank)
        except ValueError:
            raise MissingResource(
                f"frequency list line {line_no}: rank {rank!r} is not an integer")
    return ranks


def load_resources(lang: str, *, frequency_path=None, pattern_path=None,
                   top_k: int = 5000, long_word_letters: int = 7,
                   short_sentence_words: int = 10) -> Resources:
    """Resources for a language, from explicit paths or the bundled data."""
    if frequency_path is not None:
        path = Path(frequency_path)
        if not path.is_file():
            raise MissingResource(f"frequency list not found: {path}")
        ranks = parse_frequency_list(path.read_text(encoding="utf-8"))
    else:
        name = _BUNDLED_FREQ.get(lang)
        if name is None:
            raise MissingResource(f"no bundled frequency list for {lang!r}")
        ref = importlib_resources.files("cltseval").joinpath("data", name)
        try:
            ranks = parse_frequency_list(ref.read_text(encoding="utf-8"))
        except (FileNotFoundError, OSError) as exc:
            raise MissingResource(f"bundled frequency list missing: {exc}") from exc
    patterns = load_patterns(lang, pattern_path)
    return Resources(
        lang=lang,
        frequency_ranks=ranks,
        patterns=patterns,
        top_k=top_k,
        long_word_letters=long_word_letters,
        short_sentence_words=short_sentence_words,
    )
