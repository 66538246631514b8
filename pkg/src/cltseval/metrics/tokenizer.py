"""Metric-side tokenization.

This tokenizer feeds BLEU/SARI only. Feature extraction works on external
CoNLL-U annotations and must never go through this module.
"""

import re

# \w minus underscore, unicode-aware
_WORD = r"[^\W_]+"

_EN_TOKEN = re.compile(rf"{_WORD}(?:'{_WORD})*|\S", re.UNICODE)
# French clitics keep their apostrophe and split from the host word:
# "l'homme" -> "l'", "homme"
_FR_TOKEN = re.compile(rf"{_WORD}'|{_WORD}|\S", re.UNICODE)


def tokenize_for_metrics(text: str, lang: str = "en") -> list[str]:
    """Lowercase and split text into metric tokens.

    Punctuation becomes standalone tokens. English keeps contractions whole
    ("don't"); French splits apostrophe clitics after the apostrophe.
    """
    text = text.replace("’", "'").lower()
    pattern = _FR_TOKEN if lang == "fr" else _EN_TOKEN
    return pattern.findall(text)
