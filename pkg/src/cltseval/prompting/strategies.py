"""The five prompting strategies and their canonical templates.

Template wording is load-bearing: downstream comparisons assume every run
used exactly these strings, so they are frozen here and covered by
byte-equality tests. The payload is appended directly after the trailing
colon-space; decomposition second steps receive only the first step's
trimmed output.
"""

from enum import Enum

from ..errors import EmptySource, UnsupportedLanguage

LANGUAGE_NAMES = {"en": "English", "fr": "French"}

DEFAULT_SYSTEM_PROMPT = (
    "You are a text-to-text model. Your sole purpose is to provide the final "
    "output of a requested task. Do not include any interim steps, "
    "intermediate results, or conversational filler. Your response must "
    "begin directly with the final, complete answer."
)


class Strategy(str, Enum):
    DIRECT = "direct"
    COMP_TS = "comp_ts"        # translate then simplify, one prompt
    COMP_ST = "comp_st"        # simplify then translate, one prompt
    DECOMP_TS = "decomp_ts"    # translate then simplify, two prompts
    DECOMP_ST = "decomp_st"    # simplify then translate, two prompts

    @property
    def n_calls(self) -> int:
        return 2 if self in (Strategy.DECOMP_TS, Strategy.DECOMP_ST) else 1

    @property
    def is_decomposition(self) -> bool:
        return self.n_calls == 2


_TEMPLATES = {
    Strategy.DIRECT: (
        "Please simplify the following text in {language}: ",
    ),
    Strategy.COMP_TS: (
        "Please first translate the following text to {language} and then "
        "simplify the translated text in {language}: ",
    ),
    Strategy.COMP_ST: (
        "Please first simplify the following text and then translate the "
        "simplification to {language}: ",
    ),
    Strategy.DECOMP_TS: (
        "Please translate the following text to {language}: ",
        "Please simplify the following text in {language}: ",
    ),
    Strategy.DECOMP_ST: (
        "Please simplify the following text: ",
        "Please translate the following text to {language}: ",
    ),
}


def canonical_templates(strategy: Strategy, target_lang: str) -> tuple[str, ...]:
    """The exact template strings for a strategy and target language."""
    if target_lang not in LANGUAGE_NAMES:
        raise UnsupportedLanguage(f"unsupported target language: {target_lang!r}")
    language = LANGUAGE_NAMES[target_lang]
    return tuple(t.format(language=language) for t in _TEMPLATES[Strategy(strategy)])


def build_prompts(strategy: Strategy, source: str, target_lang: str) -> list[str]:
    """User prompts for one item, in call order.

    The first prompt carries the source text; for decomposition strategies
    the second entry is the bare step-2 template, completed by the runner
    with the trimmed step-1 output.
    """
    if not source or not source.strip():
        raise EmptySource("cannot build prompts for an empty source text")
    templates = canonical_templates(strategy, target_lang)
    prompts = [templates[0] + source]
    prompts.extend(templates[1:])
    return prompts
