from .conllu import AnnotatedToken, AnnotatedDocument, parse_conllu
from .hyphenation import HyphenationPatterns, syllable_count, load_patterns
from .readability import flesch_reading_ease, flesch_kincaid_grade
from .extract import (
    FEATURE_NAMES,
    PROPORTION_FEATURES,
    tree_depth,
    entity_distance_features,
    extract_features,
)
from .resources import Resources, load_resources

__all__ = [
    "AnnotatedToken",
    "AnnotatedDocument",
    "parse_conllu",
    "HyphenationPatterns",
    "syllable_count",
    "load_patterns",
    "flesch_reading_ease",
    "flesch_kincaid_grade",
    "FEATURE_NAMES",
    "PROPORTION_FEATURES",
    "tree_depth",
    "entity_distance_features",
    "extract_features",
    "Resources",
    "load_resources",
]
