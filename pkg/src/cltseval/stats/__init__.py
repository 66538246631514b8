from .ttest import TestResult, welch_t_test, regularized_incomplete_beta, student_t_p_value
from .kappa import quadratic_weighted_kappa
from .iaa import (
    RatingRecord,
    KappaSimResult,
    DIMENSION_CATEGORIES,
    load_ratings,
    iaa_simulation,
    human_eval_summary,
    round_half_away_from_zero,
)
from .compare import ScoreRow, SignificanceEntry, compare_strategies, write_significance_report

__all__ = [
    "TestResult",
    "welch_t_test",
    "regularized_incomplete_beta",
    "student_t_p_value",
    "quadratic_weighted_kappa",
    "RatingRecord",
    "KappaSimResult",
    "DIMENSION_CATEGORIES",
    "load_ratings",
    "iaa_simulation",
    "human_eval_summary",
    "round_half_away_from_zero",
    "ScoreRow",
    "SignificanceEntry",
    "compare_strategies",
    "write_significance_report",
]
