"""Welch's unequal-variance t-test with an in-house t distribution.

The two-sided p-value comes from the identity
p = I_x(df/2, 1/2) with x = df / (df + t^2),
where I is the regularized incomplete beta function, evaluated by the
classic continued-fraction expansion (Lentz's method). Feature ratios are
frequently constant on small corpora, so the degenerate cases are defined
rather than fatal: both samples constant and equal gives p = 1, constant
but different gives p = 0, each flagged on the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import InsufficientData

_MAX_ITER = 300
_EPS = 3e-16
_FPMIN = 1e-300


@dataclass
class TestResult:
    group_a: str
    group_b: str
    metric_name: str
    t_stat: float
    df: float
    p_value: float
    significant: bool
    degenerate: bool = False


def _betacf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_p_value(t: float, df: float) -> float:
    """Two-sided p for a t statistic under df degrees of freedom."""
    if df <= 0:
        raise InsufficientData("degrees of freedom must be positive")
    if math.isinf(t):
        return 0.0
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))


def _mean_var(sample) -> tuple[float, float]:
    n = len(sample)
    mean = sum(sample) / n
    var = sum((x - mean) ** 2 for x in sample) / (n - 1)
    return mean, var


def welch_t_test(sample_a, sample_b, *, alpha: float = 0.05,
                 group_a: str = "a", group_b: str = "b",
                 metric_name: str = "") -> TestResult:
    """Welch's t-test with Welch-Satterthwaite degrees of freedom."""
    if len(sample_a) < 2 or len(sample_b) < 2:
        raise InsufficientData("each sample needs at least 2 values")
    mean_a, var_a = _mean_var(sample_a)
    mean_b, var_b = _mean_var(sample_b)
    na, nb = len(sample_a), len(sample_b)
    if var_a == 0.0 and var_b == 0.0:
        if mean_a == mean_b:
            return TestResult(group_a, group_b, metric_name,
                              0.0, float(na + nb - 2), 1.0,
                              significant=False, degenerate=True)
        t = math.inf if mean_a > mean_b else -math.inf
        return TestResult(group_a, group_b, metric_name,
                          t, float(na + nb - 2), 0.0,
                          significant=0.0 < alpha, degenerate=True)
    se2_a = var_a / na
    se2_b = var_b / nb
    t = (mean_a - mean_b) / math.sqrt(se2_a + se2_b)
    df = (se2_a + se2_b) ** 2 / (
        (se2_a ** 2) / (na - 1) + (se2_b ** 2) / (nb - 1))
    p = student_t_p_value(t, df)
    return TestResult(group_a, group_b, metric_name, t, df, p,
                      significant=p < alpha)
