"""Analysis layer: correlations, paired tests, effect sizes.

Everything here is dependency-free on purpose: the t-distribution CDF
is evaluated through the regularized incomplete beta function
(continued fraction, relative tolerance 1e-12) and the Kendall p-value
through the tie-corrected normal approximation with continuity
correction.  Sample sizes in this problem domain are tiny (a handful
of languages), so O(n^2) pair counting is never a concern.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import DataError

# ---------------------------------------------------------------------------
# numerics


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 500):
        m2 = 2 * m
        numerator = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + numerator * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + numerator / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        numerator = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + numerator * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + numerator / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        step = d * c
        h *= step
        if abs(step - 1.0) < 1e-14:
            return h
    raise ArithmeticError("incomplete beta did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x outside [0, 1]: {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # use the branch where the continued fraction converges fastest
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def student_t_two_sided_p(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with df degrees of freedom."""
    if df <= 0:
        raise ValueError(f"degrees of freedom must be positive: {df}")
    if math.isinf(t):
        return 0.0
    p = regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))
    return min(max(p, 0.0), 1.0)


def normal_two_sided_p(z: float) -> float:
    """P(|Z| >= |z|) for a standard normal."""
    return math.erfc(abs(z) / math.sqrt(2.0))


# ---------------------------------------------------------------------------
# samples


@dataclass(frozen=True)
class PairedSamples:
    """Two aligned score vectors, e.g. one value per language."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise DataError(f"sample sizes differ: {len(self.a)} vs {len(self.b)}")
        if len(self.a) < 2:
            raise DataError("paired samples need at least 2 observations")
        if self.labels is not None and len(self.labels) != len(self.a):
            raise DataError("labels misaligned with values")
        for value in (*self.a, *self.b):
            if not math.isfinite(value):
                raise DataError(f"non-finite value in samples: {value}")

    @property
    def differences(self) -> list[float]:
        return [x - y for x, y in zip(self.a, self.b)]


@dataclass(frozen=True)
class CorrelationResult:
    statistic: float
    p_value: float
    method: str
    n: int


@dataclass(frozen=True)
class TTestResult:
    t: float
    p: float
    n: int
    # set when the difference vector is degenerate (zero variance)
    flag: str | None = None


# ---------------------------------------------------------------------------
# scalar helpers


def percentage_change(m1: float, m2: float) -> float:
    """Relative change (m1 - m2) / m1 of m2 against reference m1.

    >>> percentage_change(4, 2)
    0.5
    """
    if m1 == 0:
        raise DataError("percentage change undefined for reference value 0")
    return (m1 - m2) / m1


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def _sample_sd(values: Sequence[float]) -> float:
    mean = _mean(values)
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1))


def _validate_vectors(x: Sequence[float], y: Sequence[float]) -> int:
    if len(x) != len(y):
        raise DataError(f"vector lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 3:
        raise DataError("correlation needs at least 3 points")
    for value in (*x, *y):
        if not math.isfinite(value):
            raise DataError(f"non-finite value: {value}")
    return len(x)


# ---------------------------------------------------------------------------
# correlations


def _pearson_statistic(x: Sequence[float], y: Sequence[float]) -> float:
    mx, my = _mean(x), _mean(y)
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise DataError("zero variance input to correlation")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def _t_approx_p(r: float, n: int) -> float:
    if abs(r) == 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return student_t_two_sided_p(t, n - 2)


def pearson(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Sample Pearson r with a two-sided t-approximation p-value."""
    n = _validate_vectors(x, y)
    r = _pearson_statistic(x, y)
    return CorrelationResult(r, _t_approx_p(r, n), "pearson", n)


def _average_ranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        average = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = average
        i = j + 1
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Pearson on average ranks; same t-approximation for p."""
    n = _validate_vectors(x, y)
    rho = _pearson_statistic(_average_ranks(x), _average_ranks(y))
    return CorrelationResult(rho, _t_approx_p(rho, n), "spearman", n)


def _tie_term(values: Sequence[float], weight) -> float:
    return math.fsum(
        weight(count) for count in Counter(values).values() if count > 1
    )


def kendall(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Tau-b with tie corrections; p via the corrected normal approximation."""
    n = _validate_vectors(x, y)
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            sign = (x[i] - x[j]) * (y[i] - y[j])
            if sign > 0:
                concordant += 1
            elif sign < 0:
                discordant += 1
    s = concordant - discordant

    n0 = n * (n - 1) / 2.0
    nt = _tie_term(x, lambda t: t * (t - 1) / 2.0)
    nu = _tie_term(y, lambda t: t * (t - 1) / 2.0)
    denominator = math.sqrt((n0 - nt) * (n0 - nu))
    if denominator == 0.0:
        raise DataError("zero variance input to correlation")
    tau = max(-1.0, min(1.0, s / denominator))

    v0 = n * (n - 1) * (2 * n + 5)
    vt = _tie_term(x, lambda t: t * (t - 1) * (2 * t + 5))
    vu = _tie_term(y, lambda t: t * (t - 1) * (2 * t + 5))
    v1 = (
        _tie_term(x, lambda t: t * (t - 1))
        * _tie_term(y, lambda t: t * (t - 1))
        / (2.0 * n * (n - 1))
    )
    v2 = (
        _tie_term(x, lambda t: t * (t - 1) * (t - 2))
        * _tie_term(y, lambda t: t * (t - 1) * (t - 2))
        / (9.0 * n * (n - 1) * (n - 2))
    )
    variance = (v0 - vt - vu) / 18.0 + v1 + v2
    if variance <= 0:
        p = 1.0 if s == 0 else 0.0
    elif s == 0:
        p = 1.0
    else:
        # continuity correction: |S| shrinks by 1 before standardizing
        z = (abs(s) - 1.0) / math.sqrt(variance)
        p = normal_two_sided_p(z)
    return CorrelationResult(tau, p, "kendall", n)


CORRELATION_METHODS = {"pearson": pearson, "spearman": spearman, "kendall": kendall}


# ---------------------------------------------------------------------------
# paired comparisons


def paired_t_test(samples: PairedSamples) -> TTestResult:
    """Two-sided paired t-test on a - b.

    Degenerate difference vectors never raise: constant nonzero
    differences report an infinite t with p = 0 and a flag, all-zero
    differences report t = 0, p = 1.
    """
    d = samples.differences
    n = len(d)
    mean = _mean(d)
    sd = _sample_sd(d)
    if sd == 0.0:
        if mean == 0.0:
            return TTestResult(0.0, 1.0, n, "all_zero_differences")
        return TTestResult(
            math.copysign(math.inf, mean), 0.0, n, "constant_nonzero_differences"
        )
    t = mean / (sd / math.sqrt(n))
    return TTestResult(t, student_t_two_sided_p(t, n - 1), n)


def cohens_d(samples: PairedSamples, mode: str = "paired") -> float:
    """Effect size: mean(a-b)/sd(a-b), or the pooled-sd variant.

    Identical samples give 0; any other zero-spread configuration is a
    degenerate-input error.
    """
    if mode == "paired":
        d = samples.differences
        mean, sd = _mean(d), _sample_sd(d)
        if sd == 0.0:
            if mean == 0.0:
                return 0.0
            raise DataError("zero variance of differences; effect size undefined")
        return mean / sd
    if mode == "pooled":
        na, nb = len(samples.a), len(samples.b)
        sa, sb = _sample_sd(samples.a), _sample_sd(samples.b)
        pooled = math.sqrt(
            ((na - 1) * sa**2 + (nb - 1) * sb**2) / (na + nb - 2)
        )
        if pooled == 0.0:
            raise DataError("zero pooled standard deviation; effect size undefined")
        return (_mean(samples.a) - _mean(samples.b)) / pooled
    raise ValueError(f"unknown effect-size mode: {mode!r}")


def group_mean_difference(
    scores_a: dict[str, float],
    scores_b: dict[str, float],
    groups: dict[str, str],
) -> dict[str, float]:
    """Mean of (a - b) per group of labels.

    Raises:
        DataError: the two score maps cover different labels, or a
            scored label has no group assignment.
    """
    if set(scores_a) != set(scores_b):
        only_a = sorted(set(scores_a) - set(scores_b))
        only_b = sorted(set(scores_b) - set(scores_a))
        raise DataError(f"label sets differ (a-only {only_a}, b-only {only_b})")
    ungrouped = sorted(set(scores_a) - set(groups))
    if ungrouped:
        raise DataError(f"labels missing from group map: {ungrouped}")
    sums: dict[str, list[float]] = {}
    for label, value in scores_a.items():
        sums.setdefault(groups[label], []).append(value - scores_b[label])
    return {group: _mean(diffs) for group, diffs in sorted(sums.items())}
