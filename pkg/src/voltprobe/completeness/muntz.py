"""Muntz-Szasz evidence: sum 1/mu_k converges for the adjoint exponents."""

from __future__ import annotations

import math

from voltprobe.exceptions import ParameterError
from voltprobe.models.completeness import MuntzSummary
from voltprobe.models.params import AlphaParam

# Terms below this are too close to underflow for their ratios to mean anything.
_SMALLEST_TERM = 1e-290


def exponent(alpha: float, k: int) -> float:
    """mu_k = (1 - alpha^k) / ((1 - alpha) alpha^k), the k-th adjoint exponent."""
    return (1.0 - alpha**k) / ((1.0 - alpha) * alpha**k)


def inverse_exponent(alpha: float, k: int) -> float:
    """1 / mu_k = (1 - alpha) alpha^k / (1 - alpha^k)."""
    return (1.0 - alpha) * alpha**k / (1.0 - alpha**k)


def _aitken(values: list[float]) -> list[float]:
    """One Aitken delta-squared pass; entries with a vanishing second difference pass through."""
    out: list[float] = []
    for x0, x1, x2 in zip(values, values[1:], values[2:], strict=False):
        second = x2 - 2.0 * x1 + x0
        if second == 0.0 or not math.isfinite(second):
            out.append(x2)
        else:
            out.append(x2 - (x2 - x1) ** 2 / second)
    return out


def extrapolate_ratio(ratios: list[float], passes: int = 3) -> float:
    """Limit of a ratio sequence by iterated Aitken extrapolation of its last entries.

    The error of the raw ratios is a sum of geometric components; each pass
    removes the slowest one. With too few entries the last ratio is returned.
    """
    if not ratios:
        msg = "ratio extrapolation needs at least one ratio"
        raise ParameterError(msg)
    sequence = ratios[-(2 * passes + 1) :]
    for _ in range(passes):
        if len(sequence) < 3:  # noqa: PLR2004
            break
        sequence = _aitken(sequence)
    return sequence[-1]


def muntz_sum(alpha: AlphaParam, K: int) -> MuntzSummary:
    """Partial sums of sum_{k=1..K} 1/mu_k and the ratio that makes it converge.

    ``last_ratio`` is the raw (1/mu_{K+1}) / (1/mu_K), which approaches alpha
    from below. ``ratio_limit`` extrapolates the computed ratios
    (1/mu_{k+1}) / (1/mu_k), k <= K, to their limit. ``tail_bound`` is
    s_K + (1/mu_K) alpha / (1 - alpha), an upper bound for the full series.

    Raises:
        ParameterError: If K < 2.
    """
    if K < 2:  # noqa: PLR2004
        msg = f"muntz_sum needs K >= 2, got {K}"
        raise ParameterError(msg)
    a = alpha.alpha
    inverses = [inverse_exponent(a, k) for k in range(1, K + 2)]
    partial_sums = [math.fsum(inverses[: k + 1]) for k in range(K)]
    ratios = [
        nxt / cur
        for cur, nxt in zip(inverses, inverses[1:], strict=False)
        if cur > _SMALLEST_TERM and nxt > _SMALLEST_TERM
    ]
    if not ratios:
        msg = f"every 1/mu_k underflows at alpha={a}"
        raise ParameterError(msg)
    return MuntzSummary(
        alpha=a,
        partial_sums=tuple(partial_sums),
        ratio_limit=extrapolate_ratio(ratios),
        last_ratio=inverses[K] / inverses[K - 1],
        tail_bound=partial_sums[-1] + inverses[K - 1] * a / (1.0 - a),
    )
