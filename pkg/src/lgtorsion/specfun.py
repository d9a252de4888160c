"""Associated Laguerre polynomials and the Gamma function family.

Self-contained kernels: the Laguerre recurrence and the incomplete Gamma
series / continued fraction are implemented here rather than pulled from an
external special-function package, so their accuracy can be pinned by the
test suite.  Complete Gamma and log-Gamma come from the standard library.
"""

from __future__ import annotations

import math

import numpy as np

P_MAX = 200
ALPHA_MAX = 200
A_MAX = 300.0

_TERM_EPS = 1e-14  # relative termination for series and continued fraction
_MAX_ITER = 10_000
_FPMIN = 1e-300


def _check_index(name: str, value) -> int:
    if not isinstance(value, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(value)


def assoc_laguerre(p: int, alpha: int, x):
    """Associated Laguerre polynomial L_p^alpha(x).

    Evaluated by the upward three-term recurrence in p, which is stable for
    x >= 0 (the only regime used here: the argument is always 2 r^2 / w^2).
    `x` may be a float or a numpy array; the result has the same shape.
    """
    p = _check_index("p", p)
    alpha = _check_index("alpha", alpha)
    if p < 0 or alpha < 0:
        raise ValueError(f"indices must be non-negative, got p={p}, alpha={alpha}")
    if p > P_MAX or alpha > ALPHA_MAX:
        raise ValueError(f"indices above supported bound {P_MAX}: p={p}, alpha={alpha}")

    scalar = np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0)
    xv = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xv)):
        raise ValueError("x must be finite")
    if np.any(xv < 0):
        raise ValueError("x must be >= 0")

    prev = np.ones_like(xv)
    if p == 0:
        return float(prev) if scalar else prev
    cur = 1.0 + alpha - xv
    for k in range(1, p):
        prev, cur = cur, ((2 * k + 1 + alpha - xv) * cur - (k + alpha) * prev) / (k + 1)
    if not np.all(np.isfinite(cur)):
        raise OverflowError(f"L_{p}^{alpha} overflowed double range")
    return float(cur) if scalar else cur


def factorial(n: int) -> float:
    """n! as a float, exact for n <= 170; larger n overflows (signalled)."""
    n = _check_index("n", n)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > 170:
        raise OverflowError(f"{n}! exceeds double range; use log_factorial")
    return float(math.factorial(n))


def log_factorial(n: int) -> float:
    """ln(n!), usable far beyond the overflow bound of factorial()."""
    n = _check_index("n", n)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return math.lgamma(n + 1.0)


def gamma_complete(a: float) -> float:
    """Gamma(a) for a > 0, with overflow signalled instead of saturated."""
    if a <= 0:
        raise ValueError(f"a must be > 0, got {a}")
    try:
        return math.gamma(a)
    except OverflowError:
        raise OverflowError(f"Gamma({a}) exceeds double range; use log_gamma") from None


def log_gamma(a: float) -> float:
    """ln Gamma(a) for a > 0."""
    if a <= 0:
        raise ValueError(f"a must be > 0, got {a}")
    return math.lgamma(a)


def _lower_series(a: float, x: float) -> float:
    """Regularized lower incomplete Gamma P(a, x) by power series (x < a+1)."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _TERM_EPS:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ArithmeticError(f"incomplete Gamma series failed to converge for a={a}, x={x}")


def _upper_contfrac(a: float, x: float) -> float:
    """Regularized upper incomplete Gamma Q(a, x) by Lentz continued fraction (x >= a+1)."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _TERM_EPS:
            return h * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ArithmeticError(f"incomplete Gamma continued fraction failed for a={a}, x={x}")


def _check_incomplete_args(a: float, x: float) -> None:
    if a <= 0:
        raise ValueError(f"a must be > 0, got {a}")
    if a > A_MAX:
        raise ValueError(f"a above supported bound {A_MAX}, got {a}")
    if x < 0 or not math.isfinite(x):
        raise ValueError(f"x must be finite and >= 0, got {x}")


def gamma_upper_regularized(a: float, x: float) -> float:
    """Q(a, x) = Gamma(a, x) / Gamma(a), always in [0, 1].

    Power series below the switchover x = a + 1, continued fraction above.
    """
    _check_incomplete_args(a, x)
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _lower_series(a, x)
    return _upper_contfrac(a, x)


def gamma_lower_regularized(a: float, x: float) -> float:
    """P(a, x) = 1 - Q(a, x)."""
    _check_incomplete_args(a, x)
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _lower_series(a, x)
    return 1.0 - _upper_contfrac(a, x)


def gamma_upper_incomplete(a: float, x: float) -> float:
    """Upper incomplete Gamma(a, x) = integral_x^inf t^(a-1) e^(-t) dt."""
    return gamma_upper_regularized(a, x) * gamma_complete(a)


def gamma_lower_incomplete(a: float, x: float) -> float:
    """Lower incomplete gamma(a, x) = Gamma(a) - Gamma(a, x), computed directly."""
    return gamma_lower_regularized(a, x) * gamma_complete(a)
