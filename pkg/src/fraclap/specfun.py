"""Special functions and named constants of the interval Hardy inequalities.

Everything here is closed-form: log-gamma via a Lanczos approximation,
the Euler beta function, the sharp constant ``kappa(n, alpha)``, the
boundary profile ``phi``, and the remainder-term coefficients.  All
functions are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError

__all__ = [
    "Alpha",
    "ConstantReport",
    "as_alpha",
    "log_gamma",
    "beta",
    "log_beta",
    "kappa",
    "phi",
    "remainder_coeff_1d",
    "remainder_coeff_nd",
    "constant_report",
]


@dataclass(frozen=True)
class Alpha:
    """Kernel exponent: the ``alpha`` in ``|x - y|^(-1-alpha)``.

    Valid values lie in the open interval (0, 2).  Operations tied to the
    remainder-term inequalities additionally require 1 < alpha < 2 and call
    :meth:`require_strict`.
    """

    value: float

    def __post_init__(self):
        v = float(self.value)
        if not (0.0 < v < 2.0) or not math.isfinite(v):
            raise DomainError(f"alpha must lie in (0, 2), got {self.value!r}")
        object.__setattr__(self, "value", v)

    def require_strict(self) -> float:
        """Return the value, rejecting alpha outside (1, 2)."""
        if not (1.0 < self.value < 2.0):
            raise DomainError(
                f"this operation requires 1 < alpha < 2, got {self.value}"
            )
        return self.value

    def __float__(self) -> float:
        return self.value


AlphaLike = Union[Alpha, float]


def as_alpha(alpha: AlphaLike) -> Alpha:
    return alpha if isinstance(alpha, Alpha) else Alpha(float(alpha))


# Lanczos approximation, g = 7, 9 coefficients.  Standard double-precision
# set; validated against a quadrature-of-the-integral-definition oracle in
# the test suite (see tools/make_goldens.py).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for real x > 0.

    Relative accuracy is about 1e-14 on (0, 50]; see the golden-value tests.
    """
    x = float(x)
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        # reflection keeps the series argument >= 0.5
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    series = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        series += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _LN_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(series)


def log_beta(a: float, b: float) -> float:
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"beta requires positive arguments, got ({a!r}, {b!r})")
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def beta(a: float, b: float) -> float:
    """Euler beta function ``B(a, b)`` for positive arguments."""
    return math.exp(log_beta(a, b))


def kappa(n: int, alpha: AlphaLike) -> float:
    """Sharp Hardy constant ``kappa(n, alpha)``.

    ``pi^((n-1)/2) * Gamma((1+alpha)/2) / Gamma((n+alpha)/2)
    * (B((1+alpha)/2, (2-alpha)/2) - 2^alpha) / (alpha * 2^alpha)``.

    The prefactor is evaluated in log space so large ``n`` cannot overflow;
    the numerator ``B - 2^alpha`` is kept as an explicit difference, which
    preserves the simple zero structure at ``alpha = 1``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"dimension n must be a positive integer, got {n!r}")
    a = as_alpha(alpha).value
    log_pref = (
        0.5 * (n - 1) * math.log(math.pi)
        + log_gamma((1.0 + a) / 2.0)
        - log_gamma((n + a) / 2.0)
        - math.log(a)
        - a * math.log(2.0)
    )
    numer = beta((1.0 + a) / 2.0, (2.0 - a) / 2.0) - 2.0**a
    return math.exp(log_pref) * numer


def phi(x, alpha: AlphaLike):
    """Boundary profile ``2^alpha - (1+x)^alpha - (1-x)^alpha`` on [-1, 1].

    Accepts scalars or arrays; even in x.  Negative for alpha < 1 away from
    the endpoints, nonnegative on [-1, 1] for alpha >= 1.
    """
    a = as_alpha(alpha).value
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-15):
        raise DomainError("phi is defined for |x| <= 1")
    xc = np.clip(x, -1.0, 1.0)
    out = 2.0**a - (1.0 + xc) ** a - (1.0 - xc) ** a
    if out.ndim == 0:
        return float(out)
    return out


def remainder_coeff_1d(alpha: AlphaLike, a: float, b: float) -> float:
    """Remainder-term coefficient ``(4 - 2^(3-alpha)) / (alpha * (b - a))``.

    Requires 1 < alpha < 2 (the coefficient would be <= 0 otherwise) and
    a < b.  Scales like 1/(b - a).
    """
    al = as_alpha(alpha).require_strict()
    if not (a < b):
        raise DomainError(f"interval requires a < b, got ({a!r}, {b!r})")
    return (4.0 - 2.0 ** (3.0 - al)) / (al * (b - a))


def remainder_coeff_nd(n: int, alpha: AlphaLike, diam: float) -> float:
    """n-dimensional remainder coefficient for a domain of diameter ``diam``.

    ``pi^((n-1)/2) * Gamma(alpha/2) * (4 - 2^(3-alpha))
    / (alpha * Gamma((n+alpha-1)/2)) / diam``.

    For n = 1 and diam = b - a this reduces to :func:`remainder_coeff_1d`.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"dimension n must be a positive integer, got {n!r}")
    al = as_alpha(alpha).require_strict()
    if not (diam > 0.0):
        raise DomainError(f"diameter must be positive, got {diam!r}")
    log_pref = (
        0.5 * (n - 1) * math.log(math.pi)
        + log_gamma(al / 2.0)
        - log_gamma((n + al - 1.0) / 2.0)
        - math.log(al)
    )
    return math.exp(log_pref) * (4.0 - 2.0 ** (3.0 - al)) / diam


@dataclass(frozen=True)
class ConstantReport:
    """Every named constant for a given dimension and alpha."""

    n: int
    kappa_n_alpha: float
    beta_term: float  # B((1+alpha)/2, (2-alpha)/2)
    remainder_coeff: float | None  # n-d coefficient at diam = 2; None if alpha <= 1


def constant_report(n: int, alpha: AlphaLike, diam: float = 2.0) -> ConstantReport:
    a = as_alpha(alpha)
    bterm = beta((1.0 + a.value) / 2.0, (2.0 - a.value) / 2.0)
    rem = None
    if 1.0 < a.value < 2.0:
        rem = remainder_coeff_nd(n, a, diam)
    return ConstantReport(
        n=int(n),
        kappa_n_alpha=kappa(n, a),
        beta_term=bterm,
        remainder_coeff=rem,
    )
