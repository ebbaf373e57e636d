"""Catalogue of compactly supported test functions on an interval.

Each function is continuous on R, identically zero outside its support,
and evaluable together with first and second derivatives (one-sided at the
finitely many kink points of the piecewise-linear kinds).  All evaluations
are numpy-vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "TestFunction1D",
    "SmoothBump",
    "PolyCutoff",
    "Hat",
    "TruncatedGroundState",
    "AffineImage",
    "PowerFunction",
]


class TestFunction1D:
    """Protocol-ish base: support, kink points, value and two derivatives."""

    #: closed interval outside which the function vanishes identically
    support: tuple[float, float]
    #: kinks (including the support endpoints where the extension by zero
    #: may break smoothness); quadrature splits panels here
    breakpoints: tuple[float, ...]

    def value(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def d1(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def d2(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def __call__(self, x):
        return self.value(x)

    def affine_image(self, center: float, scale: float) -> "TestFunction1D":
        """The transported function x -> f((x - center) / scale)."""
        return AffineImage(self, center, scale)


def _asfloat(x):
    return np.asarray(x, dtype=float)


@dataclass(frozen=True)
class SmoothBump(TestFunction1D):
    """C-infinity bump ``exp(order * (1 - 1/(1 - t^2)))``, t = (x-center)/width.

    Peak value 1 at the center; support [center - width, center + width].
    Larger ``order`` concentrates the mass toward the center.
    """

    center: float
    width: float
    order: float = 1.0

    def __post_init__(self):
        if not (self.width > 0.0):
            raise DomainError("bump width must be positive")
        if not (self.order > 0.0):
            raise DomainError("bump order must be positive")

    @property
    def support(self):
        return (self.center - self.width, self.center + self.width)

    @property
    def breakpoints(self):
        return self.support

    def _t(self, x):
        return (_asfloat(x) - self.center) / self.width

    def value(self, x):
        t = self._t(x)
        inside = np.abs(t) < 1.0
        tt = np.where(inside, t, 0.0)
        with np.errstate(over="ignore", under="ignore"):
            f = np.exp(self.order * (1.0 - 1.0 / (1.0 - tt**2)))
        return np.where(inside, f, 0.0)

    def d1(self, x):
        t = self._t(x)
        inside = np.abs(t) < 1.0
        tt = np.where(inside, t, 0.0)
        om = 1.0 - tt**2
        with np.errstate(over="ignore", under="ignore"):
            f = np.exp(self.order * (1.0 - 1.0 / om))
            g1 = -2.0 * tt / om**2
            out = self.order * g1 * f / self.width
        return np.where(inside, out, 0.0)

    def d2(self, x):
        t = self._t(x)
        inside = np.abs(t) < 1.0
        tt = np.where(inside, t, 0.0)
        om = 1.0 - tt**2
        with np.errstate(over="ignore", under="ignore"):
            f = np.exp(self.order * (1.0 - 1.0 / om))
            g1 = -2.0 * tt / om**2
            g2 = -(2.0 + 6.0 * tt**2) / om**3
            out = (self.order * g2 + (self.order * g1) ** 2) * f / self.width**2
        return np.where(inside, out, 0.0)


@dataclass(frozen=True)
class PolyCutoff(TestFunction1D):
    """Polynomial shaped by the C^1 cutoff ``(1 - t^2)^2`` on its support.

    ``coefficients`` are in increasing degree on the reference coordinate
    t in [-1, 1].  The second derivative jumps at the support endpoints.
    """

    coefficients: tuple[float, ...]
    support_interval: tuple[float, float]

    def __post_init__(self):
        a, b = self.support_interval
        if not (a < b):
            raise DomainError("support requires a < b")
        if len(self.coefficients) == 0:
            raise DomainError("need at least one polynomial coefficient")

    @property
    def support(self):
        return self.support_interval

    @property
    def breakpoints(self):
        return self.support_interval

    def _maps(self):
        a, b = self.support_interval
        m = 0.5 * (a + b)
        s = 0.5 * (b - a)
        return m, s

    def value(self, x):
        m, s = self._maps()
        t = (_asfloat(x) - m) / s
        inside = np.abs(t) < 1.0
        tt = np.where(inside, t, 0.0)
        p = np.polynomial.polynomial.polyval(tt, self.coefficients)
        out = (1.0 - tt**2) ** 2 * p
        return np.where(inside, out, 0.0)

    def d1(self, x):
        m, s = self._maps()
        t = (_asfloat(x) - m) / s
        inside = np.abs(t) < 1.0
        tt = np.where(inside, t, 0.0)
        c = np.asarray(self.coefficients, dtype=float)
        p = np.polynomial.polynomial.polyval(tt, c)
        dp = np.polynomial.polynomial.polyval(tt, np.polynomial.polynomial.polyder(c))
        q = (1.0 - tt**2) ** 2
        dq = -4.0 * tt * (1.0 - tt**2)
        return np.where(inside, (dq * p + q * dp) / s, 0.0)

    def d2(self, x):
        m, s = self._maps()
        t = (_asfloat(x) - m) / s
        inside = np.abs(t) < 1.0
        tt = np.where(inside, t, 0.0)
        c = np.asarray(self.coefficients, dtype=float)
        dc = np.polynomial.polynomial.polyder(c)
        p = np.polynomial.polynomial.polyval(tt, c)
        dp = np.polynomial.polynomial.polyval(tt, dc)
        d2p = np.polynomial.polynomial.polyval(tt, np.polynomial.polynomial.polyder(dc))
        q = (1.0 - tt**2) ** 2
        dq = -4.0 * tt * (1.0 - tt**2)
        d2q = -4.0 + 12.0 * tt**2
        return np.where(inside, (d2q * p + 2.0 * dq * dp + q * d2p) / s**2, 0.0)


@dataclass(frozen=True)
class Hat(TestFunction1D):
    """Piecewise-linear plateau tent: 0 at the end nodes, 1 at interior nodes.

    With three nodes this is the classic hat function.
    """

    nodes: tuple[float, ...]

    def __post_init__(self):
        if len(self.nodes) < 3:
            raise DomainError("hat needs at least 3 nodes")
        if not all(a < b for a, b in zip(self.nodes[:-1], self.nodes[1:])):
            raise DomainError("hat nodes must be strictly increasing")

    @property
    def support(self):
        return (self.nodes[0], self.nodes[-1])

    @property
    def breakpoints(self):
        return tuple(self.nodes)

    def _vals(self):
        v = np.ones(len(self.nodes))
        v[0] = 0.0
        v[-1] = 0.0
        return v

    def value(self, x):
        return np.interp(_asfloat(x), self.nodes, self._vals(), left=0.0, right=0.0)

    def d1(self, x):
        x = _asfloat(x)
        nodes = np.asarray(self.nodes)
        vals = self._vals()
        slopes = np.diff(vals) / np.diff(nodes)
        idx = np.searchsorted(nodes, x, side="right") - 1
        ok = (idx >= 0) & (idx < len(slopes))
        return np.where(ok, slopes[np.clip(idx, 0, len(slopes) - 1)], 0.0)

    def d2(self, x):
        return np.zeros_like(_asfloat(x))


@dataclass(frozen=True)
class TruncatedGroundState(TestFunction1D):
    """Cutoff approximation ``psi_n * (1 - x^2)^((alpha-1)/2)`` of the optimizer.

    ``psi_n`` ramps linearly from 0 at +-(1 - 1/n) to 1 at +-(1 - 2/n) and is
    1 on the plateau in between, so |psi_n'| = n <= 2n.
    """

    n: int
    alpha: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise DomainError("truncation index n must be an integer >= 3")
        if not (0.0 < self.alpha < 2.0):
            raise DomainError("alpha must lie in (0, 2)")

    @property
    def support(self):
        e = 1.0 - 1.0 / self.n
        return (-e, e)

    @property
    def breakpoints(self):
        n = self.n
        return (-1.0 + 1.0 / n, -1.0 + 2.0 / n, 1.0 - 2.0 / n, 1.0 - 1.0 / n)

    def _psi_nodes(self):
        n = self.n
        return np.array([-1.0 + 1.0 / n, -1.0 + 2.0 / n, 1.0 - 2.0 / n, 1.0 - 1.0 / n])

    def psi(self, x):
        return np.interp(_asfloat(x), self._psi_nodes(), [0.0, 1.0, 1.0, 0.0],
                         left=0.0, right=0.0)

    def psi_d1(self, x):
        x = _asfloat(x)
        n = float(self.n)
        lo, lp, rp, hi = self._psi_nodes()
        out = np.zeros_like(x)
        out = np.where((x >= lo) & (x < lp), n, out)
        out = np.where((x >= rp) & (x < hi), -n, out)
        return out

    def _w(self, x, k=0):
        # k-th derivative of (1 - x^2)^beta, beta = (alpha - 1) / 2
        b = 0.5 * (self.alpha - 1.0)
        om = 1.0 - x**2
        if k == 0:
            return om**b
        if k == 1:
            return -2.0 * b * x * om ** (b - 1.0)
        return -2.0 * b * om ** (b - 1.0) + 4.0 * b * (b - 1.0) * x**2 * om ** (b - 2.0)

    def value(self, x):
        x = _asfloat(x)
        inside = np.abs(x) < 1.0 - 1.0 / self.n
        xx = np.where(inside, x, 0.0)
        return np.where(inside, self.psi(xx) * self._w(xx), 0.0)

    def d1(self, x):
        x = _asfloat(x)
        inside = np.abs(x) < 1.0 - 1.0 / self.n
        xx = np.where(inside, x, 0.0)
        out = self.psi_d1(xx) * self._w(xx) + self.psi(xx) * self._w(xx, 1)
        return np.where(inside, out, 0.0)

    def d2(self, x):
        x = _asfloat(x)
        inside = np.abs(x) < 1.0 - 1.0 / self.n
        xx = np.where(inside, x, 0.0)
        out = 2.0 * self.psi_d1(xx) * self._w(xx, 1) + self.psi(xx) * self._w(xx, 2)
        return np.where(inside, out, 0.0)


@dataclass(frozen=True)
class AffineImage(TestFunction1D):
    """x -> base((x - center) / scale), for transport between intervals."""

    base: TestFunction1D
    center: float
    scale: float

    def __post_init__(self):
        if not (self.scale > 0.0):
            raise DomainError("affine scale must be positive")

    @property
    def support(self):
        a, b = self.base.support
        return (self.center + self.scale * a, self.center + self.scale * b)

    @property
    def breakpoints(self):
        return tuple(self.center + self.scale * p for p in self.base.breakpoints)

    def _t(self, x):
        return (_asfloat(x) - self.center) / self.scale

    def value(self, x):
        return self.base.value(self._t(x))

    def d1(self, x):
        return self.base.d1(self._t(x)) / self.scale

    def d2(self, x):
        return self.base.d2(self._t(x)) / self.scale**2


@dataclass(frozen=True)
class PowerFunction:
    """``(1 - x^2)^p`` on [-1, 1], the family with closed-form image under
    the regional fractional Laplacian.

    Not compactly supported; unbounded at the endpoints for p < 0, which is
    why quadrature against it needs the graded endpoint treatment.  The
    ``boundary_exponent`` attribute advertises the algebraic strength.
    """

    p: float

    def __post_init__(self):
        if not (self.p > -1.0):
            raise DomainError(f"power exponent must be > -1, got {self.p}")

    support = (-1.0, 1.0)
    breakpoints: tuple[float, ...] = ()

    @property
    def boundary_exponent(self) -> float:
        return self.p

    def value(self, x):
        x = _asfloat(x)
        om = 1.0 - x**2
        with np.errstate(divide="ignore"):
            out = np.where(om > 0.0, np.abs(om) ** self.p, np.inf if self.p < 0 else 0.0)
        if self.p == 0.0:
            out = np.ones_like(x)
        return out

    def value_at_dist(self, d, side: int):
        """Value at distance ``d`` from the endpoint ``side`` (+1 or -1).

        Evaluates ``(d * (2 - d))^p`` from the exact distance, which stays
        accurate where ``1 - x^2`` would round to zero.
        """
        d = _asfloat(d)
        return (d * (2.0 - d)) ** self.p

    def d1(self, x):
        x = _asfloat(x)
        om = 1.0 - x**2
        return -2.0 * self.p * x * om ** (self.p - 1.0)

    def d2(self, x):
        x = _asfloat(x)
        om = 1.0 - x**2
        return (-2.0 * self.p * om ** (self.p - 1.0)
                + 4.0 * self.p * (self.p - 1.0) * x**2 * om ** (self.p - 2.0))

    def __call__(self, x):
        return self.value(x)
