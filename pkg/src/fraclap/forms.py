"""Singular double-integral quadratic forms on the interval and the
identity / inequality checkers built from them.

All double integrals are reduced to correlation coordinates z = y - x, in
which the near-diagonal integrand is O(z^(2 - alpha)) ... O(z^(1-alpha))
and absolutely integrable; kinks of the test functions are registered as
mandatory panel boundaries, and the weight singularities at the interval
endpoints are removed by graded substitutions working on exact distances.
Inequality slacks carry an explicit error budget so quadrature noise can
never masquerade as a violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError
from .functions import AffineImage, TestFunction1D
from .quadrature import (
    PVResult,
    QuadConfig,
    adaptive,
    batch_rows,
    graded_piece,
    graded_span,
    panels_between,
)
from .specfun import AlphaLike, as_alpha

__all__ = [
    "Interval",
    "FormBreakdown",
    "HardyCheck1D",
    "KilledCheck",
    "PhiBoundCheck",
    "inv_one_minus_x2_pow",
    "hardy_weight",
    "phi_weight",
    "killing_weight",
    "energy_regional",
    "energy_ground_state",
    "weighted_l2",
    "verify_gsr_identity",
    "hardy_check_1d",
    "killed_check",
    "phi_lower_bound_check",
]

_EPS = np.finfo(float).eps

# inner integrals of nested quadratures run essentially to roundoff so the
# outer error estimate stays honest with a single relative surcharge
_INNER_REL = 3e-12
_INNER_SURCHARGE = 1e-11


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a < self.b):
            raise DomainError(f"interval requires a < b, got ({self.a!r}, {self.b!r})")

    @property
    def half_width(self) -> float:
        return 0.5 * (self.b - self.a)

    @property
    def center(self) -> float:
        return 0.5 * (self.a + self.b)


def _as_interval(iv) -> Interval:
    if isinstance(iv, Interval):
        return iv
    a, b = iv
    return Interval(float(a), float(b))


@dataclass(frozen=True)
class FormBreakdown:
    """The four terms of the ground-state representation plus the residual."""

    energy: float
    gs_term: float
    kappa_term: float
    phi_term: float
    residual: float
    error_estimate: float


@dataclass(frozen=True)
class HardyCheck1D:
    lhs: float
    rhs_main: float
    rhs_remainder: float
    slack: float
    error_estimate: float


@dataclass(frozen=True)
class KilledCheck:
    full_energy: float
    regional_energy: float
    killing_term: float
    gs_term: float
    const_term: float
    identity_residual: float
    ineq_slack: float
    killing_term_direct: float  # exterior double integral, quadrature route
    error_estimate: float


@dataclass(frozen=True)
class PhiBoundCheck:
    min_gap: float
    argmin: float


# ---------------------------------------------------------------------------
# weights

def inv_one_minus_x2_pow(alpha: AlphaLike):
    """Weight ``(1 - x^2)^(-alpha)`` on (-1, 1)."""
    a = as_alpha(alpha).value

    def weight(x):
        x = np.asarray(x, dtype=float)
        return (1.0 - x**2) ** (-a)

    return weight


def hardy_weight(alpha: AlphaLike, iv=(-1.0, 1.0), power: float | None = None):
    """Weight ``(1/(x - a) + 1/(b - x))^power`` with power defaulting to alpha."""
    a = as_alpha(alpha).value
    interval = _as_interval(iv)
    q = a if power is None else float(power)

    def weight(x):
        x = np.asarray(x, dtype=float)
        return (1.0 / (x - interval.a) + 1.0 / (interval.b - x)) ** q

    return weight


def phi_weight(alpha: AlphaLike):
    """Weight ``phi(x) * (1 - x^2)^(-alpha)``; signed for alpha < 1."""
    a = as_alpha(alpha).value

    def weight(x):
        x = np.asarray(x, dtype=float)
        return specfun.phi(x, a) * (1.0 - x**2) ** (-a)

    return weight


def killing_weight(alpha: AlphaLike):
    """Exterior-kernel potential ``((1-x)^(-alpha) + (1+x)^(-alpha)) / alpha``."""
    a = as_alpha(alpha).value

    def weight(x):
        x = np.asarray(x, dtype=float)
        return ((1.0 - x) ** (-a) + (1.0 + x) ** (-a)) / a

    return weight


# ---------------------------------------------------------------------------
# machinery

def _ground_state_weight(alpha: float):
    b = 0.5 * (alpha - 1.0)

    def w(x):
        x = np.asarray(x, dtype=float)
        return (1.0 - x**2) ** b

    return w


def _require_strict_support(u: TestFunction1D, iv: Interval):
    s0, s1 = u.support
    if not (iv.a < s0 and s1 < iv.b):
        raise DomainError(
            f"support [{s0}, {s1}] must lie strictly inside ({iv.a}, {iv.b})"
        )


class _InnerTracker:
    """Accumulates the worst relative error of batched inner integrals."""

    def __init__(self):
        self.worst_rel = 0.0

    def record(self, vals, errs):
        scale = np.maximum(np.abs(vals), 1e-3 * (np.abs(vals).max() + 1e-300))
        self.worst_rel = max(self.worst_rel, float((errs / scale).max(initial=0.0)))

    def surcharge(self, value: float) -> float:
        return (self.worst_rel + _INNER_SURCHARGE) * abs(value)


def _graded_batch_fn(fd, p: float, grading_exponent: float):
    """Batched analogue of :func:`graded_piece`: returns (fn_in_s, q)."""
    q = max(1.0, grading_exponent / (1.0 + p))

    def fn(s):
        s = np.asarray(s, dtype=float)
        d = s**q
        with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
            out = fd(d) * (q * s ** (q - 1.0))
        return np.where(s > 0.0, out, 0.0)

    return fn, q


def _correlation_energy(
    g,
    weight,
    lo: float,
    hi: float,
    support: tuple[float, float],
    breakpoints,
    alpha: float,
    cfg: QuadConfig,
    both_in_support: bool,
):
    """``1/2 iint (g(x)-g(y))^2 W(x) W(y) |x-y|^(-1-alpha)`` over a square.

    In z = y - x coordinates this is ``int_0^zmax z^(-1-alpha) G(z) dz`` with
    ``G(z) = int (g(x+z)-g(x))^2 W(x+z) W(x) dx``; the O(z^(1-alpha)) kink
    at z = 0 is graded away.  ``both_in_support`` restricts x and x + z to
    the support square (the ground-state kernel block), otherwise x ranges
    over the full interval.

    The inner integral is evaluated for all outer nodes of a panel in one
    batched call: between consecutive z-breakpoints (pairwise distances of
    kinks and interval endpoints) the inner cut positions are affine in z,
    so the panel topology is shared across the batch.
    """
    s0, s1 = support
    tracker = _InnerTracker()
    bp = np.asarray(sorted(set(breakpoints) | {s0, s1}), dtype=float)

    # magnitude probe for the cancellation-noise floor of (g(x+z) - g(x))^2
    probe = np.linspace(s0, s1, 257)
    gmax = float(np.abs(g(probe)).max()) + 1e-300
    wmax = float(np.abs(weight(probe)).max()) if weight is not None else 1.0
    noise_scale = 4.0 * _EPS * gmax * wmax * math.sqrt(s1 - s0)

    def G_batch(z_rows):
        z = np.asarray(z_rows, dtype=float)[:, None]  # (B, 1)
        if both_in_support:
            xlo = np.full_like(z, s0)
            xhi = s1 - z
        else:
            xlo = np.maximum(lo, s0 - z)
            xhi = np.minimum(hi - z, s1)
        xhi = np.maximum(xhi, xlo)
        cand = np.concatenate(
            [np.broadcast_to(bp, (z.shape[0], bp.size)), bp - z, xlo, xhi], axis=1
        )
        cand = np.clip(cand, xlo, xhi)
        cand.sort(axis=1)
        lo_p, hi_p = cand[:, :-1], cand[:, 1:]
        zc = z[:, :, None]  # (B,1,1) for broadcasting against (B,P,15)

        def inner(x):
            d = g(x + zc) - g(x)
            out = d * d
            if weight is not None:
                out = out * weight(x + zc) * weight(x)
            return out

        vals, errs = batch_rows(
            inner, lo_p, hi_p, rel_tol=_INNER_REL, noise_scale=noise_scale
        )
        tracker.record(vals, errs)
        return vals

    if both_in_support:
        zmax = s1 - s0
    else:
        zmax = min(hi - lo, max(hi - s0, s1 - lo))

    pts = sorted(set(breakpoints) | {lo, hi, s0, s1})
    zbreaks = sorted({abs(p - q) for p in pts for q in pts if 0.0 < abs(p - q) < zmax})
    z1 = min(zbreaks) if zbreaks else zmax

    # analytic head on (0, zh): below the floating-point cancellation wall
    # the integrand cannot be evaluated, but there G(z) = a2 z^2 + a3 z^3 +
    # a4 z^4 (exactly so for piecewise-linear g once zh is below the least
    # kink distance); fit the coefficients at safe probe points and
    # integrate the head in closed form.
    zh = min(2e-5, 0.25 * z1)
    gp = G_batch(np.array([zh, 2.0 * zh, 4.0 * zh]))
    # solve for a_k = coeff of (z/zh)^k, k = 2, 3, 4
    m = np.array([[1.0, 1.0, 1.0], [4.0, 8.0, 16.0], [16.0, 64.0, 256.0]])
    a2, a3, a4 = np.linalg.solve(m, gp)
    head = sum(
        ak * zh ** (-alpha) / (k - alpha) for k, ak in ((2, a2), (3, a3), (4, a4))
    )
    head_err = 3e-10 * abs(head) + 0.25 * abs(a4 * zh ** (-alpha) / (4.0 - alpha))

    def fd_tail(d):
        d = np.atleast_1d(np.asarray(d, dtype=float))
        out = np.zeros_like(d)
        pos = d > 0.0
        if pos.any():
            out[pos] = G_batch(d[pos]) * d[pos] ** (-1.0 - alpha)
        return out

    pieces = [graded_span(fd_tail, zh, z1, 1.0 - alpha, cfg.grading_exponent)]

    def fn(z_arr):
        z_arr = np.atleast_1d(np.asarray(z_arr, dtype=float))
        return G_batch(z_arr) * z_arr ** (-1.0 - alpha)

    pieces.extend((fn, plo, phi_) for plo, phi_ in panels_between(z1, zmax, zbreaks))

    res = adaptive(
        pieces, cfg, extra_error=head_err, min_scale=abs(head), raise_on_fail=True
    )
    value = res.value + head
    err = res.error_estimate + tracker.surcharge(value)
    return PVResult(value, err, res.subdivisions_used)


def _gs_cross_term(u: TestFunction1D, alpha: float, cfg: QuadConfig):
    """``iint_{S x ((-1,1) \\ S)} (u(x)/w(x))^2 w(x) w(y) |x-y|^(-1-alpha)``.

    The x-integrand is ``u(x)^2 (1-x^2)^(-(alpha-1)/2) K(x)`` with ``K`` the
    one-sided weighted kernel integral, graded at the interval endpoints.
    For x close to a support edge the kernel develops a boundary layer at
    the near end of the K integral, so the inner panels are pre-split
    geometrically toward that end.
    """
    s0, s1 = u.support
    bexp = 0.5 * (alpha - 1.0)
    tracker = _InnerTracker()

    def K_out_batch(x_rows):
        x = np.asarray(x_rows, dtype=float)[:, None, None]  # (B,1,1)
        B = x.shape[0]
        total = np.zeros(B)
        err_total = np.zeros(B)
        for side_width, near_sing, dist_kernel in (
            # right block (s1, 1): d = 1 - y; kernel near-singular at d_max
            (1.0 - s1, True, lambda d: ((1.0 - x) - d) ** (-1.0 - alpha)),
            # left block (-1, s0): d = y + 1
            (s0 + 1.0, True, lambda d: ((x + 1.0) - d) ** (-1.0 - alpha)),
        ):
            if side_width <= 0.0:
                continue

            def fd(d, dist_kernel=dist_kernel):
                return (d * (2.0 - d)) ** bexp * dist_kernel(d)

            fn, q = _graded_batch_fn(fd, bexp, 2.0)
            L = side_width ** (1.0 / q)
            # geometric pre-split toward the support-edge end, where the
            # kernel distance |x - y| can be arbitrarily small
            edges = L * (1.0 - 2.0 ** -np.arange(0, 24, dtype=float))
            edges = np.concatenate([edges, [L]])
            lo_p = np.broadcast_to(edges[:-1], (B, edges.size - 1))
            hi_p = np.broadcast_to(edges[1:], (B, edges.size - 1))
            vals, errs = batch_rows(fn, lo_p, hi_p, rel_tol=_INNER_REL)
            total += vals
            err_total += errs
        tracker.record(total, err_total)
        return total

    def outer_plain(x_arr):
        x_arr = np.atleast_1d(np.asarray(x_arr, dtype=float))
        vals = u.value(x_arr) ** 2 * (1.0 - x_arr**2) ** (-bexp)
        return vals * K_out_batch(x_arr)

    # the integrand has (x - s0)^(2 - alpha) edge kinks: graded pieces there
    inner_cuts = sorted(b for b in u.breakpoints if s0 < b < s1)
    e0 = inner_cuts[0] if inner_cuts else 0.5 * (s0 + s1)
    e1 = inner_cuts[-1] if inner_cuts else 0.5 * (s0 + s1)

    def fd_right(d):
        d = np.atleast_1d(np.asarray(d, dtype=float))
        x = s1 - d
        return u.value(x) ** 2 * (1.0 - x**2) ** (-bexp) * K_out_batch(x)

    def fd_left(d):
        d = np.atleast_1d(np.asarray(d, dtype=float))
        x = s0 + d
        return u.value(x) ** 2 * (1.0 - x**2) ** (-bexp) * K_out_batch(x)

    pieces = [
        graded_piece(fd_left, e0 - s0, 2.0 - alpha, cfg.grading_exponent),
        graded_piece(fd_right, s1 - e1, 2.0 - alpha, cfg.grading_exponent),
    ]
    pieces.extend(
        (outer_plain, plo, phi_)
        for plo, phi_ in panels_between(e0, e1, u.breakpoints)
    )
    res = adaptive(pieces, cfg, raise_on_fail=True)
    err = res.error_estimate + tracker.surcharge(res.value)
    return PVResult(res.value, err, res.subdivisions_used)


def _energy_xy(u: TestFunction1D, lo: float, hi: float, alpha: float, cfg: QuadConfig):
    """Independent energy route: outer in x, inner in y graded at y = x.

    Used as the second quadrature strategy in cross-checks; deliberately
    shares no decomposition with the correlation route.
    """
    tracker = _InnerTracker()
    s0, s1 = u.support
    probe = np.linspace(s0, s1, 257)
    umax = float(np.abs(u.value(probe)).max()) + 1e-300
    noise_scale = 4.0 * _EPS * umax
    dh = 1e-6  # analytic head below the cancellation wall of u(x+d) - u(x)

    def F_batch(x_rows):
        x = np.asarray(x_rows, dtype=float)
        B = x.size
        xc = x[:, None, None]
        ux = u.value(x)[:, None, None]
        d1x = u.d1(x)
        # two-sided head: int_0^dh (u' d)^2 d^(-1-alpha) dd per side
        total = 2.0 * d1x**2 * dh ** (2.0 - alpha) / (2.0 - alpha)
        err_total = np.abs(total) * 1e-4
        for sgn, end in ((-1.0, lo), (1.0, hi)):
            width = sgn * (end - x)  # (B,) positive

            def fd(d, sgn=sgn):
                return (u.value(xc + sgn * d) - ux) ** 2 * d ** (-1.0 - alpha)

            # graded first segment from the head cutoff up to the nearest
            # breakpoint per row
            cuts_all = []
            for xx in x:
                cc = sorted(abs(b - xx) for b in u.breakpoints if 0.0 < sgn * (b - xx))
                cuts_all.append(cc)
            ncuts = min(len(c) for c in cuts_all)
            first = np.array([c[0] if c else w for c, w in zip(cuts_all, width)])
            fn, q = _graded_batch_fn(fd, 2.0 - alpha, 2.0)
            vals, errs = batch_rows(
                fn,
                np.full((B, 1), dh ** (1.0 / q)),
                (first ** (1.0 / q))[:, None],
                rel_tol=_INNER_REL,
                noise_scale=noise_scale,
            )
            total += vals
            err_total += errs
            # plain segments between successive cuts, rectangular across rows
            if ncuts > 0:
                bounds = np.array([c[:ncuts] + [w] for c, w in zip(cuts_all, width)])
                vals, errs = batch_rows(
                    fd, bounds[:, :-1], bounds[:, 1:],
                    rel_tol=_INNER_REL, noise_scale=noise_scale,
                )
                total += vals
                err_total += errs
        tracker.record(total, err_total)
        return total

    def outer(x_arr):
        x_arr = np.atleast_1d(np.asarray(x_arr, dtype=float))
        return F_batch(x_arr)

    # x runs over the whole interval: outside the support the integrand is
    # u(y)^2 against the kernel, which still contributes
    pieces = [(outer, plo, phi_) for plo, phi_ in panels_between(lo, hi, u.breakpoints)]
    res = adaptive(pieces, cfg, raise_on_fail=True)
    value = 0.5 * res.value
    err = 0.5 * res.error_estimate + tracker.surcharge(value)
    return PVResult(value, err, res.subdivisions_used)


def _exterior_kernel_batch(x_rows, alpha: float):
    """``int_{|y| > 1} |x - y|^(-1-alpha) dy`` by compactified quadrature.

    Mapping each tail through y = 1 + d/(1 - d) reduces it to
    ``int_0^1 d^(alpha-1) (1 -+ x d)^(-1-alpha) dd``, evaluated batched.
    """
    x = np.asarray(x_rows, dtype=float)[:, None, None]
    B = x.shape[0]
    total = np.zeros(B)
    err_total = np.zeros(B)
    for sign in (-1.0, 1.0):

        def fd(d, sign=sign):
            return d ** (alpha - 1.0) * (1.0 + sign * x * d) ** (-1.0 - alpha)

        fn, q = _graded_batch_fn(fd, alpha - 1.0, 2.0)
        vals, errs = batch_rows(fn, np.zeros((B, 1)), np.ones((B, 1)), rel_tol=_INNER_REL)
        total += vals
        err_total += errs
    return total, err_total


# ---------------------------------------------------------------------------
# operations

def energy_regional(
    u: TestFunction1D,
    iv,
    alpha: AlphaLike,
    cfg: QuadConfig | None = None,
    strategy: str = "z",
) -> PVResult:
    """``1/2 iint_{iv x iv} (u(x) - u(y))^2 |x - y|^(-1-alpha) dx dy``.

    Any interval is affinely transferred to (-1, 1) first; the form scales
    with the half-width s as s^(1-alpha).  ``strategy`` selects between the
    correlation route ("z", default) and the independent nested route
    ("xy") used for cross-checks.
    """
    cfg = cfg or QuadConfig()
    a = as_alpha(alpha).value
    interval = _as_interval(iv)
    _require_strict_support(u, interval)

    s = interval.half_width
    m = interval.center
    if s == 1.0 and m == 0.0:
        uu = u
    else:
        uu = AffineImage(u, center=-m / s, scale=1.0 / s)
    scale = s ** (1.0 - a)

    if strategy == "z":
        res = _correlation_energy(
            uu.value, None, -1.0, 1.0, uu.support, uu.breakpoints, a, cfg,
            both_in_support=False,
        )
    elif strategy == "xy":
        res = _energy_xy(uu, -1.0, 1.0, a, cfg)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return PVResult(scale * res.value, scale * res.error_estimate, res.subdivisions_used)


def energy_ground_state(u: TestFunction1D, alpha: AlphaLike, cfg: QuadConfig | None = None) -> PVResult:
    """``1/2 iint (u/w(x) - u/w(y))^2 w(x) w(y) |x-y|^(-1-alpha)`` on (-1,1)^2
    with ``w = (1-x^2)^((alpha-1)/2)``.

    Split as a support-square block (where u/w is Lipschitz) plus the
    cross block where one factor is constant in one variable.
    """
    cfg = cfg or QuadConfig()
    a = as_alpha(alpha).value
    _require_strict_support(u, Interval(-1.0, 1.0))
    w = _ground_state_weight(a)

    def v(x):
        x = np.asarray(x, dtype=float)
        return u.value(x) / w(x)

    block1 = _correlation_energy(
        v, w, -1.0, 1.0, u.support, u.breakpoints, a, cfg, both_in_support=True
    )
    block2 = _gs_cross_term(u, a, cfg)
    return PVResult(
        block1.value + block2.value,
        block1.error_estimate + block2.error_estimate,
        block1.subdivisions_used + block2.subdivisions_used,
    )


def weighted_l2(u: TestFunction1D, weight, cfg: QuadConfig | None = None) -> PVResult:
    """``int u(x)^2 weight(x) dx`` over the support of u."""
    cfg = cfg or QuadConfig()
    s0, s1 = u.support

    def fn(x):
        x = np.asarray(x, dtype=float)
        return u.value(x) ** 2 * weight(x)

    pieces = [(fn, lo, hi) for lo, hi in panels_between(s0, s1, u.breakpoints)]
    return adaptive(pieces, cfg, raise_on_fail=True)


def verify_gsr_identity(u: TestFunction1D, alpha: AlphaLike, cfg: QuadConfig | None = None) -> FormBreakdown:
    """Evaluate all four terms of the ground-state representation and the
    residual ``energy - gs_term - kappa_term - phi_term``."""
    cfg = cfg or QuadConfig()
    a = as_alpha(alpha).value

    energy = energy_regional(u, (-1.0, 1.0), a, cfg)
    gs = energy_ground_state(u, a, cfg)
    m0 = weighted_l2(u, inv_one_minus_x2_pow(a), cfg)
    kpref = 2.0**a * specfun.kappa(1, a)
    phi_int = weighted_l2(u, phi_weight(a), cfg)

    kappa_term = kpref * m0.value
    phi_term = phi_int.value / a
    residual = energy.value - gs.value - kappa_term - phi_term
    err = (
        energy.error_estimate
        + gs.error_estimate
        + abs(kpref) * m0.error_estimate
        + phi_int.error_estimate / a
    )
    return FormBreakdown(
        energy=energy.value,
        gs_term=gs.value,
        kappa_term=kappa_term,
        phi_term=phi_term,
        residual=residual,
        error_estimate=err,
    )


def hardy_check_1d(u: TestFunction1D, iv, alpha: AlphaLike, cfg: QuadConfig | None = None) -> HardyCheck1D:
    """Check the remainder-term Hardy inequality on an arbitrary interval.

    Everything is computed on the reference interval after affine transfer
    (each term scales as s^(1-alpha), s the half-width), so the slack is
    exactly affine-covariant by construction.
    """
    cfg = cfg or QuadConfig()
    a = as_alpha(alpha).require_strict()
    interval = _as_interval(iv)
    _require_strict_support(u, interval)

    s = interval.half_width
    m = interval.center
    uu = u if (s == 1.0 and m == 0.0) else AffineImage(u, center=-m / s, scale=1.0 / s)
    scale = s ** (1.0 - a)

    lhs = energy_regional(uu, (-1.0, 1.0), a, cfg)
    main = weighted_l2(uu, hardy_weight(a), cfg)
    rem = weighted_l2(uu, hardy_weight(a, power=a - 1.0), cfg)
    kap = specfun.kappa(1, a)
    crem = specfun.remainder_coeff_1d(a, -1.0, 1.0)

    lhs_v = scale * lhs.value
    main_v = scale * kap * main.value
    rem_v = scale * crem * rem.value
    err = scale * (
        lhs.error_estimate + kap * main.error_estimate + crem * rem.error_estimate
    )
    return HardyCheck1D(
        lhs=lhs_v,
        rhs_main=main_v,
        rhs_remainder=rem_v,
        slack=lhs_v - main_v - rem_v,
        error_estimate=err,
    )


def killed_check(u: TestFunction1D, alpha: AlphaLike, cfg: QuadConfig | None = None) -> KilledCheck:
    """Check the whole-line (killed) identity and inequality.

    The full-space energy is computed two ways: regional energy plus the
    closed-form killing potential, and independently with the exterior
    kernel integral done by quadrature (``killing_term_direct``).
    """
    cfg = cfg or QuadConfig()
    a = as_alpha(alpha).value
    _require_strict_support(u, Interval(-1.0, 1.0))

    regional = energy_regional(u, (-1.0, 1.0), a, cfg)
    killing = weighted_l2(u, killing_weight(a), cfg)

    def kext_weight(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return _exterior_kernel_batch(x, a)[0]

    killing_direct = weighted_l2(u, kext_weight, cfg)

    gs = energy_ground_state(u, a, cfg)
    m0 = weighted_l2(u, inv_one_minus_x2_pow(a), cfg)
    hw = weighted_l2(u, hardy_weight(a), cfg)

    bterm = specfun.beta((1.0 + a) / 2.0, (2.0 - a) / 2.0)
    full = regional.value + killing.value
    const_term = bterm / a * m0.value
    identity_residual = full - gs.value - const_term
    ineq_slack = full - bterm / (a * 2.0**a) * hw.value

    err = (
        regional.error_estimate
        + killing.error_estimate
        + gs.error_estimate
        + bterm / a * m0.error_estimate
        + bterm / (a * 2.0**a) * hw.error_estimate
    )
    return KilledCheck(
        full_energy=full,
        regional_energy=regional.value,
        killing_term=killing.value,
        gs_term=gs.value,
        const_term=const_term,
        identity_residual=identity_residual,
        ineq_slack=ineq_slack,
        killing_term_direct=killing_direct.value,
        error_estimate=err,
    )


def phi_lower_bound_check(alpha: AlphaLike, grid_size: int = 100_000) -> PhiBoundCheck:
    """Minimum over a grid on [0, 1] of ``phi(x) - (2^alpha - 2)(1 - x^2)``."""
    a = as_alpha(alpha).require_strict()
    x = np.linspace(0.0, 1.0, int(grid_size))
    gap = specfun.phi(x, a) - (2.0**a - 2.0) * (1.0 - x**2)
    i = int(np.argmin(gap))
    return PhiBoundCheck(min_gap=float(gap[i]), argmin=float(x[i]))
