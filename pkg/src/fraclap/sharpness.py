"""Sharpness experiments: Galerkin discretization of the quadratic forms on
a boundary-graded hat basis, generalized Rayleigh-quotient minimization, and
the cutoff-sequence sweeps toward the sharp constants.

The whole-line form of two piecewise-linear functions has an exact nodal
representation: with F2 the second antiderivative of the second
antiderivative of the kernel (F2'''' = |z|^(-1-alpha)) and J the slope
jumps,

    a(u, v) = - sum_k sum_l Ju_k Jv_l F2(|x_k - y_l|).

This is used verbatim for node clusters at comparable distance; for far
pairs the fourfold difference cancels catastrophically in floating point,
so those entries are computed instead as -iint phi_i phi_j k dx dy by
tensor Gauss-Kronrod on the element pairs (smooth there).  The regional
form is the whole-line form minus the killing potential matrix; grids
carry exact boundary distances so that node separations near the endpoints
do not lose precision to rounding of 1 - |x|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import forms, specfun
from .errors import DomainError, NonConvergenceError
from .functions import TruncatedGroundState
from .quadrature import QuadConfig, batch_rows
from .specfun import AlphaLike, as_alpha

__all__ = [
    "Grid",
    "DiscreteForm",
    "RayleighResult",
    "SweepPoint",
    "graded_grid",
    "assemble",
    "min_rayleigh",
    "sharpness_sweep",
    "limit_constant",
]

_EPS = np.finfo(float).eps

FORM_KINDS = ("regional", "killed", "regional_minus_remainder")


@dataclass(frozen=True)
class Grid:
    """Nodes strictly inside (-1, 1) with exact boundary distances.

    ``dist[i]`` is the distance of node i to the endpoint ``side[i]``
    (+1 or -1), kept exactly as constructed; pair separations are formed
    from these distances so deep boundary grading does not round away.
    Includes the two anchor nodes where the outermost hats return to zero.
    """

    nodes: np.ndarray  # (m,) sorted ascending, anchors included
    dist: np.ndarray  # (m,) distance to the associated endpoint
    side: np.ndarray  # (m,) +-1

    @property
    def interior(self) -> np.ndarray:
        """Node coordinates carrying hat degrees of freedom (anchors excluded)."""
        return self.nodes[1:-1]

    def separations(self) -> np.ndarray:
        """Exact pairwise |x_i - x_j| built from boundary distances."""
        d = self.dist
        s = self.side
        same = s[:, None] == s[None, :]
        return np.where(same, np.abs(d[:, None] - d[None, :]),
                        2.0 - d[:, None] - d[None, :])


@dataclass(frozen=True)
class DiscreteForm:
    stiffness: np.ndarray
    mass: np.ndarray
    grid: np.ndarray  # interior node coordinates
    form_kind: str


@dataclass(frozen=True)
class RayleighResult:
    min_quotient: float
    eigenvector: np.ndarray
    iterations: int
    residual_norm: float


@dataclass(frozen=True)
class SweepPoint:
    n: int
    quotient: float
    limit_constant: float
    gap: float


def graded_grid(n_nodes: int, depth: float = 1e-30) -> Grid:
    """Symmetric grid of ``n_nodes`` hat nodes, geometrically graded so the
    spacing is proportional to the distance from the nearest endpoint.

    Boundary distances run from ``depth^(1/m)`` down to ``depth`` in equal
    logarithmic steps; doubling ``n_nodes`` with the same depth refines in
    log space and keeps the old nodes (nested families).
    """
    if n_nodes < 4:
        raise DomainError("need at least 4 nodes")
    if not (0.0 < depth < 0.1):
        raise DomainError("depth must lie in (0, 0.1)")
    m = n_nodes // 2
    odd = n_nodes % 2 == 1
    # the anchors (where the outermost hats return to zero) sit at depth^2:
    # that exponent belongs to every refinement of the log-equispaced
    # family, so doubling n_nodes yields nested Galerkin spaces
    expo = np.concatenate([np.arange(1, m + 1, dtype=float) / m, [2.0]])
    d_right = depth**expo  # decreasing toward the boundary
    dist_list = []
    side_list = []
    # left side: anchor + m nodes, ascending x means descending d on side -1
    dist_list.append(d_right[::-1])
    side_list.append(np.full(m + 1, -1.0))
    if odd:
        dist_list.append(np.array([1.0]))
        side_list.append(np.array([1.0]))
    dist_list.append(d_right)
    side_list.append(np.full(m + 1, 1.0))
    dist = np.concatenate(dist_list)
    side = np.concatenate(side_list)
    # construction order is already ascending in x; sorting by the float
    # coordinates would scramble nodes whose x rounds to +-1 at deep grading
    nodes = side * (1.0 - dist)
    return Grid(nodes=nodes, dist=dist, side=side)


def _f2(z: np.ndarray, alpha: float) -> np.ndarray:
    """Second antiderivative pair of the kernel: F2'''' = z^(-1-alpha)."""
    z = np.asarray(z, dtype=float)
    if abs(alpha - 1.0) < 1e-12:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = 0.25 * z**2 * (3.0 - 2.0 * np.log(z))
        return np.where(z > 0.0, out, 0.0)
    denom = alpha * (alpha - 1.0) * (2.0 - alpha) * (3.0 - alpha)
    return z ** (3.0 - alpha) / denom


def _full_stiffness(grid: Grid, alpha: float) -> np.ndarray:
    """Whole-line form matrix of the hat basis by the nodal F2 formula,
    with far pairs replaced by tensor quadrature of -phi_i phi_j k."""
    x = grid.nodes
    m = x.size
    n = m - 2  # hat count
    h = np.diff(x)  # element widths; exact for graded grids via dist diffs
    # recompute widths from exact distances where both endpoints share a side
    d, s = grid.dist, grid.side
    same = s[:-1] == s[1:]
    h = np.where(same, np.abs(d[:-1] - d[1:]), h)

    sep = grid.separations()
    f2 = _f2(sep, alpha)

    # jump matrix: hat i has jumps (1/h_i, -(1/h_i + 1/h_{i+1}), 1/h_{i+1})
    # at nodes (i, i+1, i+2) of the extended grid
    J = np.zeros((n, m))
    idx = np.arange(n)
    J[idx, idx] = 1.0 / h[:-1]
    J[idx, idx + 1] = -(1.0 / h[:-1] + 1.0 / h[1:])
    J[idx, idx + 2] = 1.0 / h[1:]

    K = -(J @ f2 @ J.T)
    K = 0.5 * (K + K.T)

    # far-pair correction: the fourfold F2 difference loses
    # eps * (D^2 / (h_i h_j))^2 relative accuracy, so beyond that scale the
    # entries are recomputed by smooth tensor quadrature
    span = h[:-1] + h[1:]
    centers_sep = sep[1:-1, 1:-1]
    hh = 0.25 * span[:, None] * span[None, :]
    far = centers_sep**2 > 1e4 * hh
    iu, ju = np.where(np.triu(far, k=1))
    if iu.size:
        vals = _far_pair_values(grid, h, iu, ju, alpha)
        K[iu, ju] = vals
        K[ju, iu] = vals
    return K


_GK_NODES = None
_GK_WEIGHTS = None


def _gk_tensor_setup():
    global _GK_NODES, _GK_WEIGHTS
    if _GK_NODES is None:
        from .quadrature import _NODES, _WK_FULL

        _GK_NODES = _NODES
        _GK_WEIGHTS = _WK_FULL
    return _GK_NODES, _GK_WEIGHTS


def _element_tables(grid: Grid):
    """Per-element description robust to deep boundary grading.

    Pure-side elements are parametrized by the exact boundary distance
    (kind +-1 = the side); elements touching or straddling the origin use
    the plain coordinate (kind 0).  Values at the left-to-right barycentric
    coordinate xi: coordinate c0 + (c1 - c0) * xi, width |stored|.
    """
    x, d, s = grid.nodes, grid.dist, grid.side
    E = x.size - 1
    kind = np.zeros(E)
    c0 = np.empty(E)
    c1 = np.empty(E)
    width = np.empty(E)
    for e in range(E):
        if s[e] == s[e + 1] and not (d[e] == 1.0 or d[e + 1] == 1.0):
            kind[e] = s[e]
            c0[e], c1[e] = d[e], d[e + 1]
            width[e] = abs(d[e + 1] - d[e])
        else:
            kind[e] = 0.0
            c0[e], c1[e] = x[e], x[e + 1]
            width[e] = x[e + 1] - x[e]
    return kind, c0, c1, width


def _pair_distance(kind_a, ca, kind_b, cb):
    """|x - y| from the stable per-element coordinates (broadcasting)."""
    both_pure = (kind_a != 0.0) & (kind_b != 0.0)
    same = both_pure & (kind_a == kind_b)
    opposite = both_pure & (kind_a != kind_b)
    out = np.empty(np.broadcast(ca, cb).shape)
    out[...] = np.abs(ca - cb)  # covers kind 0 / kind 0
    np.copyto(out, np.abs(ca - cb), where=same)
    np.copyto(out, 2.0 - ca - cb, where=opposite)
    # pure side against plain coordinate: |side (1 - d) - y| = (1 - side y) - d
    mixed_a = (kind_a != 0.0) & (kind_b == 0.0)
    np.copyto(out, np.abs((1.0 - kind_a * cb) - ca), where=mixed_a)
    mixed_b = (kind_a == 0.0) & (kind_b != 0.0)
    np.copyto(out, np.abs((1.0 - kind_b * ca) - cb), where=mixed_b)
    return out


def _far_pair_values(grid: Grid, h, iu, ju, alpha, chunk: int = 8192) -> np.ndarray:
    """-iint phi_i(x) phi_j(y) |x-y|^(-1-alpha) for well-separated hats.

    All coordinates and kernel distances are built from exact boundary
    distances, so entries stay accurate for arbitrarily deep grading.
    """
    nodes15, w15 = _gk_tensor_setup()
    xi15 = 0.5 * (1.0 + nodes15)  # barycentric nodes in [0, 1]
    kind, c0, c1, width = _element_tables(grid)
    out = np.zeros(iu.size)
    # tent i (0-based hats at extended node i+1) has elements i (rising
    # left-to-right toward the peak?) -- element e spans nodes (e, e+1);
    # on element i the tent rises iff the element is left of the peak in x.
    for start in range(0, iu.size, chunk):
        sl = slice(start, min(start + chunk, iu.size))
        ii = iu[sl] + 1
        jj = ju[sl] + 1
        acc = np.zeros(ii.size)
        for ei in (0, 1):  # 0: element left of peak (rises), 1: right (falls)
            ea = ii - 1 + ei
            ka = kind[ea]
            a0, a1, wa = c0[ea], c1[ea], width[ea]
            xs = a0[:, None] + (a1 - a0)[:, None] * xi15  # (P,15) elem coords
            pa = xi15[None, :] if ei == 0 else (1.0 - xi15)[None, :]
            pa = np.broadcast_to(pa, xs.shape)
            for ej in (0, 1):
                eb = jj - 1 + ej
                kb = kind[eb]
                b0, b1, wb = c0[eb], c1[eb], width[eb]
                ys = b0[:, None] + (b1 - b0)[:, None] * xi15
                pb = xi15[None, :] if ej == 0 else (1.0 - xi15)[None, :]
                pb = np.broadcast_to(pb, ys.shape)
                dist = _pair_distance(
                    ka[:, None, None], xs[:, :, None],
                    kb[:, None, None], ys[:, None, :],
                )
                kern = dist ** (-1.0 - alpha)
                integ = np.einsum("pi,pj,pij,i,j->p", pa, pb, kern, w15, w15)
                acc += integ * (0.25 * wa * wb)
        out[sl] = -acc
    return out


def _band_matrix(grid: Grid, weight_of_d) -> np.ndarray:
    """Tridiagonal-band Gram matrix ``int phi_i phi_j weight dx``.

    ``weight_of_d`` takes the distance d = 1 - |x| to the nearest endpoint
    (every weight used here is a function of d alone).  Elements are
    parametrized by their exact endpoint distances; d is linear along an
    element only while the element stays on one side of the origin, so
    elements straddling 0 are split there into two sub-elements.
    """
    x = grid.nodes
    d, s = grid.dist, grid.side
    m = x.size
    n = m - 2
    E = m - 1  # elements

    # sub-element table: parent element, barycentric range [t0, t1],
    # endpoint distances (linear in t on the sub-element) and width
    parent = []
    t0s, t1s, dlos, dhis, widths = [], [], [], [], []
    for e in range(E):
        xl, xr = x[e], x[e + 1]
        if s[e] == s[e + 1] or xl >= 0.0 or xr <= 0.0:
            parent.append(e)
            t0s.append(0.0)
            t1s.append(1.0)
            if s[e] == s[e + 1]:
                dlos.append(d[e])
                dhis.append(d[e + 1])
                widths.append(abs(d[e] - d[e + 1]))
            else:
                dlos.append(1.0 - abs(xl))
                dhis.append(1.0 - abs(xr))
                widths.append(xr - xl)
        else:
            tm = (0.0 - xl) / (xr - xl)
            parent.extend((e, e))
            t0s.extend((0.0, tm))
            t1s.extend((tm, 1.0))
            dlos.extend((1.0 - abs(xl), 1.0))
            dhis.extend((1.0, 1.0 - abs(xr)))
            widths.extend((-xl, xr))
    parent = np.asarray(parent)
    t0s = np.asarray(t0s)
    t1s = np.asarray(t1s)
    dlos = np.asarray(dlos)
    dhis = np.asarray(dhis)
    widths = np.asarray(widths)

    def integrand(kind):
        # kind 0: falling^2, 1: falling*rising, 2: rising^2 on each element,
        # with t the barycentric coordinate of the *parent* element
        def fn(ss):
            # ss in [0,1] along the sub-element, (S,P,15)
            t = t0s[:, None, None] + (t1s - t0s)[:, None, None] * ss
            dd = dlos[:, None, None] + (dhis - dlos)[:, None, None] * ss
            ww = weight_of_d(dd)
            if kind == 0:
                shape = (1.0 - t) ** 2
            elif kind == 1:
                shape = t * (1.0 - t)
            else:
                shape = t**2
            return ww * shape

        return fn

    S = parent.size
    vals = []
    for kind in range(3):
        v, _ = batch_rows(
            integrand(kind), np.zeros((S, 1)), np.ones((S, 1)), rel_tol=1e-12
        )
        vals.append(v * widths)
    v_ff, v_fr, v_rr = vals

    M = np.zeros((n, n))
    # element e sits between extended nodes e, e+1; tent k lives at extended
    # node k+1.  On element e: tent e-1 falls (shape 1-t), tent e rises (t).
    for sub in range(S):
        e = parent[sub]
        k_fall = e - 1  # hat index (0-based interior)
        k_rise = e
        if 0 <= k_fall < n:
            M[k_fall, k_fall] += v_ff[sub]
        if 0 <= k_rise < n:
            M[k_rise, k_rise] += v_rr[sub]
        if 0 <= k_fall < n and 0 <= k_rise < n:
            M[k_fall, k_rise] += v_fr[sub]
            M[k_rise, k_fall] += v_fr[sub]
    return M


def assemble(
    form_kind: str,
    alpha: AlphaLike,
    n_nodes: int,
    cfg: QuadConfig | None = None,
    *,
    depth: float = 1e-30,
) -> DiscreteForm:
    """Stiffness and weighted-mass matrices of the hat basis on a
    boundary-graded grid.

    Stiffness: polarization of the selected quadratic form (whole-line for
    "killed"; minus the killing potential for "regional"; additionally
    minus the remainder bilinear form for "regional_minus_remainder").
    Mass: weight ``2^alpha (1 - x^2)^(-alpha)`` for every kind.
    """
    if form_kind not in FORM_KINDS:
        raise DomainError(f"unknown form kind {form_kind!r}")
    a = as_alpha(alpha).value
    if form_kind == "regional_minus_remainder" and not (1.0 < a < 2.0):
        raise DomainError("remainder subtraction requires 1 < alpha < 2")
    if n_nodes < 4:
        raise DomainError("n_nodes must be >= 4")
    grid = graded_grid(n_nodes, depth=depth)

    K = _full_stiffness(grid, a)
    if form_kind in ("regional", "regional_minus_remainder"):
        def kill_w(d):
            return (d ** (-a) + (2.0 - d) ** (-a)) / a

        K = K - _band_matrix(grid, kill_w)
    if form_kind == "regional_minus_remainder":
        crem = specfun.remainder_coeff_1d(a, -1.0, 1.0)

        def rem_w(d):
            return crem * (2.0 ** (a - 1.0)) * (d * (2.0 - d)) ** (1.0 - a)

        K = K - _band_matrix(grid, rem_w)

    def mass_w(d):
        return 2.0**a * (d * (2.0 - d)) ** (-a)

    M = _band_matrix(grid, mass_w)
    return DiscreteForm(stiffness=K, mass=M, grid=grid.interior.copy(), form_kind=form_kind)


def min_rayleigh(df: DiscreteForm, tol: float = 1e-10, max_iter: int = 600) -> RayleighResult:
    """Smallest generalized eigenvalue of (stiffness, mass) by shifted
    inverse iteration after symmetric diagonal scaling and a Cholesky
    reduction of the mass matrix.
    """
    import scipy.linalg as sla

    K = np.asarray(df.stiffness, dtype=float)
    M = np.asarray(df.mass, dtype=float)
    n = K.shape[0]
    sc = 1.0 / np.sqrt(np.diag(M))
    Ks = K * sc[:, None] * sc[None, :]
    Ms = M * sc[:, None] * sc[None, :]
    Ks = 0.5 * (Ks + Ks.T)
    Ms = 0.5 * (Ms + Ms.T)

    kf = sla.cho_factor(Ks, lower=True, check_finite=False)
    v = np.ones(n) / math.sqrt(n)
    rho_prev = np.inf
    rho = 0.0
    shift = 0.0
    factor = kf
    shifted = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        yv = Ms @ v
        v_new = sla.cho_solve(factor, yv, check_finite=False)
        v_new /= math.sqrt(abs(v_new @ (Ms @ v_new)))
        v = v_new
        kv = Ks @ v
        mv = Ms @ v
        rho = float(v @ kv) / float(v @ mv)
        res = kv - rho * mv
        residual = float(np.linalg.norm(res) / max(np.linalg.norm(kv), 1e-300))
        if residual <= tol:
            break
        # after settling, move to a Rayleigh shift for cubic convergence
        if not shifted and abs(rho - rho_prev) < 1e-3 * abs(rho):
            try:
                factor = sla.cho_factor(
                    Ks - 0.95 * rho * Ms, lower=True, check_finite=False
                )
                shift = 0.95 * rho
                shifted = True
            except np.linalg.LinAlgError:
                pass
        rho_prev = rho
    else:
        raise NonConvergenceError(
            f"inverse iteration did not reach tol={tol} in {max_iter} iterations "
            f"(residual {residual})"
        )
    _ = shift
    return RayleighResult(
        min_quotient=rho,
        eigenvector=v * sc,
        iterations=iterations,
        residual_norm=residual,
    )


def limit_constant(form_kind: str, alpha: AlphaLike) -> float:
    """The sharp constant the quotients are bounded below by."""
    a = as_alpha(alpha).value
    if form_kind == "killed":
        return specfun.beta((1.0 + a) / 2.0, (2.0 - a) / 2.0) / (a * 2.0**a)
    if form_kind in ("regional", "regional_minus_remainder"):
        return specfun.kappa(1, a)
    raise DomainError(f"unknown form kind {form_kind!r}")


def sharpness_sweep(
    form_kind: str,
    alpha: AlphaLike,
    n_list: Sequence[int],
    cfg: QuadConfig | None = None,
) -> list[SweepPoint]:
    """Quotients of the cutoff sequence u_n = psi_n * w against the sharp
    constant of the chosen form.

    The denominator is the Hardy-weighted norm ``int u^2 (2/(1-x^2))^alpha``,
    which diverges logarithmically along the sequence, so convergence of
    the quotient toward the constant is slow by design.
    """
    if form_kind not in FORM_KINDS:
        raise DomainError(f"unknown form kind {form_kind!r}")
    cfg = cfg or QuadConfig()
    a = as_alpha(alpha).value
    if form_kind == "regional_minus_remainder" and not (1.0 < a < 2.0):
        raise DomainError("remainder subtraction requires 1 < alpha < 2")
    if form_kind == "regional" and a < 1.0:
        # the kappa floor for the plain regional quotient needs the
        # boundary-profile term to be nonnegative, which holds for
        # alpha >= 1 only
        raise DomainError("regional sweep requires alpha >= 1")
    if any(n2 <= n1 for n1, n2 in zip(n_list, n_list[1:])):
        raise DomainError("n_list must be strictly increasing")

    c_limit = limit_constant(form_kind, a)
    out = []
    for n in n_list:
        u = TruncatedGroundState(n=int(n), alpha=a)
        numer = forms.energy_regional(u, (-1.0, 1.0), a, cfg).value
        if form_kind == "killed":
            numer += forms.weighted_l2(u, forms.killing_weight(a), cfg).value
        elif form_kind == "regional_minus_remainder":
            crem = specfun.remainder_coeff_1d(a, -1.0, 1.0)
            numer -= crem * forms.weighted_l2(
                u, forms.hardy_weight(a, power=a - 1.0), cfg
            ).value
        mass = forms.weighted_l2(u, forms.hardy_weight(a), cfg).value
        q = float(numer / mass)
        out.append(SweepPoint(n=int(n), quotient=q, limit_constant=c_limit, gap=q - c_limit))
    return out
