import numpy as np
import pytest

from fraclap.errors import DomainError
from fraclap.functions import (
    AffineImage,
    Hat,
    PolyCutoff,
    PowerFunction,
    SmoothBump,
    TruncatedGroundState,
)

ALL_KINDS = [
    SmoothBump(center=0.1, width=0.5),
    SmoothBump(center=-0.3, width=0.25, order=2.0),
    PolyCutoff(coefficients=(1.0, -0.5, 0.25), support_interval=(-0.6, 0.4)),
    Hat(nodes=(-0.5, -0.1, 0.4)),
    Hat(nodes=(-0.7, -0.2, 0.1, 0.6)),
    TruncatedGroundState(n=8, alpha=1.5),
    TruncatedGroundState(n=16, alpha=0.5),
]


@pytest.mark.parametrize("u", ALL_KINDS, ids=lambda u: type(u).__name__)
def test_compact_support(u):
    s0, s1 = u.support
    assert s0 < s1
    x_out = np.array([s0 - 1e-9, s1 + 1e-9, -5.0, 5.0])
    assert np.all(u.value(x_out) == 0.0)
    # continuous at the support boundary
    assert abs(u.value(np.array([s0 + 1e-12]))[0]) < 1e-6


@pytest.mark.parametrize("u", ALL_KINDS, ids=lambda u: type(u).__name__)
def test_derivatives_by_finite_differences(u):
    s0, s1 = u.support
    rng = np.random.default_rng(5)
    # stay away from kinks where one-sided derivatives differ
    xs = []
    while len(xs) < 12:
        x = rng.uniform(s0 + 0.05 * (s1 - s0), s1 - 0.05 * (s1 - s0))
        if all(abs(x - b) > 1e-2 for b in u.breakpoints):
            xs.append(x)
    h = 1e-6
    for x in xs:
        x = float(x)
        grid = np.array([x - h, x, x + h])
        v = u.value(grid)
        d1_fd = (v[2] - v[0]) / (2 * h)
        d2_fd = (v[2] - 2 * v[1] + v[0]) / h**2
        scale1 = max(abs(u.d1(np.array([x]))[0]), 1.0)
        scale2 = max(abs(u.d2(np.array([x]))[0]), 1.0)
        assert u.d1(np.array([x]))[0] == pytest.approx(d1_fd, abs=1e-5 * scale1)
        assert u.d2(np.array([x]))[0] == pytest.approx(d2_fd, abs=1e-3 * scale2)


def test_bump_peak_and_smoothness():
    u = SmoothBump(center=0.2, width=0.3)
    assert u.value(np.array([0.2]))[0] == pytest.approx(1.0)
    # derivative vanishes outside and decays to zero at the edge
    assert u.d1(np.array([0.499999 + 0.2]))[0] == pytest.approx(0.0, abs=1e-10)


def test_hat_shape():
    u = Hat(nodes=(-0.5, -0.1, 0.4))
    assert u.value(np.array([-0.1]))[0] == 1.0
    assert u.value(np.array([-0.5]))[0] == 0.0
    assert u.value(np.array([0.15]))[0] == pytest.approx(0.5, rel=1e-12)
    assert np.all(u.d2(np.linspace(-1, 1, 50)) == 0.0)
    with pytest.raises(DomainError):
        Hat(nodes=(0.0, 0.5))
    with pytest.raises(DomainError):
        Hat(nodes=(0.0, 0.5, 0.2))


def test_truncated_ground_state_cutoff_constraints():
    n, a = 16, 1.5
    u = TruncatedGroundState(n=n, alpha=a)
    assert u.support == (-1.0 + 1.0 / n, 1.0 - 1.0 / n)
    x = np.linspace(-1, 1, 100_001)
    psi = u.psi(x)
    assert np.all(psi[np.abs(x) <= 1 - 2.0 / n] == 1.0)
    assert np.all(psi[np.abs(x) >= 1 - 1.0 / n] == 0.0)
    # |psi'| <= 2n everywhere
    slopes = np.abs(np.diff(psi) / np.diff(x))
    assert slopes.max() <= 2.0 * n + 1e-6
    # u = psi * w
    w = (1.0 - x**2) ** (0.5 * (a - 1.0))
    assert np.allclose(u.value(x), psi * w, atol=1e-14)


def test_truncated_ground_state_validation():
    with pytest.raises(DomainError):
        TruncatedGroundState(n=2, alpha=1.5)
    with pytest.raises(DomainError):
        TruncatedGroundState(n=8, alpha=2.5)


def test_affine_image_maps_support():
    base = SmoothBump(center=0.0, width=0.5)
    img = AffineImage(base, center=2.0, scale=3.0)
    assert img.support == (0.5, 3.5)
    x = np.array([2.0, 2.75])
    assert np.allclose(img.value(x), base.value((x - 2.0) / 3.0))
    assert np.allclose(img.d1(x), base.d1((x - 2.0) / 3.0) / 3.0)


def test_power_function():
    u = PowerFunction(0.5)
    x = np.array([0.0, 0.6, -0.6])
    assert np.allclose(u.value(x), (1 - x**2) ** 0.5)
    assert u.boundary_exponent == 0.5
    # distance-form evaluation agrees where both are well-conditioned
    d = np.array([0.3])
    assert u.value_at_dist(d, +1)[0] == pytest.approx(u.value(np.array([0.7]))[0], rel=1e-13)
    with pytest.raises(DomainError):
        PowerFunction(-1.0)


def test_poly_cutoff_is_c1():
    u = PolyCutoff(coefficients=(1.0, 2.0), support_interval=(-0.5, 0.5))
    eps = 1e-8
    # value and first derivative vanish at the support edge
    assert abs(u.value(np.array([0.5 - eps]))[0]) < 1e-14
    assert abs(u.d1(np.array([0.5 - eps]))[0]) < 1e-6
