import numpy as np
import pytest

from fraclap.convex import (
    Disk,
    MCConfig,
    ProductBump2D,
    RadialBump2D,
    Rectangle,
    hardy_check_convex,
)
from fraclap.errors import DomainError

DISK = Disk((0.0, 0.0), 1.0)
SQUARE = Rectangle((-0.5, -0.5), (0.5, 0.5))


class _Zero2D:
    def value(self, pts):
        return np.zeros(np.asarray(pts).shape[:-1])

    def support_strictly_inside(self, dom):
        return True


class TestDomains:
    def test_disk_geometry(self):
        assert DISK.diameter == 2.0
        assert DISK.area == pytest.approx(np.pi)
        pts = np.array([[0.0, 0.0], [0.5, 0.0], [0.0, -0.9]])
        assert np.allclose(DISK.dist_to_complement(pts), [1.0, 0.5, 0.1])

    def test_rect_geometry(self):
        assert SQUARE.diameter == pytest.approx(np.sqrt(2.0))
        assert SQUARE.area == pytest.approx(1.0)
        pts = np.array([[0.0, 0.0], [0.4, 0.1]])
        assert np.allclose(SQUARE.dist_to_complement(pts), [0.5, 0.1])

    def test_sampling_inside(self):
        rng = np.random.default_rng(0)
        for dom in (DISK, SQUARE):
            pts = dom.sample(rng, 10_000)
            assert np.all(dom.contains(pts))

    def test_disk_sampling_uniform(self):
        rng = np.random.default_rng(1)
        pts = DISK.sample(rng, 200_000)
        # fraction within radius r should be r^2
        frac = np.mean(np.linalg.norm(pts, axis=1) < 0.5)
        assert frac == pytest.approx(0.25, abs=5e-3)

    def test_validation(self):
        with pytest.raises(DomainError):
            Disk((0, 0), 0.0)
        with pytest.raises(DomainError):
            Rectangle((0, 0), (0, 1))


class TestBumps2D:
    def test_radial_peak_and_support(self):
        u = RadialBump2D((0.1, -0.2), 0.5)
        assert u.value(np.array([[0.1, -0.2]]))[0] == pytest.approx(1.0)
        assert u.value(np.array([[0.1 + 0.51, -0.2]]))[0] == 0.0
        assert u.support_strictly_inside(DISK)
        assert not RadialBump2D((0.6, 0.0), 0.5).support_strictly_inside(DISK)

    def test_product_support(self):
        u = ProductBump2D((0.0, 0.0), (0.3, 0.2))
        assert u.value(np.array([[0.0, 0.0]]))[0] == pytest.approx(1.0)
        assert u.support_strictly_inside(SQUARE)
        assert not ProductBump2D((0.3, 0.0), (0.3, 0.2)).support_strictly_inside(SQUARE)


class TestHardyConvex:
    def test_zero_function(self):
        r = hardy_check_convex(DISK, _Zero2D(), 1.5, MCConfig(10_000, 1, "none"))
        assert r.lhs == 0.0 and r.slack == 0.0
        assert r.rhs_main == 0.0 and r.rhs_remainder == 0.0

    @pytest.mark.parametrize("strat", ["none", "radial"])
    def test_positive_slack_disk(self, strat):
        u = RadialBump2D((0.0, 0.0), 0.7)
        r = hardy_check_convex(DISK, u, 1.5, MCConfig(200_000, 11, strat))
        assert r.slack >= -2.0 * r.slack_stderr
        assert r.slack > 0.0

    def test_square_positive_slack(self):
        u = RadialBump2D((0.0, 0.0), 0.35)
        r = hardy_check_convex(SQUARE, u, 1.25, MCConfig(100_000, 12, "radial"))
        assert r.slack >= -2.0 * r.slack_stderr

    def test_product_bump_run(self):
        u = ProductBump2D((0.05, -0.02), (0.3, 0.25))
        r = hardy_check_convex(SQUARE, u, 1.5, MCConfig(100_000, 13, "radial"))
        assert r.slack >= -2.0 * r.slack_stderr
        assert r.rhs_main > 0.0 and r.rhs_remainder > 0.0

    def test_bit_reproducible(self):
        u = RadialBump2D((0.15, -0.1), 0.5)
        mc = MCConfig(50_000, 42, "radial")
        r1 = hardy_check_convex(DISK, u, 1.25, mc)
        r2 = hardy_check_convex(DISK, u, 1.25, mc)
        assert r1 == r2

    def test_translation_invariance(self):
        u = RadialBump2D((0.15, -0.1), 0.5)
        mc = MCConfig(100_000, 42, "radial")
        r1 = hardy_check_convex(DISK, u, 1.25, mc)
        shift = (0.37, -0.21)
        r2 = hardy_check_convex(DISK.translate(shift), u.translate(shift), 1.25, mc)
        comb = np.hypot(r1.slack_stderr, r2.slack_stderr)
        assert abs(r1.slack - r2.slack) <= 3.0 * comb

    def test_stderr_scaling(self):
        u = RadialBump2D((0.15, -0.1), 0.5)
        r1 = hardy_check_convex(DISK, u, 1.25, MCConfig(100_000, 42, "radial"))
        r2 = hardy_check_convex(DISK, u, 1.25, MCConfig(200_000, 42, "radial"))
        ratio = r2.slack_stderr / r1.slack_stderr
        assert 1 / np.sqrt(2) - 0.1 <= ratio <= 1 / np.sqrt(2) + 0.1

    def test_rejects_alpha_outside_range(self):
        u = RadialBump2D((0.0, 0.0), 0.5)
        with pytest.raises(DomainError):
            hardy_check_convex(DISK, u, 0.9, MCConfig(10_000, 1))
        with pytest.raises(DomainError):
            hardy_check_convex(DISK, u, 1.0, MCConfig(10_000, 1))

    def test_rejects_support_touching_boundary(self):
        with pytest.raises(DomainError):
            hardy_check_convex(DISK, RadialBump2D((0.5, 0.0), 0.5), 1.5, MCConfig(10_000, 1))
