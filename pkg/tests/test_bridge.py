import math

import numpy as np
import pytest

from toric.bridge import (
    BridgeUndefinedError,
    bridge_cone_residual,
    bridge_construct,
    bridge_geometry,
    bridge_sweep,
    verify_bridge_equivalence,
)
from toric.section import SectionProblem, section_residual


def sp(R, r, rho=0.0, phi=0.0):
    return SectionProblem.from_values(R, r, rho, phi)


class TestGeometry:
    def test_frozen_example(self):
        g = bridge_geometry(sp(3, 1, rho=0.5, phi=math.pi / 4))
        (c1, c2) = g.circle_centers_zy
        assert c1 == pytest.approx((3 * math.sqrt(2), -0.5))
        assert c2 == pytest.approx((-3 * math.sqrt(2), -0.5))
        assert g.circle_radius == pytest.approx(math.sqrt(2))
        assert g.cone_vertex == pytest.approx((0.0, 0.5, 0.0))
        assert g.k == pytest.approx(math.cos(math.pi / 4))
        assert not g.vertex_at_infinity

    def test_spiric_degenerate_vertex(self):
        g = bridge_geometry(sp(3, 1, rho=0.0, phi=0.0))
        assert g.circle_centers_zy[0] == pytest.approx((3.0, 0.0))
        assert g.circle_centers_zy[1] == pytest.approx((-3.0, 0.0))
        assert g.circle_radius == pytest.approx(1.0)
        assert g.cone_vertex == (0.0, 0.0, 0.0)
        assert not g.vertex_at_infinity

    def test_spiric_offset_vertex_at_infinity(self):
        g = bridge_geometry(sp(3, 1, rho=1.0, phi=0.0))
        assert g.cone_vertex is None
        assert g.vertex_at_infinity

    def test_horizontal_plane_rejected(self):
        with pytest.raises(BridgeUndefinedError, match="horizontal"):
            bridge_geometry(sp(3, 1, rho=0.5, phi=math.pi / 2))

    def test_centers_mirror_in_z(self):
        g = bridge_geometry(sp(4, 2, rho=1.3, phi=0.9))
        (z1, y1), (z2, y2) = g.circle_centers_zy
        assert z1 == -z2 and y1 == y2
        assert g.circle_radius > 0
        assert 0 < abs(g.k) <= 1


class TestConeResidual:
    def test_vertex_on_cone(self):
        p = sp(3, 1, rho=0.5, phi=0.7)
        g = bridge_geometry(p)
        assert bridge_cone_residual(g.cone_vertex, p) == pytest.approx(0.0, abs=1e-12)

    def test_ellipse_semi_axis_point(self):
        p = sp(3, 1, rho=0.5, phi=0.7)
        z0 = 2.0
        pt = (z0 * math.cos(0.7), 0.5 / math.tan(0.7), z0)
        assert bridge_cone_residual(pt, p) == pytest.approx(0.0, abs=1e-12)

    def test_sign_change_across_surface(self):
        p = sp(3, 1, rho=0.5, phi=0.7)
        inside = bridge_cone_residual((0.0, 0.5 / math.tan(0.7), 3.0), p)
        outside = bridge_cone_residual((10.0, 0.5 / math.tan(0.7), 1.0), p)
        assert inside > 0 > outside


class TestConstruction:
    def test_points_lie_on_section(self):
        p = sp(2, 1, rho=1, phi=0.1)
        out = bridge_construct(p, 512)
        for pts in out.projected:
            res = section_residual(pts[:, 0], pts[:, 1], p)
            assert float(np.abs(res).max()) <= 1e-9

    def test_output_is_mirror_symmetric(self):
        out = bridge_construct(sp(3, 1, rho=0.6, phi=0.4), 256)
        for pts in out.projected:
            flipped = np.column_stack([-pts[:, 0], pts[:, 1]])
            a = {tuple(q) for q in pts.tolist()}
            assert all(tuple(q) in a for q in flipped.tolist())

    def test_some_circle_points_miss_the_cone(self):
        # with the plane far from the center only part of each circle lifts
        out = bridge_construct(sp(3, 1, rho=2.5, phi=0.8), 256)
        assert all(0 < len(pts) < 2 * 256 for pts in out.projected)

    def test_section_beyond_reach_lifts_nothing(self):
        out = bridge_construct(sp(3, 1, rho=3.5, phi=0.9), 256)
        assert all(len(pts) == 0 for pts in out.projected)

    def test_lifted_points_on_circle_and_cone(self):
        rng = np.random.default_rng(51)
        for _ in range(50):
            R = rng.uniform(0.5, 10)
            r = rng.uniform(0.05, 1.0) * R
            rho = rng.uniform(0, R + r)
            phi = rng.uniform(0.05, 1.4) * rng.choice([-1.0, 1.0])
            p = sp(R, r, rho, phi)
            g = bridge_geometry(p)
            out = bridge_construct(p, 256)
            for (cz, cy), lift in zip(g.circle_centers_zy, out.lifted):
                if not len(lift):
                    continue
                circ = ((lift[:, 2] - cz) ** 2 + (lift[:, 1] - cy) ** 2
                        - g.circle_radius ** 2)
                assert float(np.abs(circ).max()) <= 1e-10
                cone = np.array([bridge_cone_residual(q, p) for q in lift])
                assert float(np.abs(cone).max()) <= 1e-10

    def test_both_circles_project_to_same_point_set(self):
        p = sp(3, 1, rho=0.6, phi=0.4)
        out = bridge_construct(p, 512)
        a, b = out.projected
        assert len(a) == len(b)
        # nearest-neighbour set distance
        order_a = np.lexsort((a[:, 1], a[:, 0]))
        order_b = np.lexsort((b[:, 1], b[:, 0]))
        gap = np.abs(a[order_a] - b[order_b]).max()
        assert float(gap) <= 1e-12

    def test_sample_floor(self):
        with pytest.raises(ValueError):
            bridge_construct(sp(3, 1, 0.5, 0.3), 4)


class TestEquivalence:
    def test_frozen_example(self):
        assert verify_bridge_equivalence(sp(3, 1, rho=0.6, phi=0.4), 4096) <= 1e-9

    def test_random_parameter_sweep(self):
        rng = np.random.default_rng(52)
        for _ in range(50):
            R = rng.uniform(0.5, 10)
            r = rng.uniform(0.05, 1.0) * R
            rho = rng.uniform(0, R + r)
            phi = rng.uniform(0.05, 1.4) * rng.choice([-1.0, 1.0])
            assert verify_bridge_equivalence(sp(R, r, rho, phi), 512) <= 1e-9

    def test_empty_section_vacuous(self):
        assert verify_bridge_equivalence(sp(3, 1, rho=7.0, phi=0.1), 64) == 0.0

    def test_spiric_construction_still_works(self):
        assert verify_bridge_equivalence(sp(2, 1, rho=1.0, phi=0.0), 1024) <= 1e-9


class TestSweep:
    def test_sweep_records(self):
        recs = bridge_sweep(sp(2, 1, rho=1, phi=0.1), 64)
        assert len(recs) == 64
        hits = [rec for rec in recs if rec["x"] is not None]
        assert hits
        for rec in hits:
            assert abs(section_residual(rec["x"], rec["y"],
                                        sp(2, 1, rho=1, phi=0.1))) <= 1e-9
