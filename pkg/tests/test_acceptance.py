"""Acceptance gate: one test per release criterion, each at its stated
tolerance.  Run with ``pytest tests/test_acceptance.py -s`` to see the
per-criterion pass lines.
"""

import json
import math
import subprocess
import sys

import numpy as np

from toric.classify import (
    verify_cassini_property,
    verify_villarceau_circles,
    villarceau_angle,
)
from toric.document import build_section_document, to_json
from toric.geometry import PlaneParams, TorusParams, plane_embed, plane_frame
from toric.section import (
    SectionProblem,
    quartic_value,
    section_coeffs,
    section_residual,
    squared_form_value,
    t_of_w,
    t_of_w_domain,
)
from toric.trace import embed_section, trace_section


def ok(name):
    print(f"[PASS] {name}", flush=True)


def random_problem(rng, phi_lo=-math.pi / 2, phi_hi=math.pi / 2):
    R = rng.uniform(0.3, 10)
    r = rng.uniform(0.05, 1.0) * R
    rho = rng.uniform(0, R + r)
    phi = rng.uniform(phi_lo, phi_hi)
    alpha = rng.uniform(0, 2 * math.pi)
    return SectionProblem.from_values(R, r, rho, phi, alpha)


def test_derivation_identity():
    """x^2 + y^2 of the embedded in-plane point collapses to
    t^2 + (rho cos phi - w sin phi)^2, to 1e-10 relative, 10^4 samples."""
    rng = np.random.default_rng(101)
    for _ in range(10_000):
        rho = rng.uniform(0, 10)
        phi = rng.uniform(-math.pi / 2, math.pi / 2)
        alpha = rng.uniform(0, 2 * math.pi)
        f = plane_frame(PlaneParams(alpha=alpha, phi=phi, rho=rho))
        t, w = rng.uniform(-20, 20, size=2)
        p = plane_embed(t, w, f)
        lhs = p[0] * p[0] + p[1] * p[1]
        rhs = t * t + (rho * math.cos(phi) - w * math.sin(phi)) ** 2
        assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1e-12)
    ok("derivation identity (10^4 samples, 1e-10 relative)")


def test_quartic_equivalence():
    """Expanded quartic coefficients reproduce the squared sqrt-form at 10^4
    random points to 1e-9 relative."""
    rng = np.random.default_rng(102)
    checked = 0
    while checked < 10_000:
        sp = random_problem(rng)
        q = section_coeffs(sp)
        bound = sp.torus.R + sp.torus.r
        pts = rng.uniform(-bound, bound, size=(500, 2))
        v1 = quartic_value(pts[:, 0], pts[:, 1], q)
        v2 = squared_form_value(pts[:, 0], pts[:, 1], sp)
        denom = np.maximum(np.maximum(np.abs(v1), np.abs(v2)), 1.0)
        assert float(np.max(np.abs(v1 - v2) / denom)) <= 1e-9
        checked += len(pts)
    ok("quartic equivalence (10^4 samples, 1e-9 relative)")


def test_embedding_correctness():
    """Every traced point embeds onto the torus to 1e-8 and onto the plane to
    1e-10, over 50 random parameter sets."""
    rng = np.random.default_rng(103)
    for _ in range(50):
        sp = random_problem(rng)
        curve = embed_section(trace_section(sp, 192), sp)
        assert curve.max_torus_residual <= 1e-8
        assert curve.max_plane_residual <= 1e-10
    ok("embedding correctness (50 parameter sets, torus 1e-8 / plane 1e-10)")


def test_mirror_symmetry():
    """section_residual(t, w) == section_residual(-t, w) exactly."""
    rng = np.random.default_rng(104)
    for _ in range(10):
        sp = random_problem(rng)
        for t, w in rng.uniform(-15, 15, size=(1000, 2)):
            assert section_residual(t, w, sp) == section_residual(-t, w, sp)
    ok("mirror symmetry (10^4 samples, exact)")


def test_named_curve_equatorial():
    """(a) equatorial section radii R +- r to 1e-9."""
    sp = SectionProblem.from_values(2, 1, rho=0, phi=math.pi / 2)
    curve = trace_section(sp, 512)
    radii = sorted(float(np.hypot(p[:, 0], p[:, 1]).max()) for p in curve.polylines2d)
    assert abs(radii[0] - 1.0) <= 1e-9
    assert abs(radii[1] - 3.0) <= 1e-9
    for p in curve.polylines2d:
        assert float(np.ptp(np.hypot(p[:, 0], p[:, 1]))) <= 1e-9
    ok("named curves (a): equatorial radii R+-r to 1e-9")


def test_named_curve_villarceau():
    """(b) bitangent central section for R=2, r=1 traces as exactly two
    components that fit circles of radius 2 to 1e-5."""
    phi = villarceau_angle(TorusParams(2, 1))
    assert phi == math.atan(math.sqrt(3))
    sp = SectionProblem.from_values(2, 1, rho=0, phi=phi)
    fits = verify_villarceau_circles(trace_section(sp, 512), sp)
    assert len(fits) == 2
    for f in fits:
        assert abs(f.radius - 2.0) <= 1e-5
        assert f.max_radial_deviation <= 1e-5
    ok("named curves (b): Villarceau 2 components, circle radius 2 +- 1e-5")


def test_named_curve_cassini():
    """(c) Cassini focal product deviation <= 1e-6 at resolution 512."""
    sp = SectionProblem.from_values(3, 1, rho=1, phi=0)
    dev = verify_cassini_property(trace_section(sp, 512), sp)
    assert dev <= 1e-6
    ok("named curves (c): Cassini focal product deviation <= 1e-6")


def test_named_curve_lemniscate():
    """(d) lemniscate trace contains the node (0, 0) within 1e-6."""
    sp = SectionProblem.from_values(2, 1, rho=1, phi=0)
    curve = trace_section(sp, 512)
    d = min(float(np.hypot(p[:, 0], p[:, 1]).min()) for p in curve.polylines2d)
    assert d <= 1e-6
    ok("named curves (d): lemniscate trace contains (0,0) within 1e-6")


def test_bridge_equivalence():
    """Cone-cylinder construction lands on the section to 1e-9 for 50 random
    parameter sets with |phi| in [0.05, 1.4]; lifted points satisfy the circle
    and cone equations to 1e-10."""
    from toric.bridge import (
        bridge_cone_residual,
        bridge_construct,
        bridge_geometry,
        verify_bridge_equivalence,
    )
    rng = np.random.default_rng(106)
    for _ in range(50):
        R = rng.uniform(0.3, 10)
        r = rng.uniform(0.05, 1.0) * R
        rho = rng.uniform(0, R + r)
        phi = rng.uniform(0.05, 1.4) * rng.choice([-1.0, 1.0])
        sp = SectionProblem.from_values(R, r, rho, phi)
        assert verify_bridge_equivalence(sp, 512) <= 1e-9
        geo = bridge_geometry(sp)
        out = bridge_construct(sp, 256)
        for (cz, cy), lift in zip(geo.circle_centers_zy, out.lifted):
            if not len(lift):
                continue
            circ = ((lift[:, 2] - cz) ** 2 + (lift[:, 1] - cy) ** 2
                    - geo.circle_radius ** 2)
            assert float(np.abs(circ).max()) <= 1e-10
            cone = np.array([bridge_cone_residual(q, sp) for q in lift])
            assert float(np.abs(cone).max()) <= 1e-10
    ok("bridge equivalence (50 parameter sets, 1e-9; memberships 1e-10)")


def _inner_radicand_roots(sp):
    """Domain endpoints located by bisection on the inner radicand, kept
    independent of the closed form used in the implementation."""
    r = sp.torus.r
    rho, phi = sp.plane.rho, sp.plane.phi
    cp, sip = math.cos(phi), math.sin(phi)

    def g(w):
        return r * r - (w * cp + rho * sip) ** 2

    w_peak = -rho * sip / cp
    span = (r + rho + 1.0) / abs(cp) + 1.0
    roots = []
    for bracket in ((w_peak - span, w_peak), (w_peak, w_peak + span)):
        a, b = bracket if g(bracket[0]) < 0 else bracket[::-1]  # g(a) < 0 <= g(b)
        for _ in range(200):
            mid = 0.5 * (a + b)
            if g(mid) < 0:
                a = mid
            else:
                b = mid
        roots.append(0.5 * (a + b))
    return min(roots), max(roots)


def test_branch_parametrization_cross_validation():
    """Analytic t(w) branch points satisfy the implicit equation to 1e-9 and
    the branch domain endpoints match the derived interval to 1e-12."""
    rng = np.random.default_rng(107)
    for _ in range(20):
        sp = random_problem(rng, phi_lo=-1.4, phi_hi=1.4)
        r = sp.torus.r
        rho, phi = sp.plane.rho, sp.plane.phi
        cp, sip = math.cos(phi), math.sin(phi)
        lo, hi = t_of_w_domain(sp)
        oracle_lo, oracle_hi = _inner_radicand_roots(sp)
        assert abs(lo - oracle_lo) <= 1e-12
        assert abs(hi - oracle_hi) <= 1e-12
        # inner radicand vanishes at the endpoints
        for w_end in (lo, hi):
            assert abs(r * r - (w_end * cp + rho * sip) ** 2) <= 1e-10
        for w in np.linspace(lo, hi, 500):
            for so in (+1, -1):
                for si in (+1, -1):
                    t = t_of_w(w, so, si, sp)
                    if t is not None:
                        assert abs(section_residual(t, w, sp)) <= 1e-9
    ok("t(w) cross-validation (residual 1e-9, domain endpoints 1e-12)")


def test_cli_service_parity():
    """CLI `trace --format json` and GET /api/section return identical bytes
    for 10 parameter sets; invalid input exits 2 / returns HTTP 400 naming the
    violated invariant."""
    from fastapi.testclient import TestClient

    from toric.service import create_app

    client = TestClient(create_app())
    rng = np.random.default_rng(108)
    param_sets = [
        dict(R=2.0, r=1.0, rho=1.0, alpha=0.0, phi=0.0),
        dict(R=2.0, r=1.0, rho=0.0,
             alpha=0.0, phi=math.degrees(villarceau_angle(TorusParams(2, 1)))),
        dict(R=3.0, r=1.0, rho=2.0, alpha=10.0, phi=0.0),
        dict(R=2.0, r=1.0, rho=0.5, alpha=0.0, phi=90.0),
        dict(R=3.0, r=1.0, rho=5.0, alpha=0.0, phi=10.0),
    ]
    while len(param_sets) < 10:
        R = float(round(rng.uniform(0.5, 8), 3))
        r = float(round(rng.uniform(0.1, 1.0) * R, 3))
        param_sets.append(dict(
            R=R, r=r, rho=float(round(rng.uniform(0, R + r), 3)),
            alpha=float(round(rng.uniform(0, 360), 3)),
            phi=float(round(rng.uniform(-90, 90), 3))))
    for ps in param_sets:
        cli = subprocess.run(
            [sys.executable, "-m", "toric", "trace",
             "--R", repr(ps["R"]), "--r", repr(ps["r"]),
             "--rho", repr(ps["rho"]), "--alpha", repr(ps["alpha"]),
             "--phi", repr(ps["phi"]), "--resolution", "64",
             "--format", "json"],
            capture_output=True)
        assert cli.returncode == 0, cli.stderr
        http = client.get("/api/section", params={**ps, "resolution": 64})
        assert http.status_code == 200
        assert cli.stdout == http.content

    bad_cli = subprocess.run(
        [sys.executable, "-m", "toric", "trace", "--R", "1", "--r", "2"],
        capture_output=True, text=True)
    assert bad_cli.returncode == 2 and "R >= r" in bad_cli.stderr
    bad_http = client.get("/api/section", params={"R": 1, "r": 2})
    assert bad_http.status_code == 400 and "R >= r" in bad_http.json()["error"]
    ok("CLI/service parity (10 parameter sets byte-identical; errors named)")
