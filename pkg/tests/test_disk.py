"""Character-disk estimates and the closed-arc power machinery.

A1 is the exactly solvable case: the normalized character of lam=(2l) is
sin((2l+1)u)/((2l+1) sin u) at theta=(u,), minimized over all l >= 1 at
l=1, u=pi/2 with value -1/3. Everything else is property-tested.
"""

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from adjointlab.characters import (
    CharacterSample,
    normalized_character,
    theta_of_torus_fraction,
    weight_multiplicities,
)
from adjointlab.disk import (
    ArcSpec,
    DiskParam,
    arc_constants,
    delta_lower_bound_check,
    disk_requirement,
    empirical_disk_constant,
    final_inequality_check,
    frobenius_deviation,
    pigeonhole_batch,
    pigeonhole_k,
    proof_constant_from_statement,
    random_unitary,
    statement_constant_from_proof,
    telescoping_check,
)


def dirichlet_ratio_min(l):
    """Brute 1-D minimum of sin((2l+1)u)/((2l+1) sin u) over (0, pi)."""
    n = 2 * l + 1

    def f(u):
        return np.sin(n * u) / (n * np.sin(u))

    us = np.linspace(1e-4, np.pi - 1e-4, 20001)
    k = int(np.argmin(f(us)))
    res = minimize_scalar(f, bounds=(us[max(k - 1, 0)], us[min(k + 1, len(us) - 1)]),
                          method="bounded", options={"xatol": 1e-12})
    return float(res.fun)


def test_disk_param_membership():
    d = DiskParam(0.0)  # center 1/2, radius 1/2
    assert d.contains(0.5) and d.contains(0.0) and d.contains(1.0)
    assert not d.contains(-0.1)
    assert not d.contains(0.5 + 0.6j)
    with pytest.raises(ValueError):
        DiskParam(1.0)
    with pytest.raises(ValueError):
        DiskParam(-1.5)


def test_disk_requirement_algebra(rng):
    # real points are fixed, the unit circle maps to -1, and membership in
    # the c-disk is exactly c <= h(z)
    for r in (-0.9, -1 / 3, 0.0, 0.7):
        assert disk_requirement(r) == pytest.approx(r, abs=1e-14)
    for phi in (0.3, 2.0, 4.4):
        assert disk_requirement(np.exp(1j * phi)) == pytest.approx(-1.0, abs=1e-12)
    with pytest.raises(ValueError):
        disk_requirement(1.0)
    with pytest.raises(ValueError):
        disk_requirement(1.0 + 1e-12j)
    zs = rng.uniform(-1, 1, 400) + 1j * rng.uniform(-1, 1, 400)
    zs = zs[np.abs(zs) <= 0.999]
    h = disk_requirement(zs)
    for c in (-0.9, -1 / 3, 0.0, 0.5):
        disk = DiskParam(c)
        inside = np.array([disk.contains(z, tol=1e-12) for z in zs])
        assert np.array_equal(inside, c <= h + 1e-9)


def test_constant_conventions():
    assert statement_constant_from_proof(1 / 3) == pytest.approx(-1 / 3)
    assert statement_constant_from_proof(0.5) == 0.0
    for c in (-0.9, -1 / 3, 0.2):
        assert statement_constant_from_proof(proof_constant_from_statement(c)) == pytest.approx(c)


def test_a1_disk_constant_exact(systems):
    est = empirical_disk_constant(systems["A1"], 8, 512)
    assert est.c_hat == pytest.approx(-1 / 3, abs=1e-12)
    assert est.sample.lam == (2,)
    assert est.sample.theta[0] == pytest.approx(np.pi / 2, abs=1e-12)
    assert est.sample.z == pytest.approx(-1 / 3, abs=1e-12)
    assert {e.lam for e in est.per_irrep} == {(2,), (4,), (6,), (8,)}
    for entry in est.per_irrep:
        assert entry.h >= est.c_hat - 1e-15
        # each per-irrep grid minimum is bounded below by the true 1-D min
        l = entry.lam[0] // 2
        assert entry.h >= dirichlet_ratio_min(l) - 1e-9


def test_a1_five_dim_minimum(systems):
    # lam=(4): the grid minimum approaches the analytic -1/4
    est = empirical_disk_constant(systems["A1"], 4, 4096)
    by_lam = {e.lam: e.h for e in est.per_irrep}
    assert by_lam[(4,)] == pytest.approx(-0.25, abs=1e-5)
    assert dirichlet_ratio_min(2) == pytest.approx(-0.25, abs=1e-9)


def test_disk_constant_monotone(systems):
    rs = systems["A2"]
    by_wb = [empirical_disk_constant(rs, wb, 64).c_hat for wb in (2, 4, 6)]
    assert by_wb[0] >= by_wb[1] - 1e-12
    assert by_wb[1] >= by_wb[2] - 1e-12
    by_grid = [empirical_disk_constant(rs, 4, n).c_hat for n in (32, 64, 128)]
    assert by_grid[0] >= by_grid[1] - 1e-9
    assert by_grid[1] >= by_grid[2] - 1e-9
    assert all(-1 < c < 0 for c in by_wb + by_grid)


def test_disk_constant_no_weights(systems):
    with pytest.raises(ValueError):
        empirical_disk_constant(systems["A2"], 1, 64)  # only the trivial weight


def test_arc_constants_pinned():
    c = arc_constants(ArcSpec(0.5, 0.5), 2)
    assert (c.m, c.q) == (0.5, 3)
    assert c.delta == pytest.approx(0.225)
    assert c.p == 5
    assert c.epsilon == pytest.approx(1 / 900)
    assert c.bound_b == 2
    c2 = arc_constants(ArcSpec(0.4, 0.6), 2)
    assert (c2.m, c2.q) == (pytest.approx(0.4), 3)
    c3 = arc_constants(ArcSpec(0.25, 0.75), 4)
    assert c3.q == 5
    assert c3.delta > 0
    assert c3.p == int(1 / c3.delta) + 1
    assert c3.epsilon == pytest.approx(1 / (2 * c3.p * c3.q) ** 2)


def test_arc_spec_validation():
    with pytest.raises(ValueError):
        ArcSpec(0.0, 0.5)
    with pytest.raises(ValueError):
        ArcSpec(0.6, 0.5)
    with pytest.raises(ValueError):
        ArcSpec(0.5, 1.0)
    with pytest.raises(ValueError):
        arc_constants(ArcSpec(0.4, 0.6), 0)


def test_pigeonhole_pins():
    arc = ArcSpec(0.05, 0.95)
    consts = arc_constants(arc, 2)
    for x, brute in [(0.5, 1), (1 / 3, 1), (0.1, 3)]:
        k, bk = pigeonhole_k(x, consts, arc)
        assert bk == brute
        assert consts.bound_b <= k <= 2 * consts.p * consts.q
        assert np.cos(2 * np.pi * k * x) <= 1e-8


def test_pigeonhole_batch_properties(rng):
    arc = ArcSpec(0.1, 0.9)
    consts = arc_constants(arc, 3)
    xs = rng.uniform(arc.x_lo, arc.x_hi, 4000)
    batch = pigeonhole_batch(xs, consts, arc)
    assert np.all(np.cos(2 * np.pi * batch.k * xs) <= 1e-8)
    assert np.all(batch.k >= consts.bound_b)
    assert np.all(batch.k <= 2 * consts.p * consts.q)
    assert np.all(batch.brute_k <= batch.k)
    assert np.all(batch.brute_k >= 1)
    assert batch.epsilon_sharp == pytest.approx(1.0 / batch.brute_k.max() ** 2)


def test_pigeonhole_rejects_outside_arc():
    arc = ArcSpec(0.4, 0.6)
    consts = arc_constants(arc, 2)
    with pytest.raises(ValueError):
        pigeonhole_k(0.2, consts, arc)


def test_frobenius_deviation(rng):
    # against the eigenvalue expansion: ||P - wI||^2 = sum |lambda_i - w|^2
    for n in (2, 5, 8):
        p = random_unitary(n, rng)
        omega = np.exp(2j * np.pi * rng.uniform())
        dev = frobenius_deviation(p, omega)
        eigs = np.linalg.eigvals(p)
        assert dev.norm ** 2 == pytest.approx(float(np.sum(np.abs(eigs - omega) ** 2)), rel=1e-10)
        assert dev.delta == pytest.approx(dev.norm ** 2 / (2 * n), rel=1e-12)
    assert frobenius_deviation(np.eye(3) * 1j, 1j).norm == 0.0
    with pytest.raises(ValueError):
        frobenius_deviation(np.eye(3) * 2.0, 1.0)
    with pytest.raises(ValueError):
        frobenius_deviation(np.eye(3), 2.0)


def test_telescoping(rng):
    omega = np.exp(2j * np.pi * 0.3)
    for _ in range(30):
        k = int(rng.integers(1, 6))
        ps = [random_unitary(4, rng) for _ in range(k)]
        chk = telescoping_check(ps, omega)
        assert chk.holds
        assert chk.lhs <= chk.rhs + 1e-10
    single = telescoping_check([random_unitary(3, rng)], omega)
    assert single.lhs == pytest.approx(single.rhs, rel=1e-12)


def test_random_unitary_is_unitary_and_seeded():
    u1 = random_unitary(6, np.random.default_rng(42))
    u2 = random_unitary(6, np.random.default_rng(42))
    assert np.array_equal(u1, u2)
    assert np.allclose(u1 @ u1.conj().T, np.eye(6), atol=1e-12)


def test_delta_lower_bound_on_a1_scan(systems):
    rs = systems["A1"]
    arc = ArcSpec(0.45, 0.55)
    consts = arc_constants(arc, 2)
    samples = []
    for lam in ((2,), (4,), (6,)):
        table = weight_multiplicities(rs, lam)
        for y in np.arange(256) / 256:
            samples.append(normalized_character(table, theta_of_torus_fraction(rs, (y,))))
    report = delta_lower_bound_check(samples, arc, consts)
    assert report.violations == []
    assert report.n_in_arc > 0
    # the deepest point in this arc is z = -1/3 (phase 1/2), so delta = 2/3
    assert report.min_delta == pytest.approx(2 / 3, abs=1e-9)
    assert report.margin == pytest.approx(report.min_delta - consts.epsilon)


def test_final_inequality_sweep():
    for k in range(1, 60):
        for c in np.linspace(0.02, 0.98, 25):
            assert final_inequality_check(k, float(c))
    with pytest.raises(ValueError):
        final_inequality_check(0, 0.5)
    with pytest.raises(ValueError):
        final_inequality_check(3, 1.5)
