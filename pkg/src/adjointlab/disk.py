"""Disk geometry for normalized character values.

A normalized character of a compact adjoint group maps into the closed unit
disk; the claim under test is that its image avoids a fixed horodisk-shaped
region — it stays inside the disk tangent to the unit circle at 1 and to the
vertical line Re z = c, for a group constant c in (-1, 0).

This module provides the membership algebra for that disk, empirical
estimation of the best constant over bounded families of irreducibles, the
constructive "some power has nonpositive real part" finder for points on a
closed arc (with its explicitly computable constants), and the
Frobenius-norm / telescoping matrix inequalities the argument consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import (
    CharacterSample,
    character_grid,
    theta_of_torus_fraction,
    weight_multiplicities,
)
from .rootsys import RootSystem, enumerate_adjoint_dominant_weights


# -- disk membership algebra ---------------------------------------------------


@dataclass
class DiskParam:
    """Disk tangent to the unit circle at 1 and to the line Re z = c.

    Center (1+c)/2, radius (1-c)/2; c in (-1, 1).
    """

    c: float

    def __post_init__(self):
        if not -1.0 < self.c < 1.0:
            raise ValueError("disk constant must lie in (-1, 1)")

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - (1.0 + self.c) / 2.0) <= (1.0 - self.c) / 2.0 + tol


def disk_requirement(z):
    """h(z) = (|z|^2 - Re z)/(Re z - 1): the largest c whose disk holds z.

    z is in the c-disk iff c <= h(z).  On the closed unit disk h lands in
    [-1, 1): real z map to themselves, the unit circle maps to -1.
    Accepts scalars or arrays; z = 1 is the caller's job to exclude.
    """
    z = np.asarray(z, dtype=complex)
    re = z.real
    if np.any(np.abs(z - 1.0) <= 1e-9):
        raise ValueError("h is undefined at z = 1")
    out = (np.abs(z) ** 2 - re) / (re - 1.0)
    return float(out) if out.ndim == 0 else out


def statement_constant_from_proof(c_proof: float) -> float:
    """Convert the center/radius-c convention (disk of radius 1-c centered
    at c, c in (0,1)) to the tangent-line convention used here."""
    return 2.0 * c_proof - 1.0


def proof_constant_from_statement(c: float) -> float:
    return (c + 1.0) / 2.0


def _clip_to_unit_disk(z: np.ndarray) -> np.ndarray:
    """Pull rounding-level overshoots |z| in (1, 1+1e-9] back onto the disk."""
    mag = np.abs(z)
    if np.any(mag > 1.0 + 1e-9):
        raise ValueError("normalized character values must lie in the unit disk")
    scale = np.where(mag > 1.0, 1.0 / np.maximum(mag, 1e-300), 1.0)
    return z * scale


# -- empirical disk constant ----------------------------------------------------


@dataclass
class IrrepMinimum:
    lam: tuple[int, ...]
    sample: CharacterSample
    h: float


@dataclass
class DiskEstimate:
    type_label: str
    c_hat: float
    sample: CharacterSample
    weight_bound: int
    grid_n: int
    per_irrep: list[IrrepMinimum]


def empirical_disk_constant(
    rs: RootSystem, weight_bound: int, grid_n: int, cache_dir=None
) -> DiskEstimate:
    """Minimum of h over all nontrivial root-lattice irreducibles of level
    <= weight_bound, evaluated on the uniform grid_n^rank torus grid.

    Nonincreasing in weight_bound, and in grid refinement along nested grids
    (doubling grid_n). The minimum must land in (-1, 0) — a value outside
    that window would falsify the disk bound and raises.
    """
    weights = [
        f for f in enumerate_adjoint_dominant_weights(rs, weight_bound) if any(f)
    ]
    if not weights:
        raise ValueError(
            f"no nontrivial root-lattice weights of level <= {weight_bound}"
        )
    per_irrep: list[IrrepMinimum] = []
    best: IrrepMinimum | None = None
    for lam in weights:
        table = weight_multiplicities(rs, lam, cache_dir=cache_dir)
        values = character_grid(table, grid_n) / table.dim
        z = _clip_to_unit_disk(np.asarray(values).ravel())
        ok = np.abs(z - 1.0) > 1e-9
        if not np.any(ok):
            continue
        h = np.full(z.shape, np.inf)
        h[ok] = disk_requirement(z[ok])
        flat_idx = int(np.argmin(h))
        if rs.rank == 1:
            y = (flat_idx / grid_n,)
        else:
            y = (flat_idx // grid_n / grid_n, flat_idx % grid_n / grid_n)
        sample = CharacterSample(
            lam=tuple(lam),
            theta=theta_of_torus_fraction(rs, y),
            z=complex(z[flat_idx]),
        )
        entry = IrrepMinimum(lam=tuple(lam), sample=sample, h=float(h[flat_idx]))
        per_irrep.append(entry)
        if best is None or entry.h < best.h:
            best = entry
    if best is None:
        raise ValueError("every scanned value sat at z = 1; nothing to estimate")
    if not -1.0 < best.h < 0.0:
        raise AssertionError(
            f"empirical disk constant {best.h} escaped (-1, 0); "
            "this falsifies the disk bound"
        )
    return DiskEstimate(
        type_label=rs.type_label,
        c_hat=best.h,
        sample=best.sample,
        weight_bound=weight_bound,
        grid_n=grid_n,
        per_irrep=per_irrep,
    )


# -- closed-arc constants --------------------------------------------------------


@dataclass
class ArcSpec:
    """The arc {exp(2 pi i x) : x_lo <= x <= x_hi}, bounded away from 1."""

    x_lo: float
    x_hi: float

    def __post_init__(self):
        if not 0.0 < self.x_lo <= self.x_hi < 1.0:
            raise ValueError("arc must satisfy 0 < x_lo <= x_hi < 1")

    def contains_phase(self, x: float) -> bool:
        return self.x_lo <= x <= self.x_hi


@dataclass
class ArcConstants:
    m: float
    q: int
    delta: float
    p: int
    epsilon: float
    bound_b: int


def _window_hit_exact(x: Fraction, j: int) -> bool:
    """frac(j x) in [1/4, 3/4], decided in integer arithmetic."""
    r = (j * x.numerator) % x.denominator
    return x.denominator <= 4 * r <= 3 * x.denominator


def _has_good_multiple(x: Fraction, q: int) -> bool:
    return any(_window_hit_exact(x, j) for j in range(q, 2 * q + 1))


def arc_constants(arc: ArcSpec, b: int) -> ArcConstants:
    """Constants for the constructive power-finder on the arc.

    m: distance from the arc (plus integers) to the integers.
    q: smallest integer exceeding b with 1/q < m.
    delta: a verified radius such that every x within delta of a rational
      with denominator <= q admits j in [q, 2q] with frac(jx) in [1/4, 3/4].
      Found by an exact sweep: the set of x violating that property is a
      union of intervals between breakpoints (i +- 1/4)/j, so testing one
      rational midpoint per gap classifies every gap; delta is 0.9 times the
      minimum distance from the rationals to a bad gap (capped at 1/4).
    p: smallest integer with 1/p < delta;  epsilon = 1/(2pq)^2.
    """
    if b < 1:
        raise ValueError("class-power bound must be a positive integer")
    m = min(arc.x_lo, 1.0 - arc.x_hi)
    q = max(b + 1, math.floor(1.0 / m) + 1)
    denominators = range(2, q + 1)
    s_points = sorted({Fraction(t, s) for s in denominators for t in range(1, s)})
    breakpoints = {Fraction(0), Fraction(1)}
    for j in range(q, 2 * q + 1):
        for i in range(j):
            breakpoints.add(Fraction(4 * i + 1, 4 * j))
            breakpoints.add(Fraction(4 * i + 3, 4 * j))
    bps = sorted(breakpoints)
    delta_raw = Fraction(1, 4)
    for lo, hi in zip(bps, bps[1:]):
        if _has_good_multiple((lo + hi) / 2, q):
            continue
        for s in s_points:
            dist = max(lo - s, s - hi, Fraction(0))
            if dist < delta_raw:
                delta_raw = dist
    # every rational with denominator <= q is itself good, so delta_raw > 0
    assert delta_raw > 0
    delta = 0.9 * float(delta_raw)
    p = math.floor(1.0 / delta) + 1
    return ArcConstants(
        m=m, q=q, delta=delta, p=p, epsilon=1.0 / (2 * p * q) ** 2, bound_b=b
    )


# -- constructive power finder ---------------------------------------------------


@dataclass
class PigeonholeBatch:
    k: np.ndarray
    brute_k: np.ndarray
    fallback: np.ndarray
    epsilon_sharp: float


_INSET = 1e-9  # land strictly inside the window so Re stays strictly negative


def _first_multiple_in_window(phi: np.ndarray, s0: np.ndarray) -> np.ndarray:
    """Smallest s >= s0 with frac(s phi) in the inset [1/4, 3/4] window,
    for steps ||phi|| <= 1/3 (closed form plus a verification bump)."""
    lo, hi = 0.25 + _INSET, 0.75 - _INSET
    frac0 = np.mod(s0 * phi, 1.0)
    eta = np.minimum(np.mod(phi, 1.0), 1.0 - np.mod(phi, 1.0))
    eta = np.maximum(eta, 1e-300)
    forward = np.mod(phi, 1.0) <= 0.5
    inside = (frac0 >= lo) & (frac0 <= hi)
    # distance (in the direction of travel) from frac0 to the window's entry edge
    to_entry = np.where(
        forward,
        np.mod(lo - frac0, 1.0),
        np.mod(frac0 - hi, 1.0),
    )
    extra = np.where(inside, 0, np.ceil(to_entry / eta)).astype(np.int64)
    s = s0 + extra
    # float slop can leave us a hair outside; bump at most a few steps
    for _ in range(4):
        f = np.mod(s * phi, 1.0)
        off = (f < lo) | (f > hi)
        if not np.any(off):
            break
        s = np.where(off, s + 1, s)
    return s


def pigeonhole_batch(xs, consts: ArcConstants, arc: ArcSpec) -> PigeonholeBatch:
    """Constructive k with Re exp(2 pi i k x) <= 0 for every x in the arc.

    Follows the two-case construction: a Dirichlet multiple k0 <= q with
    ||k0 x|| <= 1/q either certifies x is delta-close to a denominator-<= q
    rational (then some j in [q, 2q] already works), or the multiples of
    k0 x step by more than 1/p and a bounded scan lands in [1/4, 3/4].
    Output satisfies bound_b <= k <= 2 p q; a brute-force smallest k is
    computed alongside (epsilon_sharp = 1/max(brute_k)^2).
    """
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < arc.x_lo - 1e-12) or np.any(xs > arc.x_hi + 1e-12):
        raise ValueError("all phases must lie in the arc")
    n = xs.size
    q, p, b = consts.q, consts.p, consts.bound_b
    lo, hi = 0.25 + _INSET, 0.75 - _INSET

    # Dirichlet step: first k0 <= q with ||k0 x|| <= 1/q (k0 = 1 excluded by m > 1/q)
    ks = np.arange(1, q + 1)[:, None]
    frac = np.mod(ks * xs[None, :], 1.0)
    near = np.minimum(frac, 1.0 - frac) <= 1.0 / q
    assert np.all(np.any(near, axis=0)), "Dirichlet pigeonhole cannot fail"
    k0 = 1 + np.argmax(near, axis=0)

    # distance from x to the rationals with denominator <= q
    s_vals = np.array(
        sorted({t / s for s in range(2, q + 1) for t in range(1, s)})
    )
    pos = np.searchsorted(s_vals, xs)
    dist_s = np.full(n, np.inf)
    for shift in (np.clip(pos - 1, 0, len(s_vals) - 1), np.clip(pos, 0, len(s_vals) - 1)):
        dist_s = np.minimum(dist_s, np.abs(xs - s_vals[shift]))

    k_out = np.zeros(n, dtype=np.int64)
    fallback = np.zeros(n, dtype=bool)

    near_s = dist_s <= consts.delta
    if np.any(near_s):
        js = np.arange(q, 2 * q + 1)[:, None]
        fj = np.mod(js * xs[None, near_s], 1.0)
        good = (fj >= lo) & (fj <= hi)
        found = np.any(good, axis=0)
        j_first = q + np.argmax(good, axis=0)
        idx = np.flatnonzero(near_s)
        k_out[idx[found]] = j_first[found]
        # exact-boundary stragglers: fall through to the stepping case
        near_s[idx[~found]] = False

    far = ~near_s & (k_out == 0)
    if np.any(far):
        phi = np.mod(k0[far] * xs[far], 1.0)
        s0 = np.ceil(b / k0[far]).astype(np.int64)
        s = _first_multiple_in_window(phi, s0)
        k_out[far] = s * k0[far]

    # belt and braces: anything still outside the window gets the brute answer
    f_final = np.mod(k_out * xs, 1.0)
    bad = (f_final < 0.25) | (f_final > 0.75) | (k_out < b) | (k_out > 2 * p * q)

    # brute-force oracle: smallest k >= 1 with frac(k x) in [1/4, 3/4]
    brute = np.zeros(n, dtype=np.int64)
    unfound = np.ones(n, dtype=bool)
    k = 0
    while np.any(unfound):
        k += 1
        if k > 2 * p * q:
            raise RuntimeError("brute scan exceeded the theoretical bound 2pq")
        f = np.mod(k * xs[unfound], 1.0)
        hit = (f >= 0.25) & (f <= 0.75)
        idx = np.flatnonzero(unfound)
        brute[idx[hit]] = k
        unfound[idx[hit]] = False

    if np.any(bad):
        fallback[bad] = True
        k_out[bad] = brute[bad]
    return PigeonholeBatch(
        k=k_out,
        brute_k=brute,
        fallback=fallback,
        epsilon_sharp=1.0 / float(np.max(brute)) ** 2,
    )


def pigeonhole_k(x: float, consts: ArcConstants, arc: ArcSpec):
    """Single-phase version of pigeonhole_batch: (constructive k, brute k)."""
    batch = pigeonhole_batch([x], consts, arc)
    return int(batch.k[0]), int(batch.brute_k[0])


# -- matrix estimates -------------------------------------------------------------


@dataclass
class FrobeniusDeviation:
    norm: float
    delta: float


def frobenius_deviation(p_mat, omega: complex) -> FrobeniusDeviation:
    """Frobenius distance from a unitary to omega*I, and the normalized
    delta with norm^2 = 2 n delta (so tr P = n omega (1 - delta) on average)."""
    p_mat = np.asarray(p_mat, dtype=complex)
    n = p_mat.shape[0]
    if p_mat.shape != (n, n) or np.linalg.norm(p_mat @ p_mat.conj().T - np.eye(n)) > 1e-9:
        raise ValueError("input must be unitary (to 1e-9)")
    if abs(abs(omega) - 1.0) > 1e-9:
        raise ValueError("omega must lie on the unit circle")
    norm = float(np.linalg.norm(p_mat - omega * np.eye(n)))
    return FrobeniusDeviation(norm=norm, delta=norm**2 / (2 * n))


@dataclass
class TelescopingCheck:
    lhs: float
    rhs: float
    holds: bool


def telescoping_check(p_mats, omega: complex) -> TelescopingCheck:
    """||P_1..P_k - omega^k I||_F <= sum ||P_i - omega I||_F (unitarity)."""
    p_mats = [np.asarray(p, dtype=complex) for p in p_mats]
    n = p_mats[0].shape[0]
    prod = np.eye(n, dtype=complex)
    rhs = 0.0
    for p in p_mats:
        prod = prod @ p
        rhs += float(np.linalg.norm(p - omega * np.eye(n)))
    lhs = float(np.linalg.norm(prod - omega ** len(p_mats) * np.eye(n)))
    return TelescopingCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs + 1e-10)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2.0)
    q_mat, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q_mat * (d / np.abs(d))


# -- putting it together -----------------------------------------------------------


@dataclass
class DeltaBoundReport:
    n_samples: int
    n_in_arc: int
    min_delta: float | None
    epsilon: float
    margin: float | None
    violations: list[str]


def delta_lower_bound_check(
    samples, arc: ArcSpec, consts: ArcConstants
) -> DeltaBoundReport:
    """For samples z = (1-delta) omega with omega on the arc, check the
    predicted lower bound delta >= epsilon; violations are recorded, not
    raised (they would falsify the estimate)."""
    violations: list[str] = []
    min_delta = None
    n_in_arc = 0
    n_samples = 0
    for sample in samples:
        n_samples += 1
        z = complex(sample.z)
        mag = min(abs(z), 1.0)
        if mag == 0.0:
            continue  # phase undefined; delta = 1 trivially clears the bound
        phase = np.mod(np.angle(z) / (2 * np.pi), 1.0)
        if not arc.contains_phase(float(phase)):
            continue
        n_in_arc += 1
        delta = 1.0 - mag
        if min_delta is None or delta < min_delta:
            min_delta = delta
        if delta < consts.epsilon:
            violations.append(
                f"lambda={sample.lam}, z={z:.6g}: delta={delta:.3e} "
                f"< epsilon={consts.epsilon:.3e}"
            )
    return DeltaBoundReport(
        n_samples=n_samples,
        n_in_arc=n_in_arc,
        min_delta=min_delta,
        epsilon=consts.epsilon,
        margin=None if min_delta is None else min_delta - consts.epsilon,
        violations=violations,
    )


def final_inequality_check(k: int, c_proof: float) -> bool:
    """Confirm 1 - 1/k^2 < 1 - c(1-c)(pi/2k)^2, i.e. c(1-c) < 4/pi^2.

    c here is in the center/radius convention, c in (0, 1); the maximum of
    c(1-c) is 1/4 < 4/pi^2, so the comparison holds for every k >= 1.
    """
    if k < 1 or not 0.0 < c_proof < 1.0:
        raise ValueError("need k >= 1 and c in (0, 1)")
    lhs = 1.0 - 1.0 / k**2
    rhs = 1.0 - c_proof * (1.0 - c_proof) * (np.pi / (2 * k)) ** 2
    return bool(lhs < rhs)
