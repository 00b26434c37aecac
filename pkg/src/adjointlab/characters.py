"""Irreducible characters of the adjoint group restricted to its maximal torus.

A torus point is a coefficient vector theta of length rank; its pairing with a
weight mu (fundamental coordinates f) is <mu, theta> = sum_j f_j(mu) theta_j.
Characters are evaluated as multiplicity-weighted Fourier sums — never the
Weyl quotient formula — so singular torus points need no special casing.

Weight multiplicities come from the Freudenthal recursion run in exact
integer arithmetic: all inner products are scaled by a common denominator so
each multiplicity is produced by an exact integer division (remainder checked).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import exact
from .rootsys import RootSystem, is_in_root_lattice, weyl_group_order

CACHE_ENV = "ADJOINTLAB_CACHE"


@dataclass
class IrrepTable:
    """Weight multiplicities of one irreducible representation.

    mults maps full weights (fundamental coordinates) to multiplicities;
    freq_f/mult_arr are the same data as dense arrays for evaluation.
    Immutable after construction.
    """

    rs: RootSystem
    lam: tuple[int, ...]
    mults: dict[tuple[int, ...], int]
    dim: int
    freq_f: np.ndarray
    mult_arr: np.ndarray


@dataclass
class CharacterSample:
    lam: tuple[int, ...]
    theta: np.ndarray
    z: complex


def weyl_dimension(rs: RootSystem, lam) -> int:
    """Exact dimension: prod over positive roots of <lam+rho, a^v>/<rho, a^v>."""
    lam = _check_dominant(lam)
    rho = (1,) * rs.rank
    num = Fraction(1)
    den = Fraction(1)
    for c_alpha in rs.positive_root_coords:
        num *= _pairing(rs, tuple(l + r for l, r in zip(lam, rho)), c_alpha)
        den *= _pairing(rs, rho, c_alpha)
    dim = num / den
    assert dim.denominator == 1 and dim > 0
    return int(dim)


def _pairing(rs: RootSystem, f, c_alpha) -> Fraction:
    """<x, alpha> for x in fundamental coords, alpha in root coords."""
    return sum(
        Fraction(int(f[i])) * int(c_alpha[i]) * rs.simple_root_norm2[i] / 2
        for i in range(rs.rank)
    )


def _check_dominant(lam) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"highest weight must be dominant, got {lam}")
    return lam


def dominant_representative(rs: RootSystem, f) -> tuple[int, ...]:
    """Weyl-reflect a weight (fundamental coords) into the dominant chamber."""
    f = list(int(x) for x in f)
    while True:
        i = next((k for k, x in enumerate(f) if x < 0), None)
        if i is None:
            return tuple(f)
        fi = f[i]
        row = rs.cartan_rows[i]
        for k in range(rs.rank):
            f[k] -= fi * row[k]


def _freudenthal_scaling(rs: RootSystem):
    """Common denominator D plus the D-scaled pairing data.

    Returns (ghat, pair_vectors, rho_pair) where ghat[i][j] = D <w_i, w_j>,
    pair_vectors[a][i] = D * d<x,alpha_a>/df_i, rho_pair[i] = D <w_i, rho>.
    """
    fracs = [x for row in rs.weight_gram_exact for x in row]
    fracs += [n / 2 for n in rs.simple_root_norm2]
    d = exact.lcm_denominator(fracs)
    ghat = np.array(
        [[int(d * x) for x in row] for row in rs.weight_gram_exact], dtype=np.int64
    )
    pair_vectors = []
    for c_alpha in rs.positive_root_coords:
        u = [int(d * int(c_alpha[i]) * rs.simple_root_norm2[i] / 2) for i in range(rs.rank)]
        pair_vectors.append(tuple(u))
    rho_pair = tuple(int(ghat[i, :].sum()) for i in range(rs.rank))
    return ghat, pair_vectors, rho_pair


def _freudenthal(rs: RootSystem, lam: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Multiplicities of the dominant weights of V(lam)."""
    rank = rs.rank
    ghat, pair_vectors, rho_pair = _freudenthal_scaling(rs)
    falpha = [rs.fundamental_of_root_coords(c) for c in rs.positive_root_coords]

    def norm2hat(f):
        v = np.asarray(f, dtype=np.int64)
        return int(v @ ghat @ v)

    c_lam = rs.root_coords_of_weight(lam)
    box = [int(x) for x in c_lam]  # entries of c_lam are >= 0 for dominant lam
    candidates = []
    for offset in np.ndindex(*[b + 1 for b in box]):
        f_mu = tuple(
            lam[j] - sum(offset[i] * rs.cartan_rows[i][j] for i in range(rank))
            for j in range(rank)
        )
        if all(x >= 0 for x in f_mu):
            candidates.append((sum(offset), f_mu))
    candidates.sort()

    rho = (1,) * rank
    lam_rho_norm = norm2hat(tuple(l + 1 for l in lam))
    s_lam = sum(rho_pair[i] * lam[i] for i in range(rank))
    mults: dict[tuple[int, ...], int] = {lam: 1}
    for height, f_mu in candidates:
        if height == 0:
            continue
        s_mu = sum(rho_pair[i] * f_mu[i] for i in range(rank))
        num = 0
        for a, u in enumerate(pair_vectors):
            fa = falpha[a]
            s_alpha = sum(rho_pair[i] * fa[i] for i in range(rank))
            k_cap = (s_lam - s_mu) // s_alpha
            for k in range(1, k_cap + 1):
                f_x = tuple(f_mu[i] + k * fa[i] for i in range(rank))
                m = mults.get(dominant_representative(rs, f_x))
                if m:
                    num += m * sum(u[i] * f_x[i] for i in range(rank))
        denom = lam_rho_norm - norm2hat(tuple(x + 1 for x in f_mu))
        q, r = divmod(2 * num, denom)
        assert r == 0 and q >= 0, f"Freudenthal division failed at {f_mu}"
        if q:
            mults[f_mu] = q
    return mults


def _expand_orbits(rs: RootSystem, dom_mults: dict) -> dict[tuple[int, ...], int]:
    full: dict[tuple[int, ...], int] = {}
    for f0, m in dom_mults.items():
        orbit = {f0}
        frontier = [f0]
        while frontier:
            fresh = []
            for f in frontier:
                for i in range(rs.rank):
                    g = tuple(
                        f[k] - f[i] * rs.cartan_rows[i][k] for k in range(rs.rank)
                    )
                    if g not in orbit:
                        orbit.add(g)
                        fresh.append(g)
            frontier = fresh
        for f in orbit:
            full[f] = m
    return full


def weight_multiplicities(rs: RootSystem, lam, cache_dir=None) -> IrrepTable:
    """Full weight-multiplicity table of the irrep with highest weight lam.

    Tables are cached as JSON keyed by (type, lam) when a cache directory is
    given or the ADJOINTLAB_CACHE environment variable is set.
    """
    lam = _check_dominant(lam)
    cached = _cache_load(rs, lam, cache_dir)
    if cached is not None:
        return cached
    mults = _expand_orbits(rs, _freudenthal(rs, lam))
    dim = sum(mults.values())
    expected = weyl_dimension(rs, lam)
    assert dim == expected, f"multiplicity total {dim} != dimension {expected}"
    table = _finalize_table(rs, lam, mults, dim)
    _cache_store(table, cache_dir)
    return table


def _finalize_table(rs, lam, mults, dim) -> IrrepTable:
    keys = sorted(mults)
    freq_f = np.array(keys, dtype=np.int64).reshape(len(keys), rs.rank)
    mult_arr = np.array([mults[k] for k in keys], dtype=np.int64)
    return IrrepTable(rs=rs, lam=lam, mults=mults, dim=dim, freq_f=freq_f, mult_arr=mult_arr)


# -- torus geometry ---------------------------------------------------------


def canonicalize_torus_point(rs: RootSystem, theta) -> np.ndarray:
    """Reduce theta modulo 2*pi times the coweight lattice (adjoint torus).

    In the fraction coordinates y = A theta / 2pi the torus is simply
    [0,1)^rank, so reduce y mod 1 and map back.
    """
    theta = np.asarray(theta, dtype=float)
    cartan = rs.cartan.astype(float)
    y = np.mod(cartan @ theta / (2 * np.pi), 1.0)
    return np.linalg.solve(cartan, 2 * np.pi * y)


def theta_of_torus_fraction(rs: RootSystem, y) -> np.ndarray:
    """Map torus fraction coordinates y in [0,1)^rank to a theta vector."""
    return np.linalg.solve(rs.cartan.astype(float), 2 * np.pi * np.asarray(y, float))


# -- evaluation ---------------------------------------------------------------


def character_value(table: IrrepTable, theta) -> complex:
    """chi(theta) = sum_mu m_mu exp(i <mu, theta>); equals dim at theta = 0."""
    theta = np.asarray(theta, dtype=float)
    phases = table.freq_f @ theta
    return complex(np.sum(table.mult_arr * np.exp(1j * phases)))


def normalized_character(table: IrrepTable, theta) -> CharacterSample:
    z = character_value(table, theta) / table.dim
    assert abs(z) <= 1 + 1e-9
    return CharacterSample(lam=table.lam, theta=np.asarray(theta, float), z=z)


def root_coordinate_frequencies(table: IrrepTable) -> np.ndarray:
    """Weights of the table as integer root coordinates.

    Only defined when the highest weight lies in the root lattice (the
    adjoint-group case); raises otherwise.
    """
    rs = table.rs
    inv = rs.inv_cartan_exact
    d = exact.lcm_denominator([x for row in inv for x in row])
    m = np.array([[int(d * x) for x in row] for row in inv], dtype=np.int64)
    scaled = table.freq_f @ m  # row f -> row f A^-1, times d
    if np.any(scaled % d):
        raise ValueError(f"weight {tuple(table.lam)} is not in the root lattice")
    return scaled // d


def character_grid(table: IrrepTable, n: int) -> np.ndarray:
    """chi on the uniform n^rank tensor grid of torus fractions y.

    Frequencies are integer root coordinates, so the value at grid node
    (i1,..) is sum_mu m_mu exp(2pi i c(mu) . (i1/n, ..)).  Rank <= 2 only.
    """
    rs = table.rs
    c = root_coordinate_frequencies(table)
    m = table.mult_arr.astype(float)
    y = np.arange(n) / n
    if rs.rank == 1:
        return (m[:, None] * np.exp(2j * np.pi * np.outer(c[:, 0], y))).sum(axis=0)
    if rs.rank == 2:
        out = np.zeros((n, n), dtype=complex)
        for c1 in np.unique(c[:, 0]):
            sel = c[:, 0] == c1
            inner = (
                m[sel, None] * np.exp(2j * np.pi * np.outer(c[sel, 1], y))
            ).sum(axis=0)
            out += np.exp(2j * np.pi * c1 * y)[:, None] * inner[None, :]
        return out
    raise ValueError("tensor-grid evaluation supports rank <= 2 only")


def weyl_density_grid(rs: RootSystem, n: int) -> np.ndarray:
    """|Delta(y)|^2 = prod over positive roots of 4 sin^2(pi c(a).y)."""
    y = np.arange(n) / n
    if rs.rank == 1:
        out = np.ones(n)
        for c in rs.positive_root_coords:
            out *= 4 * np.sin(np.pi * int(c[0]) * y) ** 2
        return out
    if rs.rank == 2:
        out = np.ones((n, n))
        for c in rs.positive_root_coords:
            u = int(c[0]) * y[:, None] + int(c[1]) * y[None, :]
            out *= 4 * np.sin(np.pi * u) ** 2
        return out
    raise ValueError("tensor-grid evaluation supports rank <= 2 only")


def haar_character_integral(table: IrrepTable, quadrature_points: int) -> complex:
    """Integral of chi over the group by Weyl integration on the torus.

    quadrature_points is the total grid size; the per-axis count is its
    rank-th root. The integrand is a trigonometric polynomial, so once the
    per-axis count clears its bandwidth the grid mean is exact to rounding.
    """
    rs = table.rs
    if quadrature_points < 1:
        raise ValueError("need at least one quadrature point")
    per_axis = max(1, round(quadrature_points ** (1.0 / rs.rank)))
    chi = character_grid(table, per_axis)
    dens = weyl_density_grid(rs, per_axis)
    order = weyl_group_order(rs.series, rs.rank)
    return complex((chi * dens).mean() / order)


# -- cache --------------------------------------------------------------------


def _cache_path(rs, lam, cache_dir) -> Path | None:
    root = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV)
    if not root:
        return None
    tag = "-".join(str(x) for x in lam)
    return Path(root) / f"{rs.type_label}_irrep_{tag}.json"


def _cache_load(rs, lam, cache_dir) -> IrrepTable | None:
    path = _cache_path(rs, lam, cache_dir)
    if path is None or not path.exists():
        return None
    doc = json.loads(path.read_text())
    if doc.get("type_label") != rs.type_label or tuple(doc.get("lambda", ())) != lam:
        return None
    mults = {tuple(row[:-1]): row[-1] for row in doc["weights"]}
    return _finalize_table(rs, lam, mults, doc["dim"])


def _cache_store(table: IrrepTable, cache_dir) -> None:
    path = _cache_path(table.rs, table.lam, cache_dir)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [list(k) + [m] for k, m in sorted(table.mults.items())]
    doc = {
        "type_label": table.rs.type_label,
        "lambda": list(table.lam),
        "dim": table.dim,
        "weights": rows,
    }
    path.write_text(json.dumps(doc, sort_keys=True))
