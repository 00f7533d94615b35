"""Dirichlet densities with integer pseudo-count parameters, plus the
quadrature and sampling machinery used to verify their laws numerically.

Geometry convention: the n-outcome simplex is parameterised by its first
n-1 coordinates, the last one being implied by the sum-to-one constraint,
and integrals are taken with respect to Lebesgue measure on that
(n-1)-dimensional projection.  With that convention the uniform density on
two outcomes is the constant 1, which pins the normalisation.

Quadrature: the projected simplex is tiled by axis-aligned boxes of side
1/resolution, clipped where the sum-to-one boundary cuts through; each cell
contributes its exact clipped volume at its centroid.  The rule integrates
constants and linear functions exactly (so the cell volumes add up to the
exact simplex volume) and converges at second order for smooth integrands.
A midpoint rule that simply drops the boundary cells would miss O(1/res)
of mass concentrated near the boundary, which is not good enough for the
1e-3 normalisation checks this package runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .dist import Dist
from .finset import FinMap, Multiset, ms_map_full

SUM_TOL = 1e-12

MAX_QUADRATURE_DIM = 4  # desk-scale cap on the number of outcomes


@dataclass(frozen=True)
class HyperParams:
    """Strictly positive integer pseudo-counts parameterising a Dirichlet."""

    alphas: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        if not self.alphas:
            raise ValueError("need at least one pseudo-count")
        for i, a in enumerate(self.alphas):
            if a < 1:
                raise ValueError(f"pseudo-count {a} at index {i} must be >= 1")

    @property
    def n(self) -> int:
        return len(self.alphas)

    @property
    def total(self) -> int:
        return sum(self.alphas)

    def __getitem__(self, i: int) -> int:
        return self.alphas[i]

    def increment(self, i: int) -> HyperParams:
        """A copy with the i-th pseudo-count raised by one."""
        if not 0 <= i < self.n:
            raise ValueError(f"index {i} outside range of size {self.n}")
        return HyperParams(
            tuple(a + 1 if j == i else a for j, a in enumerate(self.alphas))
        )

    def as_multiset(self) -> Multiset:
        return Multiset(self.alphas)


@dataclass(frozen=True)
class SimplexPoint:
    """A point of the open simplex: strictly positive coordinates, sum 1."""

    coords: tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("point in dimension zero")
        for i, c in enumerate(coords):
            if not c > 0.0:
                raise ValueError(f"coordinate {c} at index {i} not strictly positive")
            if c > 1.0:
                raise ValueError(f"coordinate {c} at index {i} exceeds 1")
        if abs(sum(coords) - 1.0) > SUM_TOL:
            raise ValueError(f"coordinates sum to {sum(coords)}, not 1")

    @property
    def n(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> float:
        return self.coords[i]

    @staticmethod
    def complete(firsts: tuple[float, ...] | list[float]) -> SimplexPoint:
        """Append the implied last coordinate 1 - sum(firsts)."""
        firsts = tuple(float(c) for c in firsts)
        return SimplexPoint(firsts + (1.0 - sum(firsts),))


def gamma_nat(k: int) -> int:
    """The Gamma function on positive integers: (k-1)!, exactly."""
    if k < 1:
        raise ValueError("gamma_nat is defined on positive integers only")
    return math.factorial(k - 1)


def dirichlet_normalizer(alpha: HyperParams) -> Fraction:
    """Gamma(sum alphas) / prod Gamma(alpha_i) as an exact rational."""
    den = 1
    for a in alpha.alphas:
        den *= gamma_nat(a)
    return Fraction(gamma_nat(alpha.total), den)


def dirichlet_pdf(alpha: HyperParams, x: SimplexPoint) -> float:
    """Density of Dirichlet(alpha) at an interior simplex point."""
    if x.n != alpha.n:
        raise ValueError(f"size mismatch: params over {alpha.n}, point over {x.n}")
    monomial = 1.0
    for a, c in zip(alpha.alphas, x.coords):
        if a > 1:
            monomial *= c ** (a - 1)
    return float(dirichlet_normalizer(alpha)) * monomial


def dirichlet_pdf_many(alpha: HyperParams, xs: np.ndarray) -> np.ndarray:
    """Vectorised density evaluation on rows of an (N, n) coordinate array."""
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 2 or xs.shape[1] != alpha.n:
        raise ValueError(f"expected an (N, {alpha.n}) array, got shape {xs.shape}")
    exponents = np.array(alpha.alphas, dtype=float) - 1.0
    return float(dirichlet_normalizer(alpha)) * np.prod(xs ** exponents, axis=1)


@dataclass(frozen=True)
class SimplexDensity:
    """A non-negative density on the open simplex, evaluable pointwise.

    `dirichlet_params` is set when the density is known to equal a Dirichlet
    with those parameters; `pure_dirichlet` tells whether evaluation actually
    goes through the Dirichlet formula or through some other closed form
    that is merely claimed (and separately verified) to coincide with it.
    """

    n: int
    description: str
    dirichlet_params: HyperParams | None
    pure_dirichlet: bool
    _eval_many: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)

    def eval(self, x: SimplexPoint) -> float:
        if x.n != self.n:
            raise ValueError(f"size mismatch: density over {self.n}, point over {x.n}")
        return float(self._eval_many(np.array([x.coords], dtype=float))[0])

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        return np.asarray(self._eval_many(np.asarray(xs, dtype=float)), dtype=float)


def dirichlet_density(alpha: HyperParams) -> SimplexDensity:
    return SimplexDensity(
        n=alpha.n,
        description=f"Dirichlet{alpha.alphas}",
        dirichlet_params=alpha,
        pure_dirichlet=True,
        _eval_many=lambda xs: dirichlet_pdf_many(alpha, xs),
    )


# Clipped-cell geometry: fraction of a unit box below the plane sum(z) = t
# and the common centroid coordinate of the clipped region, per projected
# dimension d and integer slack t (cells with t >= d are whole).
_CLIP = {
    2: {1: (Fraction(1, 2), Fraction(1, 3))},
    3: {1: (Fraction(1, 6), Fraction(1, 4)), 2: (Fraction(5, 6), Fraction(9, 20))},
}


def simplex_cells(n: int, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Evaluation points (N, n) and weights (N,) tiling the n-outcome simplex.

    Weights are clipped cell volumes in the projected coordinates; points
    are cell centroids completed with the implied last coordinate.  The
    weights sum to the exact simplex volume 1/(n-1)!.  Grids are cached and
    returned read-only; copy before mutating.
    """
    if not 1 <= n <= MAX_QUADRATURE_DIM:
        raise ValueError(f"supported dimensions are 1..{MAX_QUADRATURE_DIM}, got {n}")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    return _cells_cached(n, resolution)


@lru_cache(maxsize=8)
def _cells_cached(n: int, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    d = n - 1
    res = resolution

    if d == 0:
        point, weight = np.array([[1.0]]), np.array([1.0])
        point.flags.writeable = False
        weight.flags.writeable = False
        return point, weight

    if d == 1:
        v = np.arange(res, dtype=float).reshape(-1, 1)
        firsts = (v + 0.5) / res
        weights = np.full(res, 1.0 / res)
    else:
        ii, jj = np.meshgrid(np.arange(res), np.arange(res), indexing="ij")
        mask = ii + jj <= res - 1
        pairs = np.stack([ii[mask], jj[mask]], axis=1)
        if d == 2:
            cells = pairs
        else:
            # Extend each (i, j) with every k such that i + j + k <= res-1.
            counts = res - pairs.sum(axis=1)
            base = np.repeat(pairs, counts, axis=0)
            ends = np.cumsum(counts)
            k = np.arange(ends[-1]) - np.repeat(ends - counts, counts)
            cells = np.column_stack([base, k])

        slack = res - cells.sum(axis=1)
        offsets = np.full(len(cells), 0.5)
        fracs = np.ones(len(cells))
        for t, (frac, centroid) in _CLIP[d].items():
            partial = slack == t
            offsets[partial] = float(centroid)
            fracs[partial] = float(frac)
        firsts = (cells + offsets[:, None]) / res
        weights = fracs / res**d

    last = 1.0 - firsts.sum(axis=1)
    points = np.column_stack([firsts, last])
    points.flags.writeable = False
    weights.flags.writeable = False
    return points, weights


def simplex_quadrature(
    f, n: int, resolution: int, *, vectorized: bool = False
) -> float:
    """Deterministic cell-rule integral of f over the n-outcome simplex.

    `f` takes a SimplexPoint, or an (N, n) coordinate array when
    `vectorized` is set.  Cells are summed in a fixed construction order.
    """
    points, weights = simplex_cells(n, resolution)
    if vectorized:
        values = np.asarray(f(points), dtype=float)
    else:
        values = np.array([f(SimplexPoint(tuple(row))) for row in points])
    return float(weights @ values)


def dirichlet_sample_many(
    alpha: HyperParams, size: int, rng: np.random.Generator
) -> np.ndarray:
    """(size, n) array of Dirichlet(alpha) draws.

    Each coordinate's Gamma variate with integer shape a_i is drawn as the
    sum of a_i independent standard exponentials, which is exact for
    integer shapes; the row is then normalised by its sum.
    """
    if size < 1:
        raise ValueError("need at least one draw")
    exps = rng.standard_exponential((size, alpha.total))
    starts = np.cumsum((0,) + alpha.alphas)[:-1]
    gammas = np.add.reduceat(exps, starts, axis=1)
    return gammas / gammas.sum(axis=1, keepdims=True)


def dirichlet_sample(alpha: HyperParams, rng: np.random.Generator) -> SimplexPoint:
    """One Dirichlet(alpha) draw; bit-reproducible given the generator state."""
    row = dirichlet_sample_many(alpha, 1, rng)[0]
    return SimplexPoint(tuple(row))


def dirichlet_mean(alpha: HyperParams) -> Dist:
    """The mean alpha_i / sum(alpha), exactly; equal to normalising alpha."""
    return Dist(tuple(Fraction(a, alpha.total) for a in alpha.alphas))


def dirichlet_covariance(alpha: HyperParams) -> tuple[tuple[Fraction, ...], ...]:
    """Exact covariance matrix of Dirichlet(alpha) (textbook moments)."""
    a = alpha.total
    scale = a * a * (a + 1)
    return tuple(
        tuple(
            Fraction(ai * (a - ai), scale) if i == j else Fraction(-ai * aj, scale)
            for j, aj in enumerate(alpha.alphas)
        )
        for i, ai in enumerate(alpha.alphas)
    )


def aggregate_params(h: FinMap, alpha: HyperParams) -> HyperParams:
    """Merge pseudo-counts along a surjective index map by summing fibres."""
    merged = ms_map_full(h, alpha.as_multiset())
    return HyperParams(merged.counts)


def push_coords(h: FinMap, xs: np.ndarray) -> np.ndarray:
    """Push simplex points along h by summing coordinate fibres.

    Rows of xs are points over h's domain; rows of the result are points
    over its codomain.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 2 or xs.shape[1] != h.domain_size:
        raise ValueError(f"expected an (N, {h.domain_size}) array, got shape {xs.shape}")
    out = np.zeros((xs.shape[0], h.codomain_size))
    for x, y in enumerate(h.targets):
        out[:, y] += xs[:, x]
    return out


def one_sum_check(
    alpha: HyperParams, x: SimplexPoint, resolution: int
) -> tuple[float, float]:
    """Compare both sides of the two-coordinate aggregation identity.

    lhs: density with the first two pseudo-counts merged, at x (a point of
    the (n-1)-outcome simplex).  rhs: midpoint-rule integral over
    y in (0, x[0]) of the original density at (y, x[0]-y, x[1], ...).
    The two agree up to quadrature error.
    """
    if alpha.n < 2:
        raise ValueError("need at least two pseudo-counts to merge")
    if x.n != alpha.n - 1:
        raise ValueError(f"point must live over {alpha.n - 1} outcomes, got {x.n}")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")

    merged = HyperParams((alpha.alphas[0] + alpha.alphas[1],) + alpha.alphas[2:])
    lhs = dirichlet_pdf(merged, x)

    x1 = x.coords[0]
    step = x1 / resolution
    ys = (np.arange(resolution) + 0.5) * step
    rest = np.tile(np.array(x.coords[1:], dtype=float), (resolution, 1))
    pts = np.column_stack([ys, x1 - ys, rest])
    rhs = float(dirichlet_pdf_many(alpha, pts).sum() * step)
    return lhs, rhs
