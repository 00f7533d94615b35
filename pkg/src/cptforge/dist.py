"""Discrete probability distributions with exact rational entries.

Distributions, channels (row-stochastic matrices) and predicates all carry
`fractions.Fraction` values, so every identity in this layer holds with zero
tolerance.  Conversion to binary64 happens only at the continuous boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .finset import FinMap

ONE = Fraction(1)
ZERO = Fraction(0)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Dist:
    """A probability vector over {0..n-1}; entries sum to exactly 1."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(_frac(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if not probs:
            raise ValueError("distribution over empty index set")
        for i, p in enumerate(probs):
            if p < 0 or p > 1:
                raise ValueError(f"probability {p} at index {i} outside [0,1]")
        if sum(probs) != 1:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")

    @property
    def n(self) -> int:
        return len(self.probs)

    def has_full_support(self) -> bool:
        return all(p > 0 for p in self.probs)

    def __getitem__(self, i: int) -> Fraction:
        return self.probs[i]

    @staticmethod
    def point(n: int, i: int) -> Dist:
        """The point mass at index i."""
        if not 0 <= i < n:
            raise ValueError(f"index {i} outside range of size {n}")
        return Dist(tuple(ONE if j == i else ZERO for j in range(n)))

    @staticmethod
    def uniform(n: int) -> Dist:
        return Dist((Fraction(1, n),) * n)


@dataclass(frozen=True)
class Predicate:
    """A fuzzy predicate: one value in [0,1] per index."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(_frac(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError("predicate over empty index set")
        for i, v in enumerate(values):
            if v < 0 or v > 1:
                raise ValueError(f"predicate value {v} at index {i} outside [0,1]")

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __mul__(self, other: Predicate) -> Predicate:
        if other.n != self.n:
            raise ValueError("size mismatch in predicate product")
        return Predicate(tuple(a * b for a, b in zip(self.values, other.values)))

    def is_point(self) -> bool:
        """True when the predicate is the indicator of a single index."""
        return sum(1 for v in self.values if v == 1) == 1 and all(
            v in (ZERO, ONE) for v in self.values
        )

    def point_index(self) -> int:
        if not self.is_point():
            raise ValueError("not a point predicate")
        return self.values.index(ONE)

    @staticmethod
    def point(n: int, i: int) -> Predicate:
        if not 0 <= i < n:
            raise ValueError(f"index {i} outside range of size {n}")
        return Predicate(tuple(ONE if j == i else ZERO for j in range(n)))

    @staticmethod
    def ones(n: int) -> Predicate:
        return Predicate((ONE,) * n)


@dataclass(frozen=True)
class Channel:
    """A conditional probability table: one distribution per input index."""

    rows: tuple[Dist, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise ValueError("channel with empty domain")
        m = self.rows[0].n
        for i, row in enumerate(self.rows):
            if row.n != m:
                raise ValueError(f"ragged channel: row {i} has size {row.n} != {m}")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return self.rows[0].n

    def __call__(self, x: int) -> Dist:
        return self.rows[x]

    @staticmethod
    def identity(n: int) -> Channel:
        return Channel(tuple(Dist.point(n, i) for i in range(n)))

    @staticmethod
    def deterministic(h: FinMap) -> Channel:
        """The channel sending x to the point mass at h(x)."""
        return Channel(tuple(Dist.point(h.codomain_size, h(x)) for x in range(h.domain_size)))


@dataclass(frozen=True)
class JointDist:
    """A joint distribution on a product index set, stored as an n x m table."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_frac(p) for p in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise ValueError("joint distribution over empty index set")
        m = len(rows[0])
        total = ZERO
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ValueError(f"ragged table: row {i} has length {len(row)} != {m}")
            for j, p in enumerate(row):
                if p < 0 or p > 1:
                    raise ValueError(f"probability {p} at cell ({i},{j}) outside [0,1]")
                total += p
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def to_flat(self) -> Dist:
        """The same probabilities as a distribution over n*m, row-major."""
        return Dist(tuple(p for row in self.rows for p in row))

    @staticmethod
    def from_flat(omega: Dist, n: int, m: int) -> JointDist:
        if omega.n != n * m:
            raise ValueError(f"cannot reshape size {omega.n} into {n}x{m}")
        return JointDist(
            tuple(tuple(omega.probs[i * m + j] for j in range(m)) for i in range(n))
        )

    def marg1(self) -> Dist:
        return Dist(tuple(sum(row) for row in self.rows))

    def marg2(self) -> Dist:
        return Dist(tuple(sum(row[j] for row in self.rows) for j in range(self.m)))


def dist_map(h: FinMap, omega: Dist) -> Dist:
    """Push a distribution forward along h; for projections this marginalises."""
    if omega.n != h.domain_size:
        raise ValueError(f"size mismatch: distribution over {omega.n}, map domain {h.domain_size}")
    out = [ZERO] * h.codomain_size
    for x, p in enumerate(omega.probs):
        out[h.targets[x]] += p
    return Dist(tuple(out))


def state_transform(c: Channel, omega: Dist) -> Dist:
    """Push omega through the channel: result[y] = sum_x c(x)(y) * omega(x)."""
    if omega.n != c.n:
        raise ValueError(f"size mismatch: distribution over {omega.n}, channel domain {c.n}")
    out = [ZERO] * c.m
    for x, p in enumerate(omega.probs):
        if p == 0:
            continue
        for y, q in enumerate(c.rows[x].probs):
            out[y] += p * q
    return Dist(tuple(out))


def channel_compose(d: Channel, c: Channel) -> Channel:
    """Sequential composite (d after c): x -> push c(x) through d."""
    if c.m != d.n:
        raise ValueError(f"size mismatch: first channel into {c.m}, second from {d.n}")
    return Channel(tuple(state_transform(d, c(x)) for x in range(c.n)))


def disintegrate(omega: JointDist) -> tuple[Dist, Channel]:
    """Split a joint distribution into its first marginal and a channel.

    The channel entry c(x)(y) is the conditional probability
    omega(x,y) / marg1(omega)(x); it exists only when the first marginal has
    full support.  Together with the marginal it reconstructs omega via
    pair_graph, and it is the unique channel doing so.
    """
    first = omega.marg1()
    for x, p in enumerate(first.probs):
        if p == 0:
            raise ValueError(f"first marginal vanishes at index {x}; no conditional exists")
    rows = tuple(
        Dist(tuple(p / first.probs[x] for p in omega.rows[x])) for x in range(omega.n)
    )
    return first, Channel(rows)


def pair_graph(c: Channel, omega: Dist) -> JointDist:
    """Couple an input distribution with a channel: result[x][y] = omega(x)*c(x)(y)."""
    if omega.n != c.n:
        raise ValueError(f"size mismatch: distribution over {omega.n}, channel domain {c.n}")
    return JointDist(
        tuple(
            tuple(omega.probs[x] * q for q in c.rows[x].probs) for x in range(c.n)
        )
    )


def validity(omega: Dist, p: Predicate) -> Fraction:
    """The expected value of the predicate p under omega."""
    if p.n != omega.n:
        raise ValueError(f"size mismatch: distribution over {omega.n}, predicate over {p.n}")
    return sum((w * v for w, v in zip(omega.probs, p.values)), start=ZERO)


def condition(omega: Dist, p: Predicate) -> Dist:
    """Update omega with evidence p: result(x) = omega(x)*p(x) / validity.

    Undefined (raises) when the validity of p is zero.
    """
    v = validity(omega, p)
    if v == 0:
        raise ValueError("cannot condition on a predicate with zero validity")
    return Dist(tuple(w * q / v for w, q in zip(omega.probs, p.values)))
