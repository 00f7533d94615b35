"""Frequentist learning: normalising count vectors into distributions.

The central map sends a non-empty count vector (a1..an) to the empirical
distribution (a1/a .. an/a) with a = sum(ai).  It maximises the likelihood
prod_i w(i)^phi(i), commutes with pushforward along arbitrary index maps,
and turns row extraction of a count table into channel extraction of the
normalised joint distribution.  All of that is exact-rational and tested
with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .dist import Channel, Dist, pair_graph
from .finset import JointMultiset, Multiset, ms_map, row_extract, FinMap


def mle(phi: Multiset) -> Dist:
    """Normalise a non-empty count vector into its empirical distribution."""
    total = phi.total()
    if total == 0:
        raise ValueError("cannot normalise an empty multiset")
    return Dist(tuple(Fraction(c, total) for c in phi.counts))


def likelihood(phi: Multiset, omega: Dist) -> Fraction:
    """prod_i omega(i)^phi(i), the probability of observing the counts phi.

    Empty products (all-zero phi, or a zero count against any probability)
    contribute 1, i.e. 0**0 == 1.
    """
    if omega.n != phi.n:
        raise ValueError(f"size mismatch: counts over {phi.n}, distribution over {omega.n}")
    result = Fraction(1)
    for c, p in zip(phi.counts, omega.probs):
        if c > 0:
            result *= p ** c
    return result


def mle_decompose(phi: JointMultiset) -> tuple[Dist, Channel]:
    """Learn (input distribution, channel) directly from a 2-D count table.

    The input distribution normalises the row totals; each channel row
    normalises the corresponding table row.  This agrees exactly with
    normalising the whole table first and then disintegrating, and
    pair_graph(channel, input) reconstructs the normalised table.
    """
    first = mle(ms_map(FinMap.proj1(phi.n, phi.m), phi.to_flat()))
    channel = Channel(tuple(mle(row) for row in row_extract(phi)))
    return first, channel


def reconstruct(first: Dist, channel: Channel) -> Dist:
    """Flattened joint distribution obtained by coupling input and channel."""
    return pair_graph(channel, first).to_flat()


def simplex_grid(n: int, denominator: int) -> Iterator[Dist]:
    """All distributions over n outcomes with the given common denominator.

    Deterministic lexicographic enumeration; used as a brute-force search
    space when checking that the empirical distribution maximises the
    likelihood.
    """
    if n < 1 or denominator < 1:
        raise ValueError("need n >= 1 and denominator >= 1")

    def rec(prefix: list[int], remaining: int, k: int) -> Iterator[Dist]:
        if k == 1:
            yield Dist(tuple(Fraction(c, denominator) for c in prefix + [remaining]))
            return
        for c in range(remaining + 1):
            yield from rec(prefix + [c], remaining - c, k - 1)

    yield from rec([], denominator, n)


@dataclass(frozen=True)
class MonadCounterexample:
    """Two composites on a fixed nested multiset that fail to agree.

    Normalisation commutes with pushforward but not with flattening: merging
    the counts first and then normalising differs from normalising inner and
    outer layers first and then mixing.
    """

    flatten_then_normalize: Dist
    normalize_then_flatten: Dist

    @property
    def differ(self) -> bool:
        return self.flatten_then_normalize != self.normalize_then_flatten


# Fixed nested multiset over outcomes {a,b,c} -> {0,1,2}: one copy of the
# inner multiset 2|a> + 4|c> and two copies of 1|a> + 1|b> + 1|c>.
_NESTED: tuple[tuple[int, Multiset], ...] = (
    (1, Multiset((2, 0, 4))),
    (2, Multiset((1, 1, 1))),
)


def monad_counterexample() -> MonadCounterexample:
    """Evaluate both composites on the fixed nested multiset.

    Flatten-then-normalise merges to 4|0> + 2|1> + 6|2> and yields
    (1/3, 1/6, 1/2); normalise-then-flatten mixes the inner empirical
    distributions with outer weights (1/3, 2/3) and yields (1/3, 2/9, 4/9).
    """
    n = _NESTED[0][1].n

    merged = [0] * n
    for weight, inner in _NESTED:
        for i, c in enumerate(inner.counts):
            merged[i] += weight * c
    route_a = mle(Multiset(tuple(merged)))

    outer_total = sum(weight for weight, _ in _NESTED)
    mixed = [Fraction(0)] * n
    for weight, inner in _NESTED:
        outer_p = Fraction(weight, outer_total)
        inner_dist = mle(inner)
        for i, p in enumerate(inner_dist.probs):
            mixed[i] += outer_p * p
    route_b = Dist(tuple(mixed))

    result = MonadCounterexample(route_a, route_b)
    assert result.differ, "the two composites unexpectedly coincide"
    return result
