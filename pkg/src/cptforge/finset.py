"""Count vectors over finite index sets and their structure-preserving maps.

Index sets are contiguous 0-based integer ranges.  A product index set of
shape (n, m) is flattened row-major: (i, j) -> i*m + j.  That convention is
normative for every module in this package.

Counts are plain Python integers (arbitrary precision), all values are
immutable after construction, and every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass


class ZeroRowError(ValueError):
    """A 2-D count table has an all-zero row where a positive one is required."""

    def __init__(self, row: int):
        super().__init__(f"row {row} has zero total count")
        self.row = row


@dataclass(frozen=True)
class FinMap:
    """A function {0..n-1} -> {0..m-1} between finite index sets."""

    targets: tuple[int, ...]
    codomain_size: int

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if self.codomain_size < 1:
            raise ValueError("codomain must be non-empty")
        if not self.targets:
            raise ValueError("domain must be non-empty")
        for x, y in enumerate(self.targets):
            if not 0 <= y < self.codomain_size:
                raise ValueError(
                    f"image {y} of index {x} is outside codomain of size"
                    f" {self.codomain_size}"
                )

    @property
    def domain_size(self) -> int:
        return len(self.targets)

    def __call__(self, x: int) -> int:
        return self.targets[x]

    def is_surjective(self) -> bool:
        return len(set(self.targets)) == self.codomain_size

    def after(self, other: FinMap) -> FinMap:
        """Composite self . other (apply `other` first)."""
        if other.codomain_size != self.domain_size:
            raise ValueError("composition mismatch: codomain != domain")
        return FinMap(tuple(self.targets[y] for y in other.targets), self.codomain_size)

    @staticmethod
    def identity(n: int) -> FinMap:
        return FinMap(tuple(range(n)), n)

    @staticmethod
    def constant(n: int, codomain_size: int = 1, value: int = 0) -> FinMap:
        return FinMap((value,) * n, codomain_size)

    @staticmethod
    def proj1(n: int, m: int) -> FinMap:
        """First projection n*m -> n of the row-major product index."""
        return FinMap(tuple(k // m for k in range(n * m)), n)

    @staticmethod
    def proj2(n: int, m: int) -> FinMap:
        """Second projection n*m -> m of the row-major product index."""
        return FinMap(tuple(k % m for k in range(n * m)), m)


@dataclass(frozen=True)
class Multiset:
    """A count vector: how often each index of {0..n-1} occurs."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if not self.counts:
            raise ValueError("index set must be non-empty")
        for i, c in enumerate(self.counts):
            if c < 0:
                raise ValueError(f"negative count {c} at index {i}")

    @property
    def n(self) -> int:
        return len(self.counts)

    def total(self) -> int:
        return sum(self.counts)

    def is_nonempty(self) -> bool:
        """At least one index occurs."""
        return any(c > 0 for c in self.counts)

    def has_full_support(self) -> bool:
        """Every index occurs at least once."""
        return all(c > 0 for c in self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __add__(self, other: Multiset) -> Multiset:
        if other.n != self.n:
            raise ValueError("size mismatch in multiset sum")
        return Multiset(tuple(a + b for a, b in zip(self.counts, other.counts)))


@dataclass(frozen=True)
class JointMultiset:
    """A 2-D count table, i.e. a count vector over a row-major product index."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise ValueError("table must be non-empty")
        m = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ValueError(f"ragged table: row {i} has length {len(row)} != {m}")
            for j, c in enumerate(row):
                if c < 0:
                    raise ValueError(f"negative count {c} at cell ({i},{j})")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def total(self) -> int:
        return sum(sum(row) for row in self.rows)

    def is_row_positive(self) -> bool:
        """Every row has a positive total count."""
        return all(any(c > 0 for c in row) for row in self.rows)

    def to_flat(self) -> Multiset:
        """The same counts as a vector over n*m, row-major."""
        return Multiset(tuple(c for row in self.rows for c in row))

    @staticmethod
    def from_flat(phi: Multiset, n: int, m: int) -> JointMultiset:
        if phi.n != n * m:
            raise ValueError(f"cannot reshape size {phi.n} into {n}x{m}")
        return JointMultiset(
            tuple(tuple(phi.counts[i * m + j] for j in range(m)) for i in range(n))
        )


def ms_map(h: FinMap, phi: Multiset) -> Multiset:
    """Push counts forward along h: result[y] = sum of phi[x] over h(x)=y.

    The total count is preserved; for a projection this is marginalisation
    of a count table.
    """
    if phi.n != h.domain_size:
        raise ValueError(f"size mismatch: multiset over {phi.n}, map domain {h.domain_size}")
    out = [0] * h.codomain_size
    for x, c in enumerate(phi.counts):
        out[h.targets[x]] += c
    return Multiset(tuple(out))


def ms_map_full(h: FinMap, phi: Multiset) -> Multiset:
    """Push a full-support count vector along a surjective map.

    Same counts as ms_map; surjectivity plus full support guarantee the
    result has full support again.
    """
    if not h.is_surjective():
        raise ValueError("map must be surjective to preserve full support")
    if not phi.has_full_support():
        raise ValueError("multiset must have full support")
    return ms_map(h, phi)


def row_extract(phi: JointMultiset) -> tuple[Multiset, ...]:
    """Slice a 2-D count table into its per-row count vectors.

    The counting analogue of extracting a conditional table from a joint
    one: no normalisation is involved.  Requires every row to be non-empty.
    """
    for i, row in enumerate(phi.rows):
        if not any(c > 0 for c in row):
            raise ZeroRowError(i)
    return tuple(Multiset(row) for row in phi.rows)


def ms_tensor(phi: Multiset, psi: Multiset) -> JointMultiset:
    """Outer product of two count vectors: result[i][j] = phi[i]*psi[j]."""
    return JointMultiset(
        tuple(tuple(a * b for b in psi.counts) for a in phi.counts)
    )
