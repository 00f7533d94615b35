"""Graph-structured learning of conditional probability tables from count data.

File formats
------------
Graph: plain text, one directive per line.  ``node <name> <arity>`` declares
a variable with outcomes 0..arity-1; ``edge <parent> <child>`` adds a
dependency.  Lines starting with ``#`` and blank lines are ignored.  The
edge relation must be acyclic.

Counts: CSV with header ``var1,...,vark,count`` where the variable columns
are a permutation of the declared node names and the last column is
literally ``count``.  Each following row holds 0-based outcome indices and
a non-negative integer count; duplicate outcome rows are summed, so
ingestion does not depend on row order.  ``#`` lines are ignored.

Priors (Bayesian mode): plain text, one line per node:
``<name> a1 a2 ... a<arity>`` with every pseudo-count >= 1.  The same
vector is applied to every parent configuration of that node; nodes not
listed default to all ones.

Output: one CSV per node.  Parent outcome columns come first (in declared
edge order, row-major over parent configurations).  MLE mode then has
probability columns p0..p{m-1}; Bayesian mode has pseudo-count columns
a0..a{m-1} followed by posterior means mean0..mean{m-1}.  Probabilities
and means are rendered as reduced exact fractions ``a/b`` with b > 0.
"""

from __future__ import annotations

import csv
import graphlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from pathlib import Path
from typing import Mapping

from .bayes import batch_update
from .dirichlet import HyperParams, dirichlet_mean
from .dist import Dist
from .finset import JointMultiset, Multiset, ZeroRowError, row_extract
from .mle import mle


class DataError(ValueError):
    """Invalid user-supplied graph, count, or prior data."""


@dataclass(frozen=True)
class GraphSpec:
    """A directed acyclic graph of named variables with finite arities."""

    nodes: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple((str(n), int(a)) for n, a in self.nodes))
        object.__setattr__(self, "edges", tuple((str(p), str(c)) for p, c in self.edges))
        names = [n for n, _ in self.nodes]
        if len(set(names)) != len(names):
            raise DataError("duplicate node names")
        if not names:
            raise DataError("graph has no nodes")
        arities = dict(self.nodes)
        for n, a in self.nodes:
            if a < 1:
                raise DataError(f"node {n} has arity {a} < 1")
        seen = set()
        for p, c in self.edges:
            if p not in arities or c not in arities:
                raise DataError(f"edge {p} -> {c} references an undeclared node")
            if (p, c) in seen:
                raise DataError(f"duplicate edge {p} -> {c}")
            seen.add((p, c))
        deps = {n: [] for n in names}
        for p, c in self.edges:
            deps[c].append(p)
        try:
            tuple(graphlib.TopologicalSorter(deps).static_order())
        except graphlib.CycleError as exc:
            raise DataError(f"graph has a directed cycle: {exc.args[1]}") from exc

    @property
    def node_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.nodes)

    def arity(self, name: str) -> int:
        for n, a in self.nodes:
            if n == name:
                return a
        raise DataError(f"unknown node {name}")

    def parents(self, name: str) -> tuple[str, ...]:
        """Parents of a node, in declared edge order."""
        return tuple(p for p, c in self.edges if c == name)

    @staticmethod
    def parse(text: str) -> GraphSpec:
        nodes: list[tuple[str, int]] = []
        edges: list[tuple[str, str]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "node" and len(parts) == 3:
                try:
                    arity = int(parts[2])
                except ValueError:
                    raise DataError(f"line {lineno}: arity {parts[2]!r} is not an integer")
                nodes.append((parts[1], arity))
            elif parts[0] == "edge" and len(parts) == 3:
                edges.append((parts[1], parts[2]))
            else:
                raise DataError(f"line {lineno}: expected 'node <name> <arity>' or "
                                f"'edge <parent> <child>', got {raw!r}")
        return GraphSpec(tuple(nodes), tuple(edges))

    @staticmethod
    def load(path: str | Path) -> GraphSpec:
        return GraphSpec.parse(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class CountTable:
    """Aggregated joint counts over the graph's variables, in declared order."""

    variables: tuple[str, ...]
    arities: tuple[int, ...]
    records: dict[tuple[int, ...], int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.records.values())

    def as_multiset(self) -> Multiset:
        """The counts as a vector over the row-major product of all arities."""
        counts = [0] * prod(self.arities)
        for outcome, c in self.records.items():
            idx = 0
            for o, a in zip(outcome, self.arities):
                idx = idx * a + o
            counts[idx] += c
        return Multiset(tuple(counts))

    def marginal_counts(self, names: tuple[str, ...]) -> Multiset:
        """Counts marginalised onto the given variables, row-major in that order."""
        positions = []
        arities = []
        for name in names:
            if name not in self.variables:
                raise DataError(f"unknown variable {name}")
            pos = self.variables.index(name)
            positions.append(pos)
            arities.append(self.arities[pos])
        counts = [0] * prod(arities)
        for outcome, c in self.records.items():
            idx = 0
            for pos, a in zip(positions, arities):
                idx = idx * a + outcome[pos]
            counts[idx] += c
        return Multiset(tuple(counts))


def ingest_counts(path: str | Path, graph: GraphSpec) -> CountTable:
    """Read and aggregate a long-format count CSV against the graph's schema.

    Duplicate outcome tuples are summed, so the result is independent of
    row order.  Every malformed cell is reported with its line number.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"data file not found: {path}")
    names = graph.node_names
    arities = tuple(graph.arity(n) for n in names)
    records: dict[tuple[int, ...], int] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = None
        column_order: list[int] = []
        for row in reader:
            lineno = reader.line_num
            if not row or (row[0].lstrip().startswith("#")):
                continue
            if header is None:
                header = [cell.strip() for cell in row]
                if len(header) != len(names) + 1 or header[-1] != "count":
                    raise DataError(
                        f"line {lineno}: header must list every node plus a final "
                        f"'count' column, got {header}"
                    )
                if sorted(header[:-1]) != sorted(names):
                    raise DataError(
                        f"line {lineno}: header variables {header[:-1]} do not match "
                        f"graph nodes {list(names)}"
                    )
                column_order = [header.index(n) for n in names]
                continue
            if len(row) != len(names) + 1:
                raise DataError(f"line {lineno}: expected {len(names) + 1} cells, got {len(row)}")
            outcome = []
            for name, col in zip(names, column_order):
                cell = row[col].strip()
                try:
                    value = int(cell)
                except ValueError:
                    raise DataError(f"line {lineno}: outcome {cell!r} for {name} is not an integer")
                if not 0 <= value < graph.arity(name):
                    raise DataError(
                        f"line {lineno}: outcome {value} for {name} outside 0..{graph.arity(name) - 1}"
                    )
                outcome.append(value)
            cell = row[-1].strip()
            try:
                count = int(cell)
            except ValueError:
                raise DataError(f"line {lineno}: count {cell!r} is not an integer")
            if count < 0:
                raise DataError(f"line {lineno}: negative count {count}")
            key = tuple(outcome)
            records[key] = records.get(key, 0) + count
        if header is None:
            raise DataError("data file has no header row")
    return CountTable(names, arities, records)


@dataclass(frozen=True)
class LearnedCPT:
    """One node's learned table: a distribution per parent configuration.

    Parent configurations are indexed row-major over the parent arities in
    declared edge order; a root node has the single empty configuration.
    In Bayesian mode `posteriors` carries the updated pseudo-counts whose
    means the distributions are.
    """

    node: str
    parents: tuple[str, ...]
    parent_arities: tuple[int, ...]
    arity: int
    dists: tuple[Dist, ...]
    posteriors: tuple[HyperParams, ...] | None = None

    def n_configs(self) -> int:
        return prod(self.parent_arities)

    def config_outcomes(self, index: int) -> tuple[int, ...]:
        """Decode a row-major parent configuration index."""
        outcome = []
        for a in reversed(self.parent_arities):
            outcome.append(index % a)
            index //= a
        return tuple(reversed(outcome))


def _family_counts(table: CountTable, graph: GraphSpec, node: str) -> tuple[tuple[str, ...], JointMultiset]:
    parents = graph.parents(node)
    counts = table.marginal_counts(parents + (node,))
    n_configs = prod(graph.arity(p) for p in parents) if parents else 1
    return parents, JointMultiset.from_flat(counts, n_configs, graph.arity(node))


def learn_mle(table: CountTable, graph: GraphSpec) -> list[LearnedCPT]:
    """Learn every node's table by per-configuration normalisation.

    Each family's counts are marginalised out of the joint table and each
    parent-configuration row is normalised on its own; this agrees exactly
    with normalising the family table first and extracting conditionals.
    A parent configuration with zero observations makes the row
    undefined, so it aborts the run naming the family and configuration
    (the Bayesian mode is the documented remedy for sparse data).
    """
    cpts = []
    for node in graph.node_names:
        parents, family = _family_counts(table, graph, node)
        parent_arities = tuple(graph.arity(p) for p in parents)
        try:
            rows = row_extract(family)
        except ZeroRowError as exc:
            cpt = LearnedCPT(node, parents, parent_arities, graph.arity(node), ())
            config = cpt.config_outcomes(exc.row)
            described = ", ".join(f"{p}={o}" for p, o in zip(parents, config)) or "(empty)"
            raise DataError(
                f"family {node} | {','.join(parents) or '()'}: no observations for "
                f"parent configuration {described}; cannot normalise (use bayes mode)"
            ) from exc
        cpts.append(
            LearnedCPT(
                node=node,
                parents=parents,
                parent_arities=parent_arities,
                arity=graph.arity(node),
                dists=tuple(mle(row) for row in rows),
            )
        )
    return cpts


def parse_prior(text: str, graph: GraphSpec) -> dict[str, tuple[int, ...]]:
    """Parse a per-node prior pseudo-count file."""
    priors: dict[str, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        name = parts[0]
        if name not in graph.node_names:
            raise DataError(f"line {lineno}: unknown node {name}")
        if name in priors:
            raise DataError(f"line {lineno}: duplicate prior for {name}")
        try:
            values = tuple(int(v) for v in parts[1:])
        except ValueError:
            raise DataError(f"line {lineno}: pseudo-counts must be integers")
        if len(values) != graph.arity(name):
            raise DataError(
                f"line {lineno}: {name} needs {graph.arity(name)} pseudo-counts, got {len(values)}"
            )
        if any(v < 1 for v in values):
            raise DataError(f"line {lineno}: pseudo-counts must be >= 1")
        priors[name] = values
    return priors


def learn_bayes(
    table: CountTable,
    graph: GraphSpec,
    prior: Mapping[str, tuple[int, ...]] | None = None,
) -> list[LearnedCPT]:
    """Learn every node's table by conjugate updating of per-row priors.

    For each parent configuration the posterior pseudo-counts are the prior
    plus the observed counts, and the emitted distribution is the posterior
    mean.  Zero-count configurations stay proper (the prior survives), so
    this mode never aborts on sparse data.
    """
    prior = dict(prior or {})
    for name in prior:
        if name not in graph.node_names:
            raise DataError(f"prior given for unknown node {name}")
    cpts = []
    for node in graph.node_names:
        parents, family = _family_counts(table, graph, node)
        arity = graph.arity(node)
        base = HyperParams(prior.get(node, (1,) * arity))
        if base.n != arity:
            raise DataError(f"prior for {node} has {base.n} entries, arity is {arity}")
        posteriors = tuple(batch_update(base, Multiset(row)) for row in family.rows)
        cpts.append(
            LearnedCPT(
                node=node,
                parents=parents,
                parent_arities=tuple(graph.arity(p) for p in parents),
                arity=arity,
                dists=tuple(dirichlet_mean(post) for post in posteriors),
                posteriors=posteriors,
            )
        )
    return cpts


def format_fraction(x: Fraction) -> str:
    """Render an exact fraction as ``a/b`` with reduced terms and b > 0."""
    return f"{x.numerator}/{x.denominator}"


def write_cpts(cpts: list[LearnedCPT], out_dir: str | Path) -> list[Path]:
    """Write one CSV per learned node table; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for cpt in cpts:
        path = out_dir / f"{cpt.node}.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            header = list(cpt.parents)
            if cpt.posteriors is not None:
                header += [f"a{k}" for k in range(cpt.arity)]
                header += [f"mean{k}" for k in range(cpt.arity)]
            else:
                header += [f"p{k}" for k in range(cpt.arity)]
            writer.writerow(header)
            for idx in range(cpt.n_configs()):
                row: list[str] = [str(o) for o in cpt.config_outcomes(idx)]
                if cpt.posteriors is not None:
                    row += [str(a) for a in cpt.posteriors[idx].alphas]
                row += [format_fraction(p) for p in cpt.dists[idx].probs]
                writer.writerow(row)
        written.append(path)
    return written
