"""Aggregate observables over all output arrangements.

Everything here is a deterministic reduction over the quantum equivalence
classes: per-class probabilities weighted by orbit size.  Classical
probabilities and enhancement ratios are carried as exact fractions; the
quantum column is float on the default path and exact (z^2 over an integer
denominator) when exact mode is requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arrangements import (
    Arrangement,
    canonical_classical,
    count_arrangements,
    enumerate_arrangements,
    enumerate_quantum_classes,
    partition_count,
    validate_arrangement,
)
from .errors import ResourceLimitError
from .scattering import (
    EXACT_AMPLITUDE_LIMIT,
    batch_quantum_probability,
    classical_probability,
    exact_quantum_probability,
    is_suppressed_exact,
    suppression_Q,
    zero_threshold,
)

FLOAT_TABLE_LIMIT = 14
APPROXIMATION_LIMIT = 16

DISTRIBUTION_KINDS = ("occupied-ports", "port-occupancy", "classical-classes")
OCCUPANCY_VARIANTS = ("marginal", "at-least-one")


def suppressed_fraction_estimate(n: int) -> float:
    """Estimated fraction of classes caught by the suppression law, 1 - 1/n.

    Follows from treating the port-assignment sums as uniform over the n
    residues; compare with the measured N_law / N_quantum ratio.
    """
    return 1.0 - 1.0 / n


def bosonic_approximation(n: int, limit: int = APPROXIMATION_LIMIT) -> dict[Arrangement, float]:
    """Interference-free estimate of all quantum probabilities.

    Weights each arrangement by prod(s_j!) times its classical probability
    (the constructively interfering permutations) and normalizes over the
    full enumeration.  Note the result is uniform across arrangements: the
    weight reduces to n!/n^n for every s.  Memory scales with the number of
    arrangements.
    """
    if n > limit:
        raise ResourceLimitError(f"approximation map limited to n <= {limit}")
    weights: dict[Arrangement, Fraction] = {}
    for s in enumerate_arrangements(n):
        w = classical_probability(s)
        for x in s:
            w *= math.factorial(x)
        weights[s] = w
    total = sum(weights.values())
    return {s: float(w / total) for s, w in weights.items()}


def enhancement(s: Sequence[int], exact: bool = True) -> Fraction | float:
    """Ratio of quantum to classical probability for one arrangement."""
    t = validate_arrangement(s)
    p_class = classical_probability(t)
    if exact:
        return exact_quantum_probability(t) / p_class
    return batch_quantum_probability(t) / float(p_class)


@dataclass(frozen=True)
class ClassProbabilityRow:
    """Per-quantum-class summary used by the tables and distributions."""

    representative: Arrangement
    orbit_size: int
    Q: int
    suppressed_exact: bool | None
    p_classical: Fraction
    p_quantum: float
    enhancement: Fraction | float


def compute_class_row(
    rep: Arrangement,
    orbit_size: int,
    exact: bool,
    tolerance_scale: float | None = None,
) -> ClassProbabilityRow:
    """Evaluate one quantum class; pure, safe to run in a worker process."""
    n = len(rep)
    q = suppression_Q(rep)
    p_class = classical_probability(rep)
    if exact:
        p_exact = exact_quantum_probability(rep)
        return ClassProbabilityRow(
            representative=rep,
            orbit_size=orbit_size,
            Q=q,
            suppressed_exact=(p_exact == 0),
            p_classical=p_class,
            p_quantum=float(p_exact),
            enhancement=p_exact / p_class,
        )
    p_quantum = batch_quantum_probability(rep)
    threshold = zero_threshold(n) if tolerance_scale is None else zero_threshold(n, tolerance_scale)
    enh = 0.0 if p_quantum < threshold else p_quantum / float(p_class)
    return ClassProbabilityRow(
        representative=rep,
        orbit_size=orbit_size,
        Q=q,
        suppressed_exact=None,
        p_classical=p_class,
        p_quantum=p_quantum,
        enhancement=enh,
    )


def class_probability_table(
    n: int,
    exact: bool = False,
    tolerance_scale: float | None = None,
    rows: Iterable[ClassProbabilityRow] | None = None,
) -> list[ClassProbabilityRow]:
    """One row per quantum class, sorted by classical probability.

    Ties are broken by the lexicographic representative so the order never
    depends on enumeration or scheduling.  Pass precomputed rows (e.g. from
    a worker pool) to reuse them; they are then only validated and sorted.
    """
    if rows is None:
        if exact and n > EXACT_AMPLITUDE_LIMIT:
            raise ResourceLimitError(f"exact table limited to n <= {EXACT_AMPLITUDE_LIMIT}")
        if not exact and n > FLOAT_TABLE_LIMIT:
            raise ResourceLimitError(f"float table limited to n <= {FLOAT_TABLE_LIMIT}")
        classes = enumerate_quantum_classes(n)
        rows = [
            compute_class_row(c.representative, c.orbit_size, exact, tolerance_scale)
            for c in classes
        ]
    out = sorted(rows, key=lambda r: (r.p_classical, r.representative))
    return out


@dataclass(frozen=True)
class Table1Row:
    """Event and class census for one n; supp is None without exact mode."""

    n: int
    total: int
    classical_classes: int
    quantum_classes: int
    law_suppressed: int
    anomalous_suppressed: int | None


def table1(n_max: int, exact: bool = True) -> list[Table1Row]:
    """Census rows for n = 2..n_max.

    law_suppressed counts quantum classes whose representative has Q != 0;
    anomalous_suppressed counts those with Q = 0 whose exact amplitude is
    nevertheless zero, and requires exact mode.
    """
    rows = []
    for n in range(2, n_max + 1):
        classes = enumerate_quantum_classes(n)
        n_law = sum(1 for c in classes if suppression_Q(c.representative) != 0)
        n_supp = None
        if exact:
            n_supp = sum(
                1
                for c in classes
                if suppression_Q(c.representative) == 0
                and is_suppressed_exact(c.representative)
            )
        rows.append(
            Table1Row(
                n=n,
                total=count_arrangements(n),
                classical_classes=partition_count(n),
                quantum_classes=len(classes),
                law_suppressed=n_law,
                anomalous_suppressed=n_supp,
            )
        )
    return rows


@dataclass(frozen=True)
class DistributionTable:
    """Labeled categories with classical, quantum, and approximate columns."""

    kind: str
    n: int
    rows: tuple[tuple[str, float, float, float], ...]

    def column(self, name: str) -> list[float]:
        index = {"classical": 1, "quantum": 2, "approx": 3}[name]
        return [row[index] for row in self.rows]


def _approx_weight(s: Arrangement) -> Fraction:
    w = classical_probability(s)
    for x in s:
        w *= math.factorial(x)
    return w


def _spread(rows: list[ClassProbabilityRow]):
    """Yield (rep, members, p_class, p_quantum, approx_weight) per class."""
    for r in rows:
        yield r.representative, r.orbit_size, r.p_classical, r.p_quantum, _approx_weight(
            r.representative
        )


def occupied_ports_distribution(
    n: int, rows: list[ClassProbabilityRow] | None = None, exact: bool = False
) -> DistributionTable:
    """Probability that exactly k of the n output ports are occupied, k = 1..n."""
    rows = class_probability_table(n, exact=exact, rows=rows)
    classical = [Fraction(0)] * (n + 1)
    quantum = [0.0] * (n + 1)
    approx = [Fraction(0)] * (n + 1)
    approx_norm = Fraction(0)
    for rep, members, p_c, p_q, w in _spread(rows):
        k = sum(1 for x in rep if x > 0)
        classical[k] += members * p_c
        quantum[k] += members * p_q
        approx[k] += members * w
        approx_norm += members * w
    table_rows = tuple(
        (str(k), float(classical[k]), quantum[k], float(approx[k] / approx_norm))
        for k in range(1, n + 1)
    )
    return DistributionTable(kind="occupied-ports", n=n, rows=table_rows)


def port_occupancy_distribution(
    n: int,
    rows: list[ClassProbabilityRow] | None = None,
    exact: bool = False,
    variant: str = "marginal",
) -> DistributionTable:
    """Occupancy law of a uniformly chosen port, k = 0..n.

    The default "marginal" weights each arrangement by the fraction of its
    ports holding exactly k particles; by cyclic invariance this equals the
    marginal of any single port.  The "at-least-one" variant instead scores
    arrangements containing some port with exactly k particles; its columns
    do not sum to one.
    """
    if variant not in OCCUPANCY_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {OCCUPANCY_VARIANTS}")
    rows = class_probability_table(n, exact=exact, rows=rows)
    classical = [Fraction(0)] * (n + 1)
    quantum = [0.0] * (n + 1)
    approx = [Fraction(0)] * (n + 1)
    approx_norm = Fraction(0)
    for rep, members, p_c, p_q, w in _spread(rows):
        approx_norm += members * w
        counts = [0] * (n + 1)
        for x in rep:
            counts[x] += 1
        for k in range(n + 1):
            if variant == "marginal":
                weight = Fraction(counts[k], n)
            else:
                weight = Fraction(1 if counts[k] else 0)
            if weight:
                classical[k] += members * p_c * weight
                quantum[k] += members * p_q * float(weight)
                approx[k] += members * w * weight
    table_rows = tuple(
        (str(k), float(classical[k]), quantum[k], float(approx[k] / approx_norm))
        for k in range(n + 1)
    )
    return DistributionTable(kind="port-occupancy", n=n, rows=table_rows)


def classical_class_distribution(
    n: int, rows: list[ClassProbabilityRow] | None = None, exact: bool = False
) -> DistributionTable:
    """Event probability grouped by classical class, ascending in the classical column."""
    rows = class_probability_table(n, exact=exact, rows=rows)
    classical: dict[Arrangement, Fraction] = {}
    quantum: dict[Arrangement, float] = {}
    approx: dict[Arrangement, Fraction] = {}
    approx_norm = Fraction(0)
    for rep, members, p_c, p_q, w in _spread(rows):
        part = canonical_classical(rep).partition
        classical[part] = classical.get(part, Fraction(0)) + members * p_c
        quantum[part] = quantum.get(part, 0.0) + members * p_q
        approx[part] = approx.get(part, Fraction(0)) + members * w
        approx_norm += members * w
    if len(classical) != partition_count(n):
        raise AssertionError(
            f"expected {partition_count(n)} classical classes, found {len(classical)}"
        )
    order = sorted(classical, key=lambda p: (classical[p], p))
    table_rows = tuple(
        (
            ",".join(str(x) for x in part),
            float(classical[part]),
            quantum[part],
            float(approx[part] / approx_norm),
        )
        for part in order
    )
    return DistributionTable(kind="classical-classes", n=n, rows=table_rows)


def distribution(
    kind: str,
    n: int,
    rows: list[ClassProbabilityRow] | None = None,
    exact: bool = False,
    variant: str = "marginal",
) -> DistributionTable:
    """Dispatch by kind; see the individual distribution functions."""
    if kind == "occupied-ports":
        return occupied_ports_distribution(n, rows=rows, exact=exact)
    if kind == "port-occupancy":
        return port_occupancy_distribution(n, rows=rows, exact=exact, variant=variant)
    if kind == "classical-classes":
        return classical_class_distribution(n, rows=rows, exact=exact)
    raise ValueError(f"unknown distribution kind {kind!r}")


def occupied_ports_mean(table: DistributionTable, column: str) -> float:
    """Mean number of occupied ports under one of the model columns."""
    if table.kind != "occupied-ports":
        raise ValueError("mean defined for occupied-ports tables")
    values = table.column(column)
    return sum(int(label) * p for (label, *_), p in zip(table.rows, values))
