"""Core nonemptiness and minimum sum-rate for omniscience.

The nonemptiness test reduces to a partition minimum of the dual set
function; the minimum sum-rate comes out of an exhaustive scan over proper
partitions, and cross-checks against multivariate mutual information via
R = H(V) - I(V).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .combinatorics import Partition, min_partition_sum, partitions
from .game import Game
from .models import SourceModel

ASYMPTOTIC = "asymptotic"
NON_ASYMPTOTIC = "non-asymptotic"

FLAG_NON_INTEGER_ENTROPY = "non-integer-entropy"


@dataclass(frozen=True)
class NonemptinessCertificate:
    """Partition-minimum certificate for an upper base polyhedron."""

    nonempty: bool
    value: Fraction  # g(ground), = alpha for the CO game
    partition_min: Fraction
    certificate: Partition

    def __bool__(self) -> bool:
        return self.nonempty


@dataclass(frozen=True)
class MmiResult:
    value: Fraction
    partition: Partition


@dataclass(frozen=True)
class SumRateReport:
    model_kind: str  # ASYMPTOTIC | NON_ASYMPTOTIC
    r_co: Fraction
    argmax_partition: Partition
    mmi: Fraction
    h_total: Fraction
    flags: tuple[str, ...] = ()


def upper_base_nonempty(cost: Callable[[int], Fraction], ground: int) -> NonemptinessCertificate:
    """Nonemptiness of B(g, <=) for an intersecting-submodular g, g(empty)=0.

    The polyhedron is nonempty iff g(ground) equals the minimum over all
    partitions of the block sums of g; the minimizing partition is returned
    as certificate either way.
    """
    total = cost(ground)
    value, part = min_partition_sum(ground, cost)
    return NonemptinessCertificate(value == total, total, value, part)


def core_nonempty(game: Game) -> NonemptinessCertificate:
    """Is the core of the game nonempty at its alpha? Certificate included."""
    table = game.dual_table()
    return upper_base_nonempty(table.__getitem__, game.full_mask)


def _scan_proper_partitions(
    model: SourceModel,
    value_of: Callable[[Partition], Fraction],
    *,
    maximize: bool,
) -> tuple[Fraction, Partition]:
    # Ties prefer fewer blocks, then the lexicographically smallest block
    # list (same rule as the partition DP).
    best: tuple[Fraction, Partition] | None = None
    for part in partitions(model.full_mask, proper=True):
        value = value_of(part)
        if best is None:
            best = (value, part)
            continue
        if maximize:
            improves = value > best[0]
        else:
            improves = value < best[0]
        if improves or (
            value == best[0] and (len(part), part.key()) < (len(best[1]), best[1].key())
        ):
            best = (value, part)
    if best is None:
        raise ValueError("no proper partition; need at least 2 users")
    return best


def min_sum_rate_asymptotic(model: SourceModel) -> SumRateReport:
    """Minimum total rate for omniscience with divisible (real) rates.

    max over proper partitions P of sum(H(Z_{V\\C} | Z_C) for C in P) / (|P|-1)
    by exhaustive scan; the maximizer is reported as certificate.
    """
    h_total = model.entropy(model.full_mask)

    def value_of(part: Partition) -> Fraction:
        total = sum((h_total - model.entropy(c) for c in part), Fraction(0))
        return total / (len(part) - 1)

    value, part = _scan_proper_partitions(model, value_of, maximize=True)
    return SumRateReport(ASYMPTOTIC, value, part, mmi(model).value, h_total)


def min_sum_rate_non_asymptotic(model: SourceModel) -> SumRateReport:
    """Minimum total rate when every rate must be an integer.

    Ceiling of the asymptotic value. Meaningful for packet-style models with
    integer entropies; a non-integer entropy table gets the value as written
    plus a report flag.
    """
    base = min_sum_rate_asymptotic(model)
    flags = () if model.is_integral() else (FLAG_NON_INTEGER_ENTROPY,)
    return SumRateReport(
        NON_ASYMPTOTIC,
        Fraction(math.ceil(base.r_co)),
        base.argmax_partition,
        base.mmi,
        base.h_total,
        flags,
    )


def mmi(model: SourceModel) -> MmiResult:
    """Multivariate mutual information I(Z_V) with its minimizing partition.

    min over proper partitions P of (sum(H(Z_C) for C in P) - H(Z_V)) / (|P|-1),
    i.e. the divergence between the joint source and the partition-factored
    one, expanded purely in entropies.
    """
    h_total = model.entropy(model.full_mask)

    def value_of(part: Partition) -> Fraction:
        total = sum((model.entropy(c) for c in part), Fraction(0))
        return (total - h_total) / (len(part) - 1)

    value, part = _scan_proper_partitions(model, value_of, maximize=False)
    return MmiResult(value, part)
