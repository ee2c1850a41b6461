"""Rate allocation: Shapley fairness, greedy core vertices, integer core
enumeration, and Jain-index comparison."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Sequence

from .combinatorics import subsets
from .dilworth import TruncatedDual, greedy_marginals
from .game import Game, RateVector, in_core
from .rationals import format_rational


class CoreEmptyError(ValueError):
    """The requested sum-rate is below the achievable minimum."""

    def __init__(self, alpha: Fraction, partition_min: Fraction):
        super().__init__(
            f"core is empty at alpha={format_rational(alpha)}: the best partition "
            f"splits for {format_rational(partition_min)}"
        )
        self.alpha = alpha
        self.partition_min = partition_min


class IntegralityError(ValueError):
    """Integer-rate enumeration asked for on a non-integer game."""


@dataclass(frozen=True)
class Allocation:
    rates: RateVector
    method: str  # "shapley" | "greedy" | "enumerated"
    order: tuple[int, ...] | None = None
    jain: Fraction | None = None  # None only for the all-zero vector


def _require_nonempty(trunc: TruncatedDual) -> None:
    if not trunc.core_nonempty:
        raise CoreEmptyError(trunc.alpha, trunc.values[trunc.ground])


def shapley(trunc: TruncatedDual) -> Allocation:
    """Shapley value of the convex game given by the truncated dual.

    Each user's rate is the factorial-weighted sum of marginal contributions
    over all subsets not containing the user; exact rational arithmetic, cost
    n * 2^(n-1) table lookups. Refuses when the core is empty, since the
    fairness guarantee only exists above the minimum sum-rate.
    """
    _require_nonempty(trunc)
    n = trunc.ground.bit_count()
    fact = [Fraction(factorial(k)) for k in range(n + 1)]
    total = fact[n]
    rates = []
    for i in range(n):
        bit = 1 << i
        acc = Fraction(0)
        for x in subsets(trunc.ground & ~bit):
            size = x.bit_count()
            weight = fact[n - size - 1] * fact[size] / total
            acc += weight * (trunc.values[x | bit] - trunc.values[x])
        rates.append(acc)
    return Allocation(RateVector(tuple(rates)), "shapley", None, _jain_or_none(tuple(rates)))


def greedy_vertex(trunc: TruncatedDual, order: Sequence[int]) -> Allocation:
    """Core vertex from greedy marginals along one join order."""
    _require_nonempty(trunc)
    n = trunc.ground.bit_count()
    if sorted(order) != list(range(n)):
        raise ValueError(f"order {order!r} is not a permutation of 0..{n - 1}")
    order = tuple(order)
    rates = greedy_marginals(trunc.values, order)
    return Allocation(RateVector(rates), "greedy", order, _jain_or_none(rates))


def greedy_vertices(
    trunc: TruncatedDual,
    *,
    max_exact_orders: int = 40320,
    sample_size: int = 2000,
    seed: int | None = None,
) -> tuple[list[Allocation], bool]:
    """All distinct greedy vertices of the core (one allocation per vertex).

    Exhausts every join order when n! <= ``max_exact_orders`` (default 8!).
    Larger ground sets get ``sample_size`` seeded random orders instead and
    the second return value flags the result as partial.
    """
    _require_nonempty(trunc)
    n = trunc.ground.bit_count()
    partial = factorial(n) > max_exact_orders
    if partial:
        rng = random.Random(seed)
        base = list(range(n))

        def orders():
            for _ in range(sample_size):
                rng.shuffle(base)
                yield tuple(base)

        order_iter = orders()
    else:
        order_iter = permutations(range(n))
    out: list[Allocation] = []
    seen: set[tuple[Fraction, ...]] = set()
    for order in order_iter:
        rates = greedy_marginals(trunc.values, order)
        if rates in seen:
            continue
        seen.add(rates)
        out.append(Allocation(RateVector(rates), "greedy", tuple(order), _jain_or_none(rates)))
    return out, partial


def enumerate_integer_core(game: Game) -> list[RateVector]:
    """Every integer rate vector in the core, in ascending lexicographic order.

    Only defined when alpha and all dual values are integers (packet-style
    models); refuses otherwise. Each candidate is boxed by the singleton dual
    bounds r_i <= f#({i}) and the exact sum, then filtered through the full
    core test.
    """
    if game.alpha.denominator != 1:
        raise IntegralityError(
            f"integer-rate enumeration needs an integer alpha, got {format_rational(game.alpha)}"
        )
    if not game.model.is_integral():
        raise IntegralityError(
            "integer-rate enumeration needs integer entropies; "
            "this model has fractional values"
        )
    n = game.model.n
    alpha = int(game.alpha)
    bounds = []
    for i in range(n):
        b = game.dual_value(1 << i)
        bounds.append(min(int(b), alpha))
    if any(b < 0 for b in bounds):
        return []
    suffix_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_max[i] = suffix_max[i + 1] + bounds[i]

    out: list[RateVector] = []
    stack: list[int] = []

    def walk(i: int, remaining: int) -> None:
        if i == n:
            r = RateVector.of(stack)
            if in_core(game, r, integer_mode=True):
                out.append(r)
            return
        lo = max(0, remaining - suffix_max[i + 1])
        hi = min(bounds[i], remaining)
        for v in range(lo, hi + 1):
            stack.append(v)
            walk(i + 1, remaining - v)
            stack.pop()

    walk(0, alpha)
    return out


def jain_index(r: Iterable[Fraction] | RateVector) -> Fraction:
    """Jain fairness of a rate vector: (sum r)^2 / (n * sum r^2), 1 = uniform."""
    rates = tuple(Fraction(x) for x in r)
    square_sum = sum((x * x for x in rates), Fraction(0))
    if square_sum == 0:
        raise ValueError("Jain index is undefined for the all-zero vector")
    total = sum(rates, Fraction(0))
    return total * total / (Fraction(len(rates)) * square_sum)


def _jain_or_none(rates: tuple[Fraction, ...]) -> Fraction | None:
    return jain_index(rates) if any(x != 0 for x in rates) else None


def fairness_compare(candidates: Sequence[Allocation]) -> list[Allocation]:
    """Rank allocations by Jain index, fairest first.

    Ties break on lexicographically smaller rates; the sort is stable, so
    fully equal candidates keep their input order. All-zero allocations
    (undefined index) rank last.
    """
    if not candidates:
        raise ValueError("nothing to compare")
    return sorted(
        candidates,
        key=lambda a: ((0, -a.jain) if a.jain is not None else (1, Fraction(0)), tuple(a.rates)),
    )
