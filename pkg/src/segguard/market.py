"""Valuation grids, markets, monopoly pricing and surplus accounting.

Indices are 0-based throughout the library: price index ``k`` means the price
``grid[k]``. All quantities are :class:`fractions.Fraction`; nothing on the
computation path is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AlphaOutOfRange, GridNotIncreasing, IndexOutOfRange, MassNotOne, NegativeMass

__all__ = [
    "Market",
    "validate_market",
    "revenue",
    "monopoly_price_index",
    "best_response",
    "consumer_surplus",
    "producer_surplus",
    "weighted_total_surplus",
    "served_value",
    "check_alpha",
    "to_fraction",
]

Number = Fraction | int | str


def to_fraction(value: Number) -> Fraction:
    """Exact conversion; floats are refused because they are already rounded."""
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass 'p/q' strings or Fractions")
    return Fraction(value)


@dataclass(frozen=True)
class Market:
    """A probability vector ``masses`` over the increasing valuation ``grid``.

    Build instances through :func:`validate_market`; the constructor itself
    does not check anything.
    """

    grid: tuple[Fraction, ...]
    masses: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.grid)

    @cached_property
    def tails(self) -> tuple[Fraction, ...]:
        """``tails[k]`` is the mass of consumers valuing at least ``grid[k]``."""
        out = []
        acc = Fraction(0)
        for m in reversed(self.masses):
            acc += m
            out.append(acc)
        return tuple(reversed(out))

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, m in enumerate(self.masses) if m > 0)

    def tail(self, k: int) -> Fraction:
        return self.tails[k] if k < self.size else Fraction(0)

    def scaled(self, c: Fraction) -> Market:
        """Same masses on the grid multiplied by ``c > 0``."""
        c = to_fraction(c)
        return Market(tuple(v * c for v in self.grid), self.masses)

    def with_masses(self, masses: Iterable[Number]) -> Market:
        return validate_market(self.grid, masses)


def validate_market(grid: Sequence[Number], masses: Sequence[Number]) -> Market:
    grid = tuple(to_fraction(v) for v in grid)
    masses = tuple(to_fraction(m) for m in masses)
    if len(grid) < 2:
        raise GridNotIncreasing(0, "valuation grid needs at least two points")
    if len(masses) != len(grid):
        raise MassNotOne(sum(masses), None, f"{len(masses)} masses for a grid of {len(grid)} valuations")
    if grid[0] <= 0:
        raise GridNotIncreasing(0)
    for k in range(1, len(grid)):
        if grid[k] <= grid[k - 1]:
            raise GridNotIncreasing(k)
    for k, m in enumerate(masses):
        if m < 0:
            raise NegativeMass(k)
    total = sum(masses)
    if total != 1:
        raise MassNotOne(total)
    return Market(grid, masses)


def _check_index(market: Market, k: int) -> None:
    if not 0 <= k < market.size:
        raise IndexOutOfRange(k, market.size)


def revenue(market: Market, k: int) -> Fraction:
    """Expected revenue ``v_k * tail_k`` from posting price ``grid[k]``."""
    _check_index(market, k)
    return market.grid[k] * market.tails[k]


def best_response(grid: Sequence[Fraction], masses: Sequence[Fraction]) -> int:
    """Highest revenue-maximizing price index of an arbitrary mass vector.

    The vector need not sum to one (segments can be passed as label masses);
    ties go to the highest price.
    """
    best_k, best_r = 0, None
    acc = Fraction(0)
    tails = []
    for m in reversed(masses):
        acc += m
        tails.append(acc)
    tails.reverse()
    for k, (v, t) in enumerate(zip(grid, tails)):
        r = v * t
        if best_r is None or r >= best_r:
            best_k, best_r = k, r
    return best_k


def monopoly_price_index(market: Market) -> int:
    """The uniform monopoly price, ties broken toward the higher price."""
    return best_response(market.grid, market.masses)


def consumer_surplus(market: Market, k: int) -> Fraction:
    _check_index(market, k)
    v = market.grid
    return sum(((v[j] - v[k]) * market.masses[j] for j in range(k, market.size)), Fraction(0))


def producer_surplus(market: Market, k: int) -> Fraction:
    """Profit at price ``grid[k]``; marginal cost is zero so this is revenue."""
    return revenue(market, k)


def served_value(market: Market, k: int) -> Fraction:
    """Total valuation of the consumers served at price ``grid[k]``."""
    _check_index(market, k)
    return sum((market.grid[j] * market.masses[j] for j in range(k, market.size)), Fraction(0))


def check_alpha(alpha: Number) -> Fraction:
    alpha = to_fraction(alpha)
    if not Fraction(1, 2) <= alpha <= 1:
        raise AlphaOutOfRange(alpha)
    return alpha


def weighted_total_surplus(alpha: Number, cs: Number, ps: Number) -> Fraction:
    """``alpha * cs + (1 - alpha) * ps`` for a consumer weight in [1/2, 1]."""
    alpha = check_alpha(alpha)
    return alpha * to_fraction(cs) + (1 - alpha) * to_fraction(ps)
