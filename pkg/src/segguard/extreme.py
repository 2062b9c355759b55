"""Extreme markets and the greedy extreme-market decomposition.

An extreme market on a support ``S`` puts mass only on ``S`` and makes the
monopolist indifferent between every price in ``S``. The greedy procedure
repeatedly packs as much of the residual market as possible into the extreme
market on the residual's support; each round removes at least one valuation,
so it stops after at most ``K`` rounds and writes any market as a mixture of
nested extreme markets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptySupport, IndexOutOfRange
from .market import Market, to_fraction

__all__ = [
    "ExtremeMarket",
    "DecompositionStep",
    "GreedyDecomposition",
    "extreme_market",
    "greedy_decompose",
    "mass_containing",
]


@dataclass(frozen=True)
class ExtremeMarket:
    support: tuple[int, ...]
    market: Market


@dataclass(frozen=True)
class DecompositionStep:
    support: tuple[int, ...]
    extreme: Market
    mass: Fraction


@dataclass(frozen=True)
class GreedyDecomposition:
    """Result of :func:`greedy_decompose`.

    ``residuals[l]`` is the residual market left after round ``l`` (so
    ``residuals[0]`` is the input), ending with the all-zero vector once the
    last extreme market absorbs everything. ``alphas[l]`` is the share of
    ``residuals[l]`` packed into ``steps[l].extreme``.
    """

    market: Market
    steps: tuple[DecompositionStep, ...]
    residuals: tuple[tuple[Fraction, ...], ...]
    alphas: tuple[Fraction, ...]

    def recombine(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.market.size
        for step in self.steps:
            for k, m in enumerate(step.extreme.masses):
                out[k] += step.mass * m
        return tuple(out)

    def table(self) -> list[dict]:
        """One row per extreme market: support values, masses and segment mass."""
        grid = self.market.grid
        return [
            {
                "support": [grid[k] for k in step.support],
                "masses": list(step.extreme.masses),
                "mass": step.mass,
            }
            for step in self.steps
        ]


def extreme_market(grid: Sequence, support: Iterable[int]) -> ExtremeMarket:
    """Closed-form extreme market on ``support`` (indices into ``grid``)."""
    grid = tuple(to_fraction(v) for v in grid)
    S = sorted(set(support))
    if not S:
        raise EmptySupport("extreme market needs a non-empty support")
    for k in S:
        if not 0 <= k < len(grid):
            raise IndexOutOfRange(k, len(grid))
    lo = grid[S[0]]
    masses = [Fraction(0)] * len(grid)
    for a, b in zip(S, S[1:]):
        masses[a] = lo * (1 / grid[a] - 1 / grid[b])
    masses[S[-1]] = lo / grid[S[-1]]
    return ExtremeMarket(tuple(S), Market(grid, tuple(masses)))


def greedy_decompose(market: Market) -> GreedyDecomposition:
    residual = market.masses
    residuals = [residual]
    alphas: list[Fraction] = []
    steps: list[DecompositionStep] = []
    remaining = Fraction(1)  # product of (1 - alpha) so far
    while True:
        S = tuple(k for k, m in enumerate(residual) if m > 0)
        target = extreme_market(market.grid, S).market.masses
        if residual == target:
            alphas.append(Fraction(1))
            steps.append(DecompositionStep(S, Market(market.grid, target), remaining))
            residuals.append(tuple(Fraction(0) for _ in residual))
            break
        # z(t) = target + t (residual - target); first coordinate to hit zero
        t_hat = min(target[k] / (target[k] - residual[k]) for k in S if residual[k] < target[k])
        nxt = tuple(target[k] + t_hat * (residual[k] - target[k]) for k in range(len(residual)))
        alpha = 1 - 1 / t_hat
        alphas.append(alpha)
        steps.append(DecompositionStep(S, Market(market.grid, target), remaining * alpha))
        remaining *= 1 - alpha
        residual = nxt
        residuals.append(residual)
    return GreedyDecomposition(market, tuple(steps), tuple(residuals), tuple(alphas))


def mass_containing(decomposition: GreedyDecomposition, index: int) -> Fraction:
    """Total segment mass of the extreme markets whose support holds ``index``."""
    if not 0 <= index < decomposition.market.size:
        raise IndexOutOfRange(index, decomposition.market.size)
    return sum((s.mass for s in decomposition.steps if index in s.support), Fraction(0))
