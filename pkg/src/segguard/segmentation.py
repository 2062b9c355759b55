"""Segmentations of a market by a database and the outcomes they induce."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InconsistentMarginals, MassNotOne
from .market import Market, best_response, check_alpha, validate_market
from .regulation import Database

__all__ = ["Segmentation", "SegmentationOutcome", "make_segmentation", "evaluate", "independent_segmentation"]


@dataclass(frozen=True)
class Segmentation:
    database: Database
    conditionals: tuple[Market, ...]

    def label_masses(self, s: int) -> tuple[Fraction, ...]:
        """Joint masses ``f_s * sigma(.|s)``."""
        f = self.database.masses[s]
        return tuple(f * m for m in self.conditionals[s].masses)


@dataclass(frozen=True)
class SegmentationOutcome:
    prices: tuple[int, ...]
    cs: Fraction
    ps: Fraction

    def w_alpha(self, alpha) -> Fraction:
        alpha = check_alpha(alpha)
        return alpha * self.cs + (1 - alpha) * self.ps


def make_segmentation(market: Market, database: Database, conditionals: Sequence[Sequence]) -> Segmentation:
    if len(conditionals) != database.size:
        raise MassNotOne(None, None, f"{len(conditionals)} conditionals for {database.size} labels")
    markets = tuple(validate_market(market.grid, c) for c in conditionals)
    return Segmentation(database, markets)


def independent_segmentation(market: Market, database: Database) -> Segmentation:
    """Every label sees the aggregate market."""
    return Segmentation(database, tuple(market for _ in database.masses))


def marginal_residuals(market: Market, segmentation: Segmentation) -> list[Fraction]:
    out = []
    for k in range(market.size):
        mix = sum(f * c.masses[k] for f, c in zip(segmentation.database.masses, segmentation.conditionals))
        out.append(mix - market.masses[k])
    return out


def check_consistent(market: Market, segmentation: Segmentation) -> None:
    residuals = marginal_residuals(market, segmentation)
    worst = max(range(len(residuals)), key=lambda k: abs(residuals[k]))
    if residuals[worst] != 0:
        raise InconsistentMarginals(worst, residuals[worst])


def evaluate(market: Market, segmentation: Segmentation) -> SegmentationOutcome:
    """Per-segment monopoly prices (ties to the higher price) and the surplus
    they leave to consumers and producer."""
    check_consistent(market, segmentation)
    v = market.grid
    prices = []
    cs = ps = Fraction(0)
    for f, cond in zip(segmentation.database.masses, segmentation.conditionals):
        p = best_response(v, cond.masses)
        prices.append(p)
        for j in range(p, market.size):
            cs += f * (v[j] - v[p]) * cond.masses[j]
            ps += f * v[p] * cond.masses[j]
    return SegmentationOutcome(tuple(prices), cs, ps)
