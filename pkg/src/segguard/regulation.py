"""Databases, policies and their worst-case classification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import Bounds, compute_bounds, f2_nonempty
from .errors import InvalidDatabase
from .market import Market, check_alpha, to_fraction

__all__ = [
    "Database",
    "validate_database",
    "TRIVIAL_DATABASE",
    "Classification",
    "classify",
    "classify_weighted",
    "policy_is_worst_case_optimal",
]


@dataclass(frozen=True)
class Database:
    """Label masses ``f_s > 0`` summing to one."""

    masses: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.masses)

    def __len__(self) -> int:
        return len(self.masses)

    def __getitem__(self, s: int) -> Fraction:
        return self.masses[s]


def validate_database(masses: Sequence) -> Database:
    masses = tuple(to_fraction(m) for m in masses)
    if not masses:
        raise InvalidDatabase(None, "a database needs at least one label")
    for s, m in enumerate(masses):
        if m <= 0:
            raise InvalidDatabase(s, f"label {s} has non-positive mass {m}")
    total = sum(masses)
    if total != 1:
        raise InvalidDatabase(None, f"label masses sum to {total}, not 1")
    return Database(masses)


TRIVIAL_DATABASE = Database((Fraction(1),))


@dataclass(frozen=True)
class Classification:
    in_wc: bool
    in_f2: bool
    undominated: bool
    binding_label: int | None
    bounds: Bounds


def classify(market: Market, database: Database, bounds: Bounds | None = None) -> Classification:
    """Membership in WC (worst-case optimal), F2 and the undominated set.

    Boundaries are strict: a label holding exactly ``lambda_lower`` breaks
    worst-case optimality, and a label holding exactly ``lambda_upper`` does
    not qualify for F2. ``binding_label`` is the first label violating the
    lower bound, or, for F2 members, the first label below the upper bound.
    """
    if bounds is None:
        bounds = compute_bounds(market)
    f = database.masses
    violators = [s for s, m in enumerate(f) if m <= bounds.lambda_lower]
    in_wc = not violators
    qualifying = [s for s, m in enumerate(f) if m < bounds.lambda_upper]
    in_f2 = in_wc and bool(qualifying)
    undominated = in_f2 if f2_nonempty(bounds) else in_wc
    if violators:
        binding = violators[0]
    elif in_f2:
        binding = qualifying[0]
    else:
        binding = None
    return Classification(in_wc, in_f2, undominated, binding, bounds)


def classify_weighted(market: Market, database: Database, alpha) -> Classification:
    """Classification under the ``alpha``-weighted surplus objective.

    For consumer weights in [1/2, 1] the worst-case optimal and F2 sets are the
    same as under pure consumer surplus, so this returns :func:`classify`'s
    answer after validating ``alpha``; the LP oracle checks the equality
    independently.
    """
    check_alpha(alpha)
    return classify(market, database)


def policy_is_worst_case_optimal(market: Market, databases: Sequence[Database]) -> tuple[bool, int | None]:
    """``(True, None)`` when every permitted database is worst-case optimal,
    otherwise ``(False, i)`` for the first offending database."""
    if not databases:
        return True, None
    bounds = compute_bounds(market)
    for i, db in enumerate(databases):
        if not classify(market, db, bounds).in_wc:
            return False, i
    return True, None
