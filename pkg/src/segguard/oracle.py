"""Brute-force worst/best case over all feasible segmentations.

For a fixed price profile (one price per label) the segmentations under which
every label's price is weakly optimal form a polytope, and consumer surplus,
producer surplus and their weighted mixtures are linear on it. Enumerating the
profiles and solving one exact LP per profile therefore gives the exact
infimum and supremum of the objective over all feasible segmentations.

Tie-breaking toward the higher price matters only at the boundary of these
polytopes:

* infimum: among equally profitable prices the highest one leaves the least
  surplus, so the weak-polytope minimum over all profiles *is* the infimum
  under true tie-breaking, and it is attained at the minimizing vertex;
* supremum: a weak-polytope maximizer may rely on a tie resolved the "wrong"
  way. A profile counts only if some segmentation makes it the true best
  response (strict margin over every higher price); its supremum is then the
  weak maximum, attained when the optimal vertex is itself a true best
  response and otherwise approached by margin-constrained witnesses.

The LP works with joint masses ``w(s, k) = f_s * sigma(k | s)`` so that the
marginal constraints carry no label weights. Valuations without aggregate mass
are dropped: no label can hold them, and such a price can never be optimal.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EnumerationTooLarge, Infeasible
from .market import Market, check_alpha, monopoly_price_index
from .regulation import Database
from .segmentation import Segmentation, SegmentationOutcome, evaluate, independent_segmentation
from .simplex import LinearProgram, solve_lp

__all__ = [
    "OracleResult",
    "DEFAULT_MAX_PROFILES",
    "max_profiles",
    "candidate_profiles",
    "profile_program",
    "segmentation_point",
    "point_to_segmentation",
    "in_profile_polytope",
    "worst_case_cs",
    "best_case_cs",
    "worst_case_weighted",
    "best_case_weighted",
    "objective_value",
    "max_segment_mass",
    "lower_threshold",
    "upper_threshold",
]

DEFAULT_MAX_PROFILES = 10**6
MAX_HALVINGS = 64


def max_profiles() -> int:
    raw = os.environ.get("SEGGUARD_MAX_PROFILES")
    return int(raw) if raw else DEFAULT_MAX_PROFILES


@dataclass(frozen=True)
class OracleResult:
    """Exact extremum of an objective over all feasible segmentations.

    ``value`` is the infimum or supremum. ``witness`` is a feasible
    segmentation and ``witness_outcome`` its true (tie-broken) outcome.
    ``achieved`` says whether the witness's true price profile is ``profile``;
    ``attained`` whether the witness's true objective equals ``value``.
    """

    value: Fraction
    profile: tuple[int, ...]
    witness: Segmentation
    witness_outcome: SegmentationOutcome
    witness_value: Fraction
    achieved: bool
    attained: bool
    profiles: int
    lp_solves: int
    vertices: tuple[Segmentation, ...] = ()


def objective_value(outcome: SegmentationOutcome, alpha: Fraction) -> Fraction:
    return alpha * outcome.cs + (1 - alpha) * outcome.ps


def candidate_profiles(market: Market, database: Database) -> list[tuple[int, ...]]:
    """Profiles over the support, lexicographic, one per relabelling class.

    Labels of equal mass are interchangeable, so only profiles that are
    non-decreasing within each group of equal labels are kept; these are the
    lexicographically smallest members of their classes.
    """
    support = market.support
    f = database.masses
    profiles = []
    for prof in itertools.product(support, repeat=database.size):
        if any(f[s] == f[t] and prof[s] > prof[t] for s in range(len(f)) for t in range(s + 1, len(f))):
            continue
        profiles.append(prof)
    return profiles


def _check_size(market: Market, database: Database) -> int:
    count = len(market.support) ** database.size
    limit = max_profiles()
    if count > limit:
        raise EnumerationTooLarge(count, limit)
    return count


def profile_program(
    market: Market,
    database: Database,
    profile: Sequence[int],
    alpha: Fraction = Fraction(1),
    maximize: bool = False,
    margin: Fraction | None = None,
) -> LinearProgram:
    """LP over joint masses for one price profile.

    Variables are ``w(s, k)`` for each label ``s`` and support index ``k``,
    ordered label-major. ``margin``, when given, demands that each label's
    price beat every higher price by ``margin`` in conditional revenue.
    """
    v = market.grid
    supp = market.support
    n, m = database.size, len(supp)
    nv = n * m
    f = database.masses

    eq_rows, eq_rhs = [], []
    for s in range(n):
        row = [Fraction(0)] * nv
        for a in range(m):
            row[s * m + a] = Fraction(1)
        eq_rows.append(tuple(row))
        eq_rhs.append(f[s])
    for a, k in enumerate(supp):
        row = [Fraction(0)] * nv
        for s in range(n):
            row[s * m + a] = Fraction(1)
        eq_rows.append(tuple(row))
        eq_rhs.append(market.masses[k])

    ub_rows, ub_rhs = [], []
    for s, p in enumerate(profile):
        for i in supp:
            if i == p:
                continue
            # v_i * tail_i(w_s) - v_p * tail_p(w_s) <= -margin
            row = [Fraction(0)] * nv
            for a, k in enumerate(supp):
                row[s * m + a] = (v[i] if k >= i else 0) - (v[p] if k >= p else 0)
            ub_rows.append(tuple(row))
            ub_rhs.append(-margin * f[s] if (margin is not None and i > p) else Fraction(0))

    c = [Fraction(0)] * nv
    for s, p in enumerate(profile):
        for a, k in enumerate(supp):
            if k >= p:
                c[s * m + a] = alpha * (v[k] - v[p]) + (1 - alpha) * v[p]
    return LinearProgram(tuple(c), tuple(eq_rows), tuple(eq_rhs), tuple(ub_rows), tuple(ub_rhs), maximize)


def _margin_program(market: Market, database: Database, profile: Sequence[int]) -> LinearProgram:
    """Maximize a common margin ``d <= 1`` by which each label's price beats
    every higher price (conditional revenue)."""
    base = profile_program(market, database, profile)
    nv = base.num_vars
    f = database.masses
    supp = market.support
    ub_rows, ub_rhs = [], []
    idx = 0
    for s, p in enumerate(profile):
        for i in supp:
            if i == p:
                continue
            row = base.ub_rows[idx]
            idx += 1
            ub_rows.append(row + ((f[s] if i > p else Fraction(0)),))
            ub_rhs.append(Fraction(0))
    ub_rows.append(tuple([Fraction(0)] * nv) + (Fraction(1),))
    ub_rhs.append(Fraction(1))
    eq_rows = tuple(r + (Fraction(0),) for r in base.eq_rows)
    c = tuple([Fraction(0)] * nv) + (Fraction(1),)
    return LinearProgram(c, eq_rows, base.eq_rhs, tuple(ub_rows), tuple(ub_rhs), maximize=True)


def point_to_segmentation(market: Market, database: Database, x: Sequence[Fraction]) -> Segmentation:
    supp = market.support
    m = len(supp)
    conditionals = []
    for s, f in enumerate(database.masses):
        masses = [Fraction(0)] * market.size
        for a, k in enumerate(supp):
            masses[k] = x[s * m + a] / f
        conditionals.append(Market(market.grid, tuple(masses)))
    return Segmentation(database, tuple(conditionals))


def segmentation_point(market: Market, segmentation: Segmentation) -> tuple[Fraction, ...]:
    """Inverse of the LP variable layout: joint masses on the support."""
    out = []
    for s in range(segmentation.database.size):
        joint = segmentation.label_masses(s)
        out.extend(joint[k] for k in market.support)
    return tuple(out)


def in_profile_polytope(market: Market, segmentation: Segmentation, profile: Sequence[int]) -> bool:
    """Whether ``segmentation`` is feasible and each label's price is weakly optimal."""
    if any(segmentation.label_masses(s)[k] != 0 for s in range(segmentation.database.size)
           for k in range(market.size) if k not in market.support):
        return False
    lp = profile_program(market, segmentation.database, profile)
    return lp.is_feasible_point(segmentation_point(market, segmentation))


def _solve_profile(args):
    market, database, profile, alpha, maximize = args
    lp = profile_program(market, database, profile, alpha, maximize)
    try:
        sol = solve_lp(lp)
    except Infeasible:
        return profile, None, None
    return profile, sol.value, sol.x


def _solve_all(market, database, profiles, alpha, maximize, workers, stop_at=None):
    tasks = [(market, database, p, alpha, maximize) for p in profiles]
    if workers and workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_solve_profile, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    out = []
    for t in tasks:
        res = _solve_profile(t)
        out.append(res)
        if stop_at is not None and res[1] is not None and res[1] == stop_at:
            break
    return out


def _optimize(market, database, alpha, maximize, workers, keep_vertices) -> OracleResult:
    alpha = check_alpha(alpha)
    _check_size(market, database)
    profiles = candidate_profiles(market, database)
    # consumer surplus is never negative, so a zero infimum ends the search
    stop_at = Fraction(0) if (alpha == 1 and not maximize and not keep_vertices) else None
    solved = _solve_all(market, database, profiles, alpha, maximize, workers, stop_at)
    lp_solves = len(solved)

    feasible = []
    for profile, value, x in solved:
        if value is None:
            continue
        seg = point_to_segmentation(market, database, x)
        out = evaluate(market, seg)
        feasible.append((profile, value, seg, out))
    vertices = tuple(seg for _, _, seg, _ in feasible) if keep_vertices else ()

    if not maximize:
        profile, value, seg, out = min(feasible, key=lambda r: (r[1], r[0]))
        true_value = objective_value(out, alpha)
        return OracleResult(value, profile, seg, out, true_value, out.prices == profile,
                            true_value == value, len(profiles), lp_solves, vertices)

    baseline = objective_value(evaluate(market, independent_segmentation(market, database)), alpha)
    ranked = sorted(feasible, key=lambda r: (-r[1], r[3].prices != r[0], r[0]))
    for profile, value, seg, out in ranked:
        if out.prices == profile:
            return OracleResult(value, profile, seg, out, value, True, True, len(profiles), lp_solves, vertices)
        margin = solve_lp(_margin_program(market, database, profile))
        lp_solves += 1
        if margin.value <= 0:
            continue  # never the true best response
        witness = None
        for k in range(1, MAX_HALVINGS + 1):
            lp = profile_program(market, database, profile, alpha, True, Fraction(1, 2**k))
            try:
                sol = solve_lp(lp)
            except Infeasible:
                lp_solves += 1
                continue
            lp_solves += 1
            cand = point_to_segmentation(market, database, sol.x)
            cand_out = evaluate(market, cand)
            if witness is None:
                witness = (cand, cand_out)
            if objective_value(cand_out, alpha) > baseline:
                witness = (cand, cand_out)
                break
        if witness is None:
            raise RuntimeError(f"profile {profile} has a strict interior but no margin witness was found")
        cand, cand_out = witness
        return OracleResult(value, profile, cand, cand_out, objective_value(cand_out, alpha),
                            cand_out.prices == profile, False, len(profiles), lp_solves, vertices)
    raise RuntimeError("no achievable price profile; the independent segmentation always is one")


def worst_case_cs(market: Market, database: Database, *, workers: int = 1, keep_vertices: bool = False) -> OracleResult:
    """Infimum of consumer surplus over all segmentations consistent with both marginals."""
    return _optimize(market, database, Fraction(1), False, workers, keep_vertices)


def best_case_cs(market: Market, database: Database, *, workers: int = 1, keep_vertices: bool = False) -> OracleResult:
    """Supremum of consumer surplus under true tie-breaking."""
    return _optimize(market, database, Fraction(1), True, workers, keep_vertices)


def worst_case_weighted(market: Market, database: Database, alpha, *, workers: int = 1,
                        keep_vertices: bool = False) -> OracleResult:
    return _optimize(market, database, alpha, False, workers, keep_vertices)


def best_case_weighted(market: Market, database: Database, alpha, *, workers: int = 1,
                       keep_vertices: bool = False) -> OracleResult:
    return _optimize(market, database, alpha, True, workers, keep_vertices)


def max_segment_mass(market: Market, price: int) -> Fraction:
    """Largest mass ``sum(w)`` of a sub-market ``0 <= w <= x`` in which
    ``price`` is a (weakly) revenue-maximizing price."""
    v, K = market.grid, market.size
    ub_rows, ub_rhs = [], []
    for k in range(K):
        row = [Fraction(0)] * K
        row[k] = Fraction(1)
        ub_rows.append(tuple(row))
        ub_rhs.append(market.masses[k])
    for j in range(K):
        if j != price:
            ub_rows.append(tuple((v[j] if k >= j else 0) - (v[price] if k >= price else 0) for k in range(K)))
            ub_rhs.append(Fraction(0))
    lp = LinearProgram(tuple([Fraction(1)] * K), (), (), tuple(ub_rows), tuple(ub_rhs), maximize=True)
    return solve_lp(lp).value


def lower_threshold(market: Market) -> Fraction:
    """Largest segment in which a price above the uniform price is optimal."""
    i_star = monopoly_price_index(market)
    return max(max_segment_mass(market, k) for k in range(i_star + 1, market.size))


def upper_threshold(market: Market) -> Fraction:
    """Largest segment in which a price below the uniform price is optimal
    (zero when there is no lower price)."""
    i_star = monopoly_price_index(market)
    return max((max_segment_mass(market, k) for k in range(i_star)), default=Fraction(0))
