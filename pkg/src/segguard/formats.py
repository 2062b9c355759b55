"""JSON and CSV encodings.

Rationals travel as ``"p/q"`` strings (integers as plain digits) and every
exact value is paired with a ``*_dec`` float for human eyes only; parsers read
the exact strings and ignore the decimals.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .bounds import Bounds
from .extreme import GreedyDecomposition
from .market import Market, to_fraction, validate_market
from .oracle import OracleResult
from .regulation import Classification, Database, validate_database
from .segmentation import Segmentation, SegmentationOutcome, make_segmentation


def q(x: Fraction | int) -> str:
    return str(Fraction(x))


def dec(x: Fraction) -> float:
    return float(x)


def _parse_number(value: Any) -> Fraction:
    # JSON integers are exact; JSON floats are not and to_fraction refuses them
    return to_fraction(value)


def market_from_json(data: dict) -> Market:
    return validate_market(
        [_parse_number(v) for v in data["valuations"]],
        [_parse_number(m) for m in data["masses"]],
    )


def market_to_json(market: Market) -> dict:
    return {"valuations": [q(v) for v in market.grid], "masses": [q(m) for m in market.masses]}


def database_from_json(data: dict) -> Database:
    return validate_database([_parse_number(m) for m in data["masses"]])


def database_to_json(database: Database) -> dict:
    return {"masses": [q(m) for m in database.masses]}


def segmentation_from_json(market: Market, data: dict) -> Segmentation:
    db = database_from_json(data["database"])
    conditionals = [[_parse_number(m) for m in row] for row in data["conditionals"]]
    return make_segmentation(market, db, conditionals)


def segmentation_to_json(segmentation: Segmentation) -> dict:
    return {
        "database": database_to_json(segmentation.database),
        "conditionals": [[q(m) for m in c.masses] for c in segmentation.conditionals],
    }


def outcome_to_json(market: Market, outcome: SegmentationOutcome) -> dict:
    return {
        "prices": [q(market.grid[p]) for p in outcome.prices],
        "cs": q(outcome.cs),
        "cs_dec": dec(outcome.cs),
        "ps": q(outcome.ps),
        "ps_dec": dec(outcome.ps),
    }


def bounds_to_json(market: Market, bounds: Bounds) -> dict:
    v = market.grid
    out: dict[str, Any] = {}
    for key in ("lambda_lower", "lambda_upper", "u_star", "pi_star"):
        val = getattr(bounds, key)
        out[key] = q(val)
        out[f"{key}_dec"] = dec(val)
    out["v_star"] = q(v[bounds.i_star])
    out["v_bar"] = q(v[bounds.i_bar])
    out["v_low"] = q(v[bounds.i_low])
    return out


def classification_to_json(market: Market, cls: Classification) -> dict:
    return {
        "in_wc": cls.in_wc,
        "in_f2": cls.in_f2,
        "undominated": cls.undominated,
        "binding_label": None if cls.binding_label is None else cls.binding_label + 1,
        "bounds": bounds_to_json(market, cls.bounds),
    }


def oracle_to_json(market: Market, result: OracleResult) -> dict:
    return {
        "value": q(result.value),
        "value_dec": dec(result.value),
        "profile": [q(market.grid[p]) for p in result.profile],
        "witness": segmentation_to_json(result.witness),
        "witness_outcome": outcome_to_json(market, result.witness_outcome),
        "witness_value": q(result.witness_value),
        "achieved": result.achieved,
        "attained": result.attained,
        "profiles": result.profiles,
        "lp_solves": result.lp_solves,
    }


def decomposition_to_json(dec_: GreedyDecomposition) -> list[dict]:
    return [
        {"support": [q(v) for v in row["support"]], "masses": [q(m) for m in row["masses"]], "mass": q(row["mass"])}
        for row in dec_.table()
    ]


def decomposition_table(dec_: GreedyDecomposition) -> str:
    """Plain-text table: one extreme market per row with its segment mass."""
    grid = dec_.market.grid
    header = ["extreme market"] + [f"v={q(v)}" for v in grid] + ["mass"]
    rows = [header]
    for i, step in enumerate(dec_.steps):
        rows.append([f"x^{i}"] + [q(m) for m in step.extreme.masses] + [q(step.mass)])
    widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], exact: Iterable[str] = ()) -> str:
    """CSV text with ``\\n`` line ends; columns named in ``exact`` are quoted."""
    exact = set(exact)
    quote_cols = [h in exact for h in header]
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell, quoted in zip(row, quote_cols):
            text = q(cell) if isinstance(cell, (Fraction, int)) and not isinstance(cell, bool) else str(cell)
            cells.append(f'"{text}"' if quoted else text)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_json(path: str | Path) -> Any:
    with open(path) as fh:
        return json.load(fh, parse_float=_refuse_float)


def _refuse_float(text: str):
    raise TypeError(f"refusing inexact JSON number {text}; write it as a \"p/q\" string")
