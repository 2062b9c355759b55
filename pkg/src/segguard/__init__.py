"""Exact tools for deciding which consumer databases a regulator can safely allow.

A seller who learns a label for each consumer can price each labelled group
separately. Depending on how the labels correlate with valuations, this can
lower or raise consumer surplus relative to a single uniform price. The
package computes the label-mass thresholds that separate the two cases,
constructs the segmentations that realize them, and checks every claim against
a brute-force exact LP oracle.
"""

from .bounds import Bounds, compute_bounds, f2_nonempty, max_label_count, nontrivial_wc_nonempty
from .constructions import construct_cs_improving, construct_cs_reducing
from .errors import (
    SegGuardError,
    GridNotIncreasing,
    NegativeMass,
    MassNotOne,
    InvalidDatabase,
    AlphaOutOfRange,
    EmptySupport,
    IndexOutOfRange,
    UniformPriceAtTop,
    LabelNotBinding,
    TrivialDatabase,
    NotWorstCaseOptimal,
    LabelNotQualifying,
    InconsistentMarginals,
    Infeasible,
    Unbounded,
    EnumerationTooLarge,
)
from .extreme import extreme_market, greedy_decompose, mass_containing
from .market import (
    Market,
    best_response,
    consumer_surplus,
    monopoly_price_index,
    producer_surplus,
    revenue,
    validate_market,
    weighted_total_surplus,
)
from .oracle import OracleResult, best_case_cs, best_case_weighted, worst_case_cs, worst_case_weighted
from .regulation import (
    TRIVIAL_DATABASE,
    Classification,
    Database,
    classify,
    classify_weighted,
    policy_is_worst_case_optimal,
    validate_database,
)
from .segmentation import Segmentation, SegmentationOutcome, evaluate, independent_segmentation, make_segmentation
from .simplex import LinearProgram, solve_lp

__version__ = "0.1.0"
