"""Group-fairness auditing for entity matching.

Thin wrapper over the C++ core. The heavy lifting (confusion accumulation,
disparity math, threshold sweeps, dataset generation) happens in `_core`;
this layer only decodes the JSON report into plain dictionaries.
"""

import json as _json

from ._core import (
    AuditError,
    ConfusionMatrix,
    Correspondence,
    GroupEncoding,
    GroupUniverse,
    accumulate_pairwise,
    accumulate_single,
    applicable,
    disparity_div,
    disparity_sub,
    eo_value,
    legitimate_pairwise,
    legitimate_single,
    levenshtein,
    load_correspondences,
    measure_value,
    overall_matrix,
    pair_gap,
    perturb_name,
    rates,
    run_audit_json,
    score_match,
    sensitivity_l2,
    similarity,
)

__all__ = [
    "AuditError",
    "ConfusionMatrix",
    "Correspondence",
    "GroupEncoding",
    "GroupUniverse",
    "accumulate_pairwise",
    "accumulate_single",
    "applicable",
    "disparity_div",
    "disparity_sub",
    "eo_value",
    "legitimate_pairwise",
    "legitimate_single",
    "levenshtein",
    "load_correspondences",
    "measure_value",
    "overall_matrix",
    "pair_gap",
    "perturb_name",
    "rates",
    "run_audit",
    "score_match",
    "sensitivity_l2",
    "similarity",
]


def run_audit(correspondences, universe, **kwargs):
    """Audit correspondences and return the report as a dictionary.

    Keyword arguments mirror the CLI: mode ("single", "pairwise", "both"),
    level or targets, measures, tau, op ("sub"/"div"), convention
    ("eq"/"table"), baseline ("overall"/"complement"), threshold.
    """
    return _json.loads(run_audit_json(correspondences, universe, **kwargs))
