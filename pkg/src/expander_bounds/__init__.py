"""Expander and layered LDPC codes over GF(q): construction, exact analysis
and relative-distance bounds."""

from .galois import FieldElement, FieldSpec, field_of_order, make_field
from .matrix import ColumnMap, MatrixGF, apply_column_map, nullspace, rank, rref
from .constituent import (
    ConstituentCode,
    InstanceTooLarge,
    WeightEnumerator,
    eval_log_g0,
    exact_weight_enumerator,
    g0_estimate_expurgated,
    g0_estimate_rs,
    rs_parity_check,
)
from .ensemble import (
    CodeSample,
    EnsembleSpec,
    ExpanderParams,
    assemble_expander,
    block_diagonal,
    sample,
    zero_prefix_subcode,
)
from .analysis import CodeReport, analyze, layer_enumerator, average_spectrum
from .bounds import (
    BoundResult,
    F,
    entropy_q,
    inner_max,
    lower_bound_root,
    optimize_delta0,
    plotkin_term,
    upper_asymptotic,
    upper_finite,
    vg_bound,
)

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldSpec",
    "field_of_order",
    "make_field",
    "ColumnMap",
    "MatrixGF",
    "apply_column_map",
    "nullspace",
    "rank",
    "rref",
    "ConstituentCode",
    "InstanceTooLarge",
    "WeightEnumerator",
    "eval_log_g0",
    "exact_weight_enumerator",
    "g0_estimate_expurgated",
    "g0_estimate_rs",
    "rs_parity_check",
    "CodeSample",
    "EnsembleSpec",
    "ExpanderParams",
    "assemble_expander",
    "block_diagonal",
    "sample",
    "zero_prefix_subcode",
    "CodeReport",
    "analyze",
    "layer_enumerator",
    "average_spectrum",
    "BoundResult",
    "F",
    "entropy_q",
    "inner_max",
    "lower_bound_root",
    "optimize_delta0",
    "plotkin_term",
    "upper_asymptotic",
    "upper_finite",
    "vg_bound",
]
