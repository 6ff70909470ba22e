"""Exact and Monte Carlo analysis of collectively canalizing Boolean functions."""

from .canalization import (
    CanalizationProfile,
    CanalizingComponent,
    LayerStructure,
    PkEstimate,
    canalizing_components,
    canalizing_depth,
    estimate_pk,
    is_ncf_single_layer,
    k_set_count,
    layer_structure,
    pk,
    pk_vector,
    profile,
)
from .core import (
    MAX_EXACT_ARITY,
    PartialAssignment,
    TruthTable,
    and_function,
    constant_function,
    generate,
    ncf_function,
    or_function,
    parity_function,
    threshold_function,
)
from .ensemble import (
    BiasSpec,
    empirical_expectation,
    expected_pk,
    expected_strength,
    probability_positive_pk,
    sample_biased,
)
from .errors import ArityCapError, CanalyzerError, ConstantFunctionError, ParseError
from .parser import parse, parse_to_table, to_table, to_text
from .sensitivity import (
    SensitivityReport,
    average_sensitivity,
    check_sensitivity_bounds,
    sensitivity_at,
)
from .sweep import SweepRecord, SymmetryPartition, enumerate_all, figure2_aggregate, symmetry_groups

__version__ = "0.1.0"
