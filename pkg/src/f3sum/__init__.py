"""Evaluation and verification toolkit for the general triple hypergeometric
series: a shell-ordered adaptive series engine over float64 or exact rational
arithmetic, a registry of resummation rules with two-sided numeric checks,
classical special-case embeddings, closed-form summation lemmas, and a seeded
verification suite.
"""

from .errors import (
    BackendMismatchError,
    DenominatorPoleError,
    F3Error,
    InexactPowerError,
    InvalidIndexError,
    InvalidInstanceError,
    NotConvergedError,
    PoleAtOneError,
)
from .numerics import (
    BACKENDS,
    FLOAT64,
    RATIONAL,
    EvaluationResult,
    Number,
    TruncationPolicy,
    adaptive_sum,
    below_threshold,
    classify_backend,
    coerce_number,
    exact_div,
    is_integer_valued,
    is_nonpositive_integer,
    magnitude_as_float,
    number_pow,
    pochhammer,
    pochhammer_product,
)
from .params import (
    DENOMINATOR_FAMILIES,
    FAMILIES,
    FAMILY_COMBO,
    NUMERATOR_FAMILIES,
    X1_GROUP,
    X2_GROUP,
    X3_GROUP,
    FamilyIndex,
    ParameterSet,
    combo_degree,
    drop_entry,
    entry_value,
    parameter_set_from_json,
    push_entry,
    replace_family,
    set_entry,
    shift_entry,
    shift_family,
    validate,
)
from .f3core import ArgumentTriple, arguments_from_json, eval_f3, eval_pfq, lambda_coeff
from .identities import (
    IDENTITY_IDS,
    CheckReport,
    IdentityInstance,
    IdentityRule,
    binomial_1f0,
    check_identity,
    dd_weight,
    get_rule,
    instance_from_json,
    instance_to_json,
    lhs_value,
    list_identities,
    nearly_poised_3f2,
    rhs_value,
    saalschutz_3f2,
    twob_balanced_3f2,
    validate_instance,
    vandermonde_2f1,
    watson_4f3,
)
from .special import (
    SPECIAL_KINDS,
    check_special_case,
    lauricella_fa3,
    lauricella_fd3,
    special_case_instance,
    srivastava_ha,
)
from .suite import (
    CSV_COLUMNS,
    LEMMA_NAMES,
    LemmaCase,
    SuiteConfig,
    exact_instance,
    lemma_case,
    random_instance,
    run_suite,
    special_case_inputs,
    write_rows_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentTriple",
    "BACKENDS",
    "BackendMismatchError",
    "CheckReport",
    "CSV_COLUMNS",
    "DENOMINATOR_FAMILIES",
    "DenominatorPoleError",
    "EvaluationResult",
    "F3Error",
    "FAMILIES",
    "FAMILY_COMBO",
    "FLOAT64",
    "FamilyIndex",
    "IDENTITY_IDS",
    "IdentityInstance",
    "IdentityRule",
    "InexactPowerError",
    "InvalidIndexError",
    "InvalidInstanceError",
    "LEMMA_NAMES",
    "LemmaCase",
    "NotConvergedError",
    "Number",
    "NUMERATOR_FAMILIES",
    "ParameterSet",
    "PoleAtOneError",
    "RATIONAL",
    "SPECIAL_KINDS",
    "SuiteConfig",
    "TruncationPolicy",
    "X1_GROUP",
    "X2_GROUP",
    "X3_GROUP",
    "adaptive_sum",
    "arguments_from_json",
    "binomial_1f0",
    "check_identity",
    "check_special_case",
    "classify_backend",
    "combo_degree",
    "dd_weight",
    "drop_entry",
    "entry_value",
    "eval_f3",
    "eval_pfq",
    "exact_instance",
    "get_rule",
    "instance_from_json",
    "instance_to_json",
    "lambda_coeff",
    "lauricella_fa3",
    "lauricella_fd3",
    "lemma_case",
    "lhs_value",
    "list_identities",
    "nearly_poised_3f2",
    "parameter_set_from_json",
    "pochhammer",
    "pochhammer_product",
    "below_threshold",
    "coerce_number",
    "exact_div",
    "is_integer_valued",
    "is_nonpositive_integer",
    "magnitude_as_float",
    "number_pow",
    "push_entry",
    "random_instance",
    "replace_family",
    "rhs_value",
    "run_suite",
    "saalschutz_3f2",
    "set_entry",
    "shift_entry",
    "shift_family",
    "special_case_instance",
    "special_case_inputs",
    "srivastava_ha",
    "twob_balanced_3f2",
    "validate",
    "validate_instance",
    "vandermonde_2f1",
    "watson_4f3",
    "write_rows_csv",
]
