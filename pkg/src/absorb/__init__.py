"""Absorption in finite semigroups and n-ary semigroups.

Decide whether a subalgebra absorbs via the product-plus-exponent
criterion, cross-check against a brute-force absorbing-term oracle, and
machine-verify the equivalences over exhaustively enumerated corpora.
"""

from .core import (
    NaryTable,
    PowerProfile,
    Subuniverse,
    Word,
    compute_exponent,
    element_power,
    enumerate_subuniverses,
    eval_word,
    is_associative,
    is_closed,
    power_profile,
)
from .criteria import (
    AbsorptionVerdict,
    CaseTag,
    FailedCondition,
    cond2_products,
    cond3_products,
    construct_witness,
    decide_theorem,
    derive_power_algebra,
    detect_case,
    is_commutative,
    is_idempotent,
    verify_witness,
)
from .errors import (
    AbsorbError,
    AttemptCapExhausted,
    BudgetExceeded,
    InvalidArityTarget,
    LengthNotEvaluable,
    NotAssociative,
    NotClosed,
    NotProperSubuniverse,
    PreconditionsUnmet,
)
from .generate import (
    GenSpec,
    canonical_form,
    derive_from_semigroup,
    enumerate_pairs,
    enumerate_tables,
    random_filtered,
)
from .harness import (
    CorpusReport,
    PairReport,
    check_pair,
    derived_fact_probes,
    run_corpus,
    table_digest,
)
from .oracle import Agreement, OracleBounds, OracleOutcome, oracle_agrees, search_absorbing_term
from .version import VERSION

__version__ = VERSION

__all__ = [
    "AbsorbError",
    "AbsorptionVerdict",
    "Agreement",
    "AttemptCapExhausted",
    "BudgetExceeded",
    "CaseTag",
    "CorpusReport",
    "FailedCondition",
    "GenSpec",
    "InvalidArityTarget",
    "LengthNotEvaluable",
    "NaryTable",
    "NotAssociative",
    "NotClosed",
    "NotProperSubuniverse",
    "OracleBounds",
    "OracleOutcome",
    "PairReport",
    "PowerProfile",
    "PreconditionsUnmet",
    "Subuniverse",
    "Word",
    "canonical_form",
    "check_pair",
    "compute_exponent",
    "cond2_products",
    "cond3_products",
    "construct_witness",
    "decide_theorem",
    "derive_from_semigroup",
    "derive_power_algebra",
    "derived_fact_probes",
    "detect_case",
    "element_power",
    "enumerate_pairs",
    "enumerate_subuniverses",
    "enumerate_tables",
    "eval_word",
    "is_associative",
    "is_closed",
    "is_commutative",
    "is_idempotent",
    "oracle_agrees",
    "power_profile",
    "random_filtered",
    "run_corpus",
    "search_absorbing_term",
    "table_digest",
    "verify_witness",
]
