"""Absorption decision criteria for finite semigroups and n-ary semigroups.

The binary criterion: B absorbs A iff ab and ba stay in B for every a in A,
b in B, and some exponent k > 1 satisfies a^k = a for all a.  For arity
n >= 3 the same operation tests the padded products a b^(n-1) and b^(n-1) a;
detect_case records which proved case (if any) certifies the verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .core import (
    NaryTable,
    Subuniverse,
    Word,
    _reduce_left,
    compute_exponent,
    eval_word,
    is_associative,
    is_closed,
    length_evaluable,
)
from .errors import (
    InvalidArityTarget,
    LengthNotEvaluable,
    NotAssociative,
    NotClosed,
    NotProperSubuniverse,
)


class FailedCondition(str, Enum):
    PRODUCTS_ESCAPE_B = "ProductsEscapeB"
    NO_EXPONENT = "NoExponent"


class CaseTag(str, Enum):
    """Which proved case certifies the criterion for a (table, sub) pair."""

    THEOREM_BINARY = "TheoremBinary"
    THEOREM_COMMUTATIVE = "TheoremCommutative"
    THEOREM_COATOM = "TheoremCoatom"
    THEOREM_IDEMPOTENT_TERNARY = "TheoremIdempotentTernary"
    CONJECTURAL = "Conjectural"

    def is_proved(self) -> bool:
        return self is not CaseTag.CONJECTURAL


@dataclass(frozen=True)
class AbsorptionVerdict:
    """Decision outcome with evidence.

    absorbs=True carries the exponent and a verified witness word;
    absorbs=False names the first failing clause (products checked before
    the exponent).  exponent_k is populated whenever the exponent exists,
    even on failed verdicts.
    """

    absorbs: bool
    exponent_k: int | None
    witness: Word | None
    failed_condition: FailedCondition | None
    proof_status: CaseTag


def _require_pair(table: NaryTable, sub: Subuniverse) -> None:
    if sub.carrier_size != table.size:
        raise ValueError("subuniverse carrier does not match table size")
    if not is_associative(table):
        raise NotAssociative("table is not associative")
    if not is_closed(table, sub):
        raise NotClosed(f"subset {sub.elements} is not closed")
    if not sub.is_proper():
        raise NotProperSubuniverse("criterion requires a proper subuniverse")


def cond2_products(table: NaryTable, sub: Subuniverse) -> bool:
    """Padded products a b^(n-1) and b^(n-1) a stay in the subset."""
    pad = table.arity - 1
    members = sub.members
    for b in sub.elements:
        for a in range(table.size):
            if table.apply(a, *([b] * pad)) not in members:
                return False
            if table.apply(*([b] * pad), a) not in members:
                return False
    return True


def cond3_products(table: NaryTable, sub: Subuniverse) -> bool:
    """Every n-tuple with at least one coordinate in the subset lands in it."""
    members = sub.members
    for tup in itertools.product(range(table.size), repeat=table.arity):
        if members.isdisjoint(tup):
            continue
        if table.apply(*tup) not in members:
            return False
    return True


def is_commutative(table: NaryTable) -> bool:
    """Invariant under all argument permutations; adjacent swaps suffice."""
    for tup in itertools.product(range(table.size), repeat=table.arity):
        value = table.apply(*tup)
        for i in range(table.arity - 1):
            swapped = tup[:i] + (tup[i + 1], tup[i]) + tup[i + 2 :]
            if table.apply(*swapped) != value:
                return False
    return True


def is_idempotent(table: NaryTable) -> bool:
    return all(table.apply(*([a] * table.arity)) == a for a in range(table.size))


def detect_case(table: NaryTable, sub: Subuniverse) -> CaseTag:
    """First applicable proved case, in the fixed priority order.

    Any applicable tag certifies the verdict, so the order only affects
    reporting.
    """
    if table.arity == 2:
        return CaseTag.THEOREM_BINARY
    if is_commutative(table):
        return CaseTag.THEOREM_COMMUTATIVE
    if table.size - len(sub.members) == 1:
        return CaseTag.THEOREM_COATOM
    if table.arity == 3 and is_idempotent(table):
        return CaseTag.THEOREM_IDEMPOTENT_TERNARY
    return CaseTag.CONJECTURAL


def construct_witness(table: NaryTable, sub: Subuniverse, k: int) -> Word:
    """The two-variable word x^(k-1) y of length k."""
    if k <= 1 or not length_evaluable(k, table.arity):
        raise ValueError(f"k must be > 1 and 1 mod {table.arity - 1}, got {k}")
    return Word(num_vars=2, letters=(0,) * (k - 1) + (1,))


def absorption_conditions_hold(
    table: NaryTable, sub: Subuniverse, letters: tuple[int, ...], num_vars: int
) -> bool:
    """Coordinate-wise absorption conditions, without the idempotence check.

    For every variable position i, every carrier element at i, and every
    assignment of subset members to the other variables, the word must
    evaluate into the subset.  Variables with zero occurrences are still
    quantified; their condition degenerates correctly.
    """
    members = sub.members
    elements = sub.elements
    assignment = [0] * num_vars
    for i in range(num_vars):
        for rest in itertools.product(elements, repeat=num_vars - 1):
            assignment[:i] = rest[:i]
            assignment[i + 1 :] = rest[i:]
            for a in range(table.size):
                assignment[i] = a
                if _reduce_left(table, [assignment[l] for l in letters]) not in members:
                    return False
    return True


def verify_witness(table: NaryTable, sub: Subuniverse, word: Word) -> bool:
    """Check idempotence plus the coordinate-wise absorption conditions."""
    if not length_evaluable(word.length, table.arity):
        raise LengthNotEvaluable(
            f"length {word.length} is not 1 mod {table.arity - 1}"
        )
    v = word.num_vars
    for a in range(table.size):
        if eval_word(table, word, [a] * v) != a:
            return False
    return absorption_conditions_hold(table, sub, word.letters, v)


def decide_theorem(table: NaryTable, sub: Subuniverse) -> AbsorptionVerdict:
    """Decide absorption via the product-plus-exponent criterion.

    Binary tables get a theorem-backed verdict; for n >= 3 the verdict is
    certified by detect_case and is otherwise conjectural.
    """
    _require_pair(table, sub)
    case = detect_case(table, sub)
    k = compute_exponent(table)
    if not cond2_products(table, sub):
        return AbsorptionVerdict(
            absorbs=False,
            exponent_k=k,
            witness=None,
            failed_condition=FailedCondition.PRODUCTS_ESCAPE_B,
            proof_status=case,
        )
    if k is None:
        return AbsorptionVerdict(
            absorbs=False,
            exponent_k=None,
            witness=None,
            failed_condition=FailedCondition.NO_EXPONENT,
            proof_status=case,
        )
    return AbsorptionVerdict(
        absorbs=True,
        exponent_k=k,
        witness=construct_witness(table, sub, k),
        failed_condition=None,
        proof_status=case,
    )


def derive_power_algebra(table: NaryTable, k: int) -> NaryTable:
    """The k-ary table of k-fold products; associative by construction.

    Idempotent whenever k is an exponent of the table (a^k = a for all a).
    """
    if k <= 1 or not length_evaluable(k, table.arity):
        raise InvalidArityTarget(
            f"target arity {k} is not 1 mod {table.arity - 1} or not > 1"
        )
    entries = tuple(
        _reduce_left(table, tup)
        for tup in itertools.product(range(table.size), repeat=k)
    )
    return NaryTable(arity=k, size=table.size, entries=entries)
