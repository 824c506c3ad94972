"""Finite n-ary operation tables and the machinery around them.

Tables are flat, row-major lookup arrays over the carrier {0..size-1}; words
are sequences of variable indices; powers and exponents follow the valid
lengths 1 mod (arity - 1).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import BudgetExceeded, LengthNotEvaluable

# Exhaustive subuniverse scans iterate 2^m - 1 subsets; cap the carrier size.
SUBSET_SCAN_MAX_SIZE = 16

_VAR_NAMES = "xyzuvw"


@dataclass(frozen=True)
class NaryTable:
    """An n-ary operation on {0..size-1} stored as a flat row-major table.

    The flat index of (a_1, ..., a_n) is sum(a_i * size**(n-1-i)): the first
    argument is the most significant digit.  This layout is a bit-exact
    contract shared with the on-disk algebra format.
    """

    arity: int
    size: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.arity < 2:
            raise ValueError(f"arity must be >= 2, got {self.arity}")
        if self.size < 1:
            raise ValueError(f"size must be >= 1, got {self.size}")
        object.__setattr__(self, "entries", tuple(self.entries))
        expected = self.size**self.arity
        if len(self.entries) != expected:
            raise ValueError(
                f"size {self.size} arity {self.arity} needs {expected} entries, "
                f"got {len(self.entries)}"
            )
        for e in self.entries:
            if not isinstance(e, int) or not 0 <= e < self.size:
                raise ValueError(f"entry {e!r} is not an element index below {self.size}")

    @classmethod
    def from_function(cls, arity: int, size: int, fn: Callable[..., int]) -> "NaryTable":
        entries = tuple(fn(*args) for args in itertools.product(range(size), repeat=arity))
        return cls(arity, size, entries)

    def apply(self, *args: int) -> int:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.entries[idx]


@dataclass(frozen=True)
class Subuniverse:
    """A nonempty subset of the carrier, the candidate absorbing subalgebra.

    Closedness under a table is not an invariant here; establish it with
    is_closed where an operation requires it.
    """

    carrier_size: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.members:
            raise ValueError("subuniverse must be nonempty")
        if any(not 0 <= a < self.carrier_size for a in self.members):
            raise ValueError("subuniverse members must be element indices below carrier_size")

    @classmethod
    def from_mask(cls, carrier_size: int, mask: int) -> "Subuniverse":
        return cls(carrier_size, frozenset(i for i in range(carrier_size) if mask >> i & 1))

    @property
    def mask(self) -> int:
        return sum(1 << a for a in self.members)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def is_proper(self) -> bool:
        return len(self.members) < self.carrier_size

    def __contains__(self, element: int) -> bool:
        return element in self.members


@dataclass(frozen=True)
class Word:
    """A term of the one-operation signature: a sequence of variable indices.

    Evaluability against an arity-n table requires length 1 mod (n - 1);
    that is checked per operation, not stored.
    """

    num_vars: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise ValueError("word must be nonempty")
        if any(not 0 <= l < self.num_vars for l in self.letters):
            raise ValueError("letters must be variable indices below num_vars")

    @property
    def length(self) -> int:
        return len(self.letters)

    def occurrences(self) -> tuple[int, ...]:
        counts = [0] * self.num_vars
        for l in self.letters:
            counts[l] += 1
        return tuple(counts)

    def __str__(self) -> str:
        if self.num_vars <= len(_VAR_NAMES):
            return "".join(_VAR_NAMES[l] for l in self.letters)
        return " ".join(f"x{l}" for l in self.letters)


@dataclass(frozen=True)
class PowerProfile:
    """Tail and cycle length of one element's power walk, in steps of (n-1)."""

    element: int
    tail: int
    period: int


def length_evaluable(length: int, arity: int) -> bool:
    return length >= 1 and (length - 1) % (arity - 1) == 0


def _reduce_left(table: NaryTable, values: Sequence[int]) -> int:
    """Left-greedy product of an evaluable sequence of elements."""
    m = table.size
    n = table.arity
    entries = table.entries
    if len(values) == 1:
        return values[0]
    idx = 0
    for a in values[:n]:
        idx = idx * m + a
    acc = entries[idx]
    pos = n
    total = len(values)
    while pos < total:
        idx = acc
        for a in values[pos : pos + n - 1]:
            idx = idx * m + a
        acc = entries[idx]
        pos += n - 1
    return acc


def eval_word(table: NaryTable, word: Word, assignment: Sequence[int]) -> int:
    """Value of the word under the assignment, by left-greedy reduction.

    Associativity makes every reduction order agree; left-greedy is the
    normative one.
    """
    if not length_evaluable(word.length, table.arity):
        raise LengthNotEvaluable(
            f"length {word.length} is not 1 mod {table.arity - 1}"
        )
    if len(assignment) != word.num_vars:
        raise ValueError(f"assignment must cover {word.num_vars} variables")
    if any(not 0 <= a < table.size for a in assignment):
        raise ValueError("assignment values must be element indices below size")
    return _reduce_left(table, [assignment[l] for l in word.letters])


def element_power(table: NaryTable, a: int, e: int) -> int:
    """a^e for a valid exponent e (e >= 1 and e = 1 mod (n-1))."""
    if not 0 <= a < table.size:
        raise ValueError(f"element {a} out of range")
    if e < 1 or not length_evaluable(e, table.arity):
        raise LengthNotEvaluable(f"exponent {e} is not 1 mod {table.arity - 1}")
    x = a
    for _ in range((e - 1) // (table.arity - 1)):
        x = _step_power(table, x, a)
    return x


def power_profile(table: NaryTable, a: int) -> PowerProfile:
    """Walk a, a^(1+(n-1)), a^(1+2(n-1)), ... until the first repeat."""
    seen: dict[int, int] = {}
    x = a
    j = 0
    while x not in seen:
        seen[x] = j
        x = _step_power(table, x, a)
        j += 1
    tail = seen[x]
    return PowerProfile(element=a, tail=tail, period=j - tail)


def _step_power(table: NaryTable, x: int, a: int) -> int:
    """f(x, a, ..., a): one (n-1)-step along a's power sequence."""
    idx = x
    for _ in range(table.arity - 1):
        idx = idx * table.size + a
    return table.entries[idx]


def compute_exponent(table: NaryTable) -> int | None:
    """Minimal k > 1 with k = 1 mod (n-1) and a^k = a for every element.

    Exists iff every element's power walk is purely periodic (tail 0); then
    k = 1 + lcm(periods) * (n-1), minimal because any valid k' = 1 + j(n-1)
    fixes every element iff every period divides j.
    """
    periods = []
    for a in range(table.size):
        profile = power_profile(table, a)
        if profile.tail != 0:
            return None
        periods.append(profile.period)
    return 1 + math.lcm(*periods) * (table.arity - 1)


def is_associative(table: NaryTable) -> bool:
    """All n bracketings of every (2n-1)-tuple agree.

    Adjacent bracket positions suffice: equality of neighbors chains across
    all positions, so we compare each position's value to the previous one.
    """
    n = table.arity
    m = table.size
    for tup in itertools.product(range(m), repeat=2 * n - 1):
        prev = None
        for p in range(n):
            inner = table.apply(*tup[p : p + n])
            value = table.apply(*tup[:p], inner, *tup[p + n :])
            if prev is not None and value != prev:
                return False
            prev = value
    return True


def is_closed(table: NaryTable, sub: Subuniverse) -> bool:
    """Every n-tuple from the subset lands back in the subset."""
    if sub.carrier_size != table.size:
        raise ValueError("subuniverse carrier does not match table size")
    members = sub.members
    for tup in itertools.product(sub.elements, repeat=table.arity):
        if table.apply(*tup) not in members:
            return False
    return True


def enumerate_subuniverses(table: NaryTable, proper_only: bool) -> list[Subuniverse]:
    """All nonempty closed subsets in ascending bitmask order."""
    m = table.size
    if m > SUBSET_SCAN_MAX_SIZE:
        raise BudgetExceeded(
            f"subuniverse scan over 2^{m} subsets exceeds the cap of {SUBSET_SCAN_MAX_SIZE}"
        )
    full = (1 << m) - 1
    found = []
    for mask in range(1, full + 1):
        if proper_only and mask == full:
            continue
        sub = Subuniverse.from_mask(m, mask)
        if is_closed(table, sub):
            found.append(sub)
    return found
