"""Corpus generators: exhaustive backtracking over associative tables,
power-derived families, seeded random sampling, and canonical forms."""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import NaryTable, Subuniverse, enumerate_subuniverses, is_associative
from .criteria import derive_power_algebra, is_commutative, is_idempotent
from .errors import AttemptCapExhausted, BudgetExceeded

# Backtracking budget: number of free cells (or cell orbits, once filters
# pin some of them) that the search may branch on.  16 admits all binary
# tables up to size 4 and ternary tables of size 2; unfiltered ternary
# size 3 (27 cells) stays out of budget.
MAX_FREE_CELLS = 16

# Element-relabeling search bound for canonical forms (m! permutations).
CANONICAL_PERM_MAX_SIZE = 6

# Seeded sampling uses random.Random: the Mersenne Twister, stable for a
# given 64-bit seed.  Recorded in corpus metadata for reproducibility.
GENERATOR_NAME = "mt19937"

MODES = ("exhaustive", "power", "random")

DEFAULT_ATTEMPT_CAP = 1_000_000


@dataclass(frozen=True)
class GenSpec:
    """What to generate: size, arity, mode, filters, dedup flag.

    Modes: "exhaustive" (backtracking over all associative tables),
    "power" (n-fold products of all binary associative tables of the same
    size), "random" (seeded rejection sampling; needs count).
    """

    size: int
    arity: int
    mode: str = "exhaustive"
    count: int = 0
    seed: int = 0
    idempotent: bool = False
    commutative: bool = False
    dedup: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.size < 1 or self.arity < 2:
            raise ValueError("size must be >= 1 and arity >= 2")
        if self.mode == "power" and self.arity < 3:
            raise ValueError("power mode derives arity >= 3 from binary tables")

    def passes_filters(self, table: NaryTable) -> bool:
        if self.idempotent and not is_idempotent(table):
            return False
        if self.commutative and not is_commutative(table):
            return False
        return True

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "arity": self.arity,
            "mode": self.mode,
            "count": self.count,
            "seed": self.seed,
            "idempotent": self.idempotent,
            "commutative": self.commutative,
            "dedup": self.dedup,
        }


def _cell_units(
    size: int, arity: int, idempotent: bool, commutative: bool
) -> tuple[list[tuple[int, ...]], dict[int, int]]:
    """Free fill units and forced cells under the structural filters.

    Commutativity merges cells whose argument tuples are permutations of one
    another into a single unit; idempotence pins every diagonal cell.  Units
    are ordered by their first (row-major) cell.
    """
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, tup in enumerate(itertools.product(range(size), repeat=arity)):
        key = tuple(sorted(tup)) if commutative else tup
        groups.setdefault(key, []).append(i)
    units: list[tuple[int, ...]] = []
    forced: dict[int, int] = {}
    for key, cells in sorted(groups.items(), key=lambda kv: kv[1][0]):
        if idempotent and len(set(key)) == 1:
            for c in cells:
                forced[c] = key[0]
        else:
            units.append(tuple(cells))
    return units, forced


def _assoc_instances(size: int, arity: int):
    """Associativity equations in incremental-check form.

    Each instance is (innerL, baseL, strideL, innerR, baseR, strideR): the
    two sides of one adjacent-bracketing equation, where the outer cell is
    base + inner_value * stride.  Also returns a map cell -> instance ids
    that may read that cell, so a fresh assignment triggers exactly the
    equations it can complete.
    """
    m, n = size, arity
    pw = [m ** (n - 1 - j) for j in range(n)]
    instances: list[tuple[int, int, int, int, int, int]] = []
    triggers: list[set[int]] = [set() for _ in range(m**n)]

    def inner_cell(tup, q):
        idx = 0
        for a in tup[q : q + n]:
            idx = idx * m + a
        return idx

    def outer_base(tup, q):
        base = 0
        for t in range(n):
            if t < q:
                base += tup[t] * pw[t]
            elif t > q:
                base += tup[n + t - 1] * pw[t]
        return base

    for tup in itertools.product(range(m), repeat=2 * n - 1):
        for p in range(n - 1):
            iL = inner_cell(tup, p)
            bL = outer_base(tup, p)
            sL = pw[p]
            iR = inner_cell(tup, p + 1)
            bR = outer_base(tup, p + 1)
            sR = pw[p + 1]
            ii = len(instances)
            instances.append((iL, bL, sL, iR, bR, sR))
            triggers[iL].add(ii)
            triggers[iR].add(ii)
            for v in range(m):
                triggers[bL + v * sL].add(ii)
                triggers[bR + v * sR].add(ii)

    return instances, [sorted(t) for t in triggers]


def _backtrack_tables(
    size: int, arity: int, idempotent: bool, commutative: bool
) -> Iterator[NaryTable]:
    """All associative tables compatible with the filters, exactly once,
    in row-major ascending order of the free assignments.

    Cells are filled in row-major order (grouped into orbit units when the
    commutative filter is on) and a partial table is pruned as soon as any
    fully-determined associativity instance fails.
    """
    units, forced = _cell_units(size, arity, idempotent, commutative)
    if len(units) > MAX_FREE_CELLS:
        raise BudgetExceeded(
            f"{len(units)} free cells exceed the backtracking budget of {MAX_FREE_CELLS}"
        )
    instances, triggers = _assoc_instances(size, arity)
    cells: list[int | None] = [None] * (size**arity)
    for c, v in forced.items():
        cells[c] = v

    def cell_consistent(c: int) -> bool:
        for ii in triggers[c]:
            iL, bL, sL, iR, bR, sR = instances[ii]
            v = cells[iL]
            if v is None:
                continue
            vL = cells[bL + v * sL]
            if vL is None:
                continue
            v = cells[iR]
            if v is None:
                continue
            vR = cells[bR + v * sR]
            if vR is None:
                continue
            if vL != vR:
                return False
        return True

    if not all(cell_consistent(c) for c in forced):
        return

    def rec(u: int) -> Iterator[NaryTable]:
        if u == len(units):
            yield NaryTable(arity, size, tuple(cells))
            return
        unit = units[u]
        for v in range(size):
            for c in unit:
                cells[c] = v
            if all(cell_consistent(c) for c in unit):
                yield from rec(u + 1)
        for c in unit:
            cells[c] = None

    yield from rec(0)


def derive_from_semigroup(binary: NaryTable, n: int) -> NaryTable:
    """The n-ary table of n-fold products of a binary associative table."""
    if binary.arity != 2:
        raise ValueError("derive_from_semigroup needs a binary table")
    if n < 3:
        raise ValueError("target arity must be >= 3")
    return derive_power_algebra(binary, n)


def random_filtered(
    size: int,
    arity: int,
    count: int,
    seed: int,
    idempotent: bool = False,
    commutative: bool = False,
    attempt_cap: int = DEFAULT_ATTEMPT_CAP,
) -> Iterator[NaryTable]:
    """Seeded stream of associative tables satisfying the filters.

    Draws uniformly over the structural-filter subspace (diagonal pinned by
    idempotent, one value per argument-permutation orbit for commutative)
    and keeps a draw iff the table is associative.  Ends after `count`
    keepers, or earlier with an AttemptCapExhausted warning.
    """
    units, forced = _cell_units(size, arity, idempotent, commutative)
    rng = random.Random(seed)
    template: list[int] = [0] * (size**arity)
    for c, v in forced.items():
        template[c] = v
    kept = 0
    attempts = 0
    while kept < count:
        if attempts >= attempt_cap:
            warnings.warn(
                AttemptCapExhausted(
                    f"attempt cap {attempt_cap} exhausted after {kept} of {count} tables"
                )
            )
            return
        attempts += 1
        cells = list(template)
        for unit in units:
            v = rng.randrange(size)
            for c in unit:
                cells[c] = v
        table = NaryTable(arity, size, tuple(cells))
        if is_associative(table):
            kept += 1
            yield table


def canonical_form(table: NaryTable) -> NaryTable:
    """Lexicographically minimal entry sequence over all element relabelings.

    Isomorphic tables map to equal canonical forms; the map is idempotent.
    """
    m, n = table.size, table.arity
    if m > CANONICAL_PERM_MAX_SIZE:
        raise BudgetExceeded(
            f"canonical form over {m}! relabelings exceeds the cap of "
            f"{CANONICAL_PERM_MAX_SIZE}!"
        )
    tuples = list(itertools.product(range(m), repeat=n))
    best: tuple[int, ...] | None = None
    for perm in itertools.permutations(range(m)):
        relabeled = [0] * len(table.entries)
        for i, tup in enumerate(tuples):
            j = 0
            for a in tup:
                j = j * m + perm[a]
            relabeled[j] = perm[table.entries[i]]
        candidate = tuple(relabeled)
        if best is None or candidate < best:
            best = candidate
    return NaryTable(n, m, best)


def enumerate_tables(spec: GenSpec) -> Iterator[NaryTable]:
    """Stream of associative tables matching the spec, deterministic order."""
    if spec.mode == "exhaustive":
        stream = _backtrack_tables(spec.size, spec.arity, spec.idempotent, spec.commutative)
    elif spec.mode == "power":
        stream = (
            derive_from_semigroup(binary, spec.arity)
            for binary in _backtrack_tables(spec.size, 2, False, False)
        )
        stream = (t for t in stream if spec.passes_filters(t))
    else:
        stream = random_filtered(
            spec.size,
            spec.arity,
            spec.count,
            spec.seed,
            idempotent=spec.idempotent,
            commutative=spec.commutative,
        )
    if spec.dedup:
        stream = _dedup_canonical(stream)
    return stream


def _dedup_canonical(stream: Iterable[NaryTable]) -> Iterator[NaryTable]:
    seen: set[tuple[int, ...]] = set()
    for table in stream:
        key = canonical_form(table).entries
        if key not in seen:
            seen.add(key)
            yield table


def enumerate_pairs(
    tables: Iterable[NaryTable], proper_only: bool = True
) -> Iterator[tuple[NaryTable, Subuniverse]]:
    """Cross each table with its closed nonempty (proper) subuniverses."""
    for table in tables:
        for sub in enumerate_subuniverses(table, proper_only):
            yield table, sub
