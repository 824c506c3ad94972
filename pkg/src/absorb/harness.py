"""Conjecture-verification pipeline.

check_pair runs both decision routes on one (table, sub) pair; run_corpus
streams pairs from a generator or an explicit table list, writes one
self-contained JSON record per line, keeps a per-table checkpoint so an
interrupted run resumes byte-identically, and classifies the outcome
(consistent / counterexample-candidate / failed).
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import (
    NaryTable,
    Subuniverse,
    Word,
    compute_exponent,
    enumerate_subuniverses,
    eval_word,
    is_associative,
    is_closed,
)
from .criteria import (
    AbsorptionVerdict,
    CaseTag,
    cond2_products,
    cond3_products,
    construct_witness,
    decide_theorem,
    is_idempotent,
    verify_witness,
)
from .errors import PreconditionsUnmet
from .generate import CANONICAL_PERM_MAX_SIZE, GENERATOR_NAME, GenSpec, canonical_form, enumerate_tables
from .oracle import Agreement, OracleBounds, OracleOutcome, oracle_agrees, search_absorbing_term
from .version import VERSION

REPORT_FORMAT = "absorb-report/1"

STATUS_CONSISTENT = "consistent"
STATUS_CANDIDATE = "counterexample-candidate"
STATUS_FAILED = "failed"

# Membership facts the idempotent-ternary proof derives along the way, in
# proof-step order, as two-variable words: variable 0 is the arbitrary
# element, variable 1 the subset member.
_FACT_PATTERNS: tuple[tuple[str, tuple[int, ...]], ...] = (
    ("abbab", (0, 1, 1, 0, 1)),
    ("babba", (1, 0, 1, 1, 0)),
    ("aab", (0, 0, 1)),
    ("baa", (1, 0, 0)),
    ("aabaa", (0, 0, 1, 0, 0)),
    ("bab", (1, 0, 1)),
    ("abb", (0, 1, 1)),
    ("bba", (1, 1, 0)),
)


def table_digest(table: NaryTable) -> str:
    """Isomorphism-invariant id when the relabeling budget allows, else raw."""
    if table.size <= CANONICAL_PERM_MAX_SIZE:
        base = canonical_form(table)
        prefix = "c"
    else:
        base = table
        prefix = "r"
    payload = f"{base.arity}:{base.size}:{','.join(map(str, base.entries))}"
    return prefix + hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class PairReport:
    """Everything both decision routes said about one (table, sub) pair."""

    table: NaryTable
    sub: Subuniverse
    table_id: str
    cond2: bool
    cond3: bool
    exponent_k: int | None
    verdict: AbsorptionVerdict
    oracle: OracleOutcome
    agreement: Agreement
    case: CaseTag

    @property
    def sub_mask(self) -> int:
        return self.sub.mask

    def to_record(self) -> dict:
        return {
            "type": "pair",
            "table_id": self.table_id,
            "arity": self.table.arity,
            "size": self.table.size,
            "table": list(self.table.entries),
            "sub": list(self.sub.elements),
            "sub_mask": self.sub_mask,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "exponent_k": self.exponent_k,
            "verdict": {
                "absorbs": self.verdict.absorbs,
                "exponent_k": self.verdict.exponent_k,
                "witness": _word_record(self.verdict.witness),
                "failed_condition": (
                    self.verdict.failed_condition.value
                    if self.verdict.failed_condition
                    else None
                ),
                "proof_status": self.verdict.proof_status.value,
            },
            "oracle": {
                "found": self.oracle.found,
                "witness": _word_record(self.oracle.witness),
                "words_examined": self.oracle.words_examined,
            },
            "agreement": self.agreement.value,
            "case": self.case.value,
        }


def _word_record(word) -> dict | None:
    if word is None:
        return None
    return {"num_vars": word.num_vars, "letters": list(word.letters), "display": str(word)}


@dataclass
class CorpusReport:
    """Aggregate of a corpus run; wall_time never enters the report file."""

    source: dict
    bounds: dict
    tables: int
    pairs: int
    agreements: dict[str, int]
    cases: dict[str, int]
    counterexamples: list[dict]
    status: str
    wall_time: float
    report_path: str

    @property
    def consistent(self) -> bool:
        return self.status == STATUS_CONSISTENT


def check_pair(
    table: NaryTable, sub: Subuniverse, bounds: OracleBounds = OracleBounds()
) -> PairReport:
    """Run both routes on one valid (associative, closed, proper) pair."""
    verdict = decide_theorem(table, sub)
    outcome = search_absorbing_term(table, sub, bounds)
    agreement = oracle_agrees(table, sub, bounds, verdict, outcome=outcome)
    return PairReport(
        table=table,
        sub=sub,
        table_id=table_digest(table),
        cond2=cond2_products(table, sub),
        cond3=cond3_products(table, sub),
        exponent_k=compute_exponent(table),
        verdict=verdict,
        oracle=outcome,
        agreement=agreement,
        case=verdict.proof_status,
    )


def proved_violations(report: PairReport) -> list[str]:
    """Inconsistencies with theorem-level facts; any entry is fatal.

    Covers the proved implication chain on the pair itself plus the two
    proved-case disagreement flavors.
    """
    table, sub = report.table, report.sub
    msgs = []
    if report.cond2 and report.exponent_k is not None and not report.cond3:
        msgs.append("cond2 with exponent but cond3 fails")
    if report.cond3 and report.exponent_k is not None:
        witness = construct_witness(table, sub, report.exponent_k)
        if not verify_witness(table, sub, witness):
            msgs.append("cond3 with exponent but constructed witness rejected")
    if report.verdict.absorbs and not verify_witness(table, sub, report.verdict.witness):
        msgs.append("absorbing verdict carries a rejected witness")
    if report.agreement is Agreement.DISAGREE:
        if report.verdict.absorbs:
            msgs.append("criterion absorbs but oracle found nothing within adequate bounds")
        elif report.case.is_proved():
            msgs.append("oracle witness contradicts a proved-case negative verdict")
    return msgs


def is_conjecture_candidate(report: PairReport) -> bool:
    """Oracle hit against a conjectural negative verdict: a research finding,
    not an implementation bug."""
    return (
        report.agreement is Agreement.DISAGREE
        and not report.verdict.absorbs
        and not report.case.is_proved()
    )


def _triple_check_candidate(report: PairReport) -> None:
    """Re-verify witness, closure, and associativity before flagging."""
    if not is_associative(report.table):
        raise RuntimeError("candidate triple-check failed: table not associative")
    if not is_closed(report.table, report.sub):
        raise RuntimeError("candidate triple-check failed: subset not closed")
    if not verify_witness(report.table, report.sub, report.oracle.witness):
        raise RuntimeError("candidate triple-check failed: witness does not verify")


def derived_fact_probes(table: NaryTable, sub: Subuniverse) -> list[tuple[str, bool]]:
    """Membership facts the idempotent-ternary proof derives, each checked
    over all a in the carrier and b in the subset.

    Preconditions: ternary idempotent associative table, closed proper
    subset, and an absorbing criterion verdict; under those, every fact
    must hold.
    """
    if table.arity != 3:
        raise PreconditionsUnmet("probes need a ternary table")
    if not is_associative(table):
        raise PreconditionsUnmet("probes need an associative table")
    if not is_idempotent(table):
        raise PreconditionsUnmet("probes need an idempotent table")
    if sub.carrier_size != table.size or not is_closed(table, sub):
        raise PreconditionsUnmet("probes need a closed subuniverse")
    if not sub.is_proper():
        raise PreconditionsUnmet("probes need a proper subuniverse")
    if not decide_theorem(table, sub).absorbs:
        raise PreconditionsUnmet("probes apply only to absorbing pairs")

    members = sub.members
    results = []
    for name, pattern in _FACT_PATTERNS:
        word = Word(2, pattern)
        holds = all(
            eval_word(table, word, [a, b]) in members
            for a in range(table.size)
            for b in sub.elements
        )
        results.append((name, holds))
    return results


def _dump(record: dict) -> bytes:
    return json.dumps(record, sort_keys=True, separators=(",", ":")).encode() + b"\n"


def _bounds_echo(bounds: OracleBounds) -> dict:
    return {
        "max_vars": bounds.max_vars,
        "max_len": bounds.max_len,
        "allow_trivial": bounds.allow_trivial,
    }


def _header_record(source_echo: dict, bounds: OracleBounds, meta: dict | None) -> dict:
    return {
        "type": "header",
        "format": REPORT_FORMAT,
        "version": VERSION,
        "source": source_echo,
        "bounds": _bounds_echo(bounds),
        "defaults": {
            "max_vars": 3,
            "max_len": "max(9,k)",
            "allow_trivial": False,
            "proper_only": True,
            "generator": GENERATOR_NAME,
        },
        "meta": meta or {},
    }


def _write_checkpoint(path: str, state: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as f:
        f.write(_dump(state))
    os.replace(tmp, path)


class _Tally:
    def __init__(self) -> None:
        self.tables = 0
        self.pairs = 0
        self.agreements = {a.value: 0 for a in Agreement}
        self.cases = {c.value: 0 for c in CaseTag}
        self.counterexamples: list[dict] = []
        self.fatal = False

    def add_record(self, record: dict) -> None:
        self.pairs += 1
        self.agreements[record["agreement"]] += 1
        self.cases[record["case"]] += 1
        if record.get("counterexample"):
            self.counterexamples.append(
                {
                    "table_id": record["table_id"],
                    "table": record["table"],
                    "sub": record["sub"],
                    "fatal": record.get("fatal", False),
                }
            )
        if record.get("fatal"):
            self.fatal = True

    def status(self) -> str:
        if self.fatal:
            return STATUS_FAILED
        if self.counterexamples:
            return STATUS_CANDIDATE
        return STATUS_CONSISTENT

    def summary_record(self) -> dict:
        return {
            "type": "summary",
            "status": self.status(),
            "tables": self.tables,
            "pairs": self.pairs,
            "agreements": self.agreements,
            "cases": self.cases,
            "counterexamples": self.counterexamples,
        }


def run_corpus(
    source: GenSpec | Iterable[NaryTable],
    bounds: OracleBounds,
    out_path: str,
    resume: str | None = None,
    meta: dict | None = None,
) -> CorpusReport:
    """Check every (table, proper closed sub) pair of the corpus.

    Writes one pair record per line to out_path plus a final summary
    record; the checkpoint (per completed table) lets a killed run resume
    into a byte-identical report.  Proved-case inconsistencies abort the
    run as failed; conjectural oracle-vs-criterion conflicts are
    triple-checked, flagged, and the run continues.
    """
    started = time.perf_counter()
    if isinstance(source, GenSpec):
        source_echo: dict = {"kind": "genspec", **source.to_dict()}
        tables: Iterator[NaryTable] = iter(enumerate_tables(source))
    else:
        source_echo = {"kind": "tables"}
        tables = iter(source)

    header = _header_record(source_echo, bounds, meta)
    header_bytes = _dump(header)
    fingerprint = hashlib.sha256(header_bytes).hexdigest()
    ckpt_path = resume if resume is not None else out_path + ".ckpt"

    tally = _Tally()
    skip_tables = 0
    if resume is not None and os.path.exists(ckpt_path):
        with open(ckpt_path, "rb") as f:
            state = json.loads(f.read())
        if state.get("fingerprint") != fingerprint:
            raise ValueError("checkpoint does not match this run's parameters")
        skip_tables = state["tables_done"]
        report_bytes = state["report_bytes"]
        if os.path.getsize(out_path) < report_bytes:
            raise ValueError("report file is shorter than the checkpoint records")
        with open(out_path, "r+b") as f:
            f.truncate(report_bytes)
            f.seek(0)
            for line in f:
                record = json.loads(line)
                if record["type"] == "pair":
                    tally.add_record(record)
        tally.tables = skip_tables
        out = open(out_path, "ab")
    else:
        out = open(out_path, "wb")
        out.write(header_bytes)

    aborted = False
    try:
        for index, table in enumerate(tables):
            if index < skip_tables:
                continue
            for sub in enumerate_subuniverses(table, proper_only=True):
                report = check_pair(table, sub, bounds)
                violations = proved_violations(report)
                candidate = is_conjecture_candidate(report)
                if candidate:
                    _triple_check_candidate(report)
                record = report.to_record()
                record["counterexample"] = bool(violations) or candidate
                record["fatal"] = bool(violations)
                record["violations"] = violations
                out.write(_dump(record))
                tally.add_record(record)
                if violations:
                    aborted = True
                    break
            tally.tables += 1
            if aborted:
                break
            out.flush()
            _write_checkpoint(
                ckpt_path,
                {
                    "fingerprint": fingerprint,
                    "tables_done": index + 1,
                    "report_bytes": out.tell(),
                    "pairs_done": tally.pairs,
                },
            )
        out.write(_dump(tally.summary_record()))
    finally:
        out.close()
    if os.path.exists(ckpt_path):
        os.remove(ckpt_path)

    return CorpusReport(
        source=source_echo,
        bounds=_bounds_echo(bounds),
        tables=tally.tables,
        pairs=tally.pairs,
        agreements=tally.agreements,
        cases=tally.cases,
        counterexamples=tally.counterexamples,
        status=tally.status(),
        wall_time=time.perf_counter() - started,
        report_path=out_path,
    )
