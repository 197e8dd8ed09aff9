"""Exhaustive check that psi is a bijection, plus the worked example tables.

``verify_n`` walks all of S_n once. Derangements go through psi and back,
one-fixed-point permutations go through psi_inverse and back, and the images
of psi are collected so collisions and misses both show up. The walk is split
into shards by the value of p(1); shards can run in worker processes and are
merged afterwards with a disjointness check.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bijection import ExcludedInput, InvariantViolation, classify_case, psi, psi_inverse
from .enumerate import (
    ENUMERATION_BOUND,
    BoundExceeded,
    CountRecord,
    count_d_rec1,
    count_d_rec2,
    make_count_record,
)
from .perm import (
    CycleForm,
    PermClass,
    Permutation,
    PermutationError,
    classify,
    format_cycles,
    from_cycle_form,
    parse_cycles,
    to_cycle_form,
)

log = logging.getLogger(__name__)

MAX_FAILURES = 20


@dataclass(frozen=True, order=True)
class Failure:
    kind: str
    one_line: tuple[int, ...]
    input: str
    expected: str
    actual: str


@dataclass
class _ShardResult:
    total: int = 0
    d: int = 0
    f: int = 0
    dstar: int = 0
    fstar: int = 0
    excluded_d: int = 0
    excluded_f: int = 0
    invariant_violations: int = 0
    images: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    failure_counts: Counter = field(default_factory=Counter)

    def fail(self, kind: str, p: Permutation, expected: str, actual: str) -> None:
        self.failure_counts[kind] += 1
        # inputs arrive in lexicographic order, so keeping the first MAX_FAILURES of
        # each kind is enough for the merged report to be independent of sharding
        if self.failure_counts[kind] <= MAX_FAILURES:
            self.failures.append(Failure(kind, p.image, format_cycles(to_cycle_form(p)), expected, actual))


def _check_derangement(p: Permutation, tags: frozenset, out: _ShardResult) -> None:
    c = to_cycle_form(p)
    try:
        sigma = psi(c)
    except ExcludedInput:
        out.excluded_d += 1
        if PermClass.DStar in tags:
            out.fail("psi", p, "an image", "ExcludedInput")
        return
    except InvariantViolation as e:
        out.invariant_violations += 1
        out.fail("invariant", p, "no violation", str(e))
        return
    except PermutationError as e:
        out.fail("psi", p, "an image", f"{type(e).__name__}: {e}")
        return
    if PermClass.DStar not in tags:
        out.fail("psi", p, "ExcludedInput", format_cycles(sigma))
    q = from_cycle_form(sigma)
    if PermClass.FStar not in classify(q):
        out.fail("psi", p, "image in F*", format_cycles(sigma))
    if q.image in out.images:
        out.fail("collision", p, "distinct image", format_cycles(sigma))
    else:
        out.images[q.image] = p.image
    try:
        back = psi_inverse(sigma)
    except (PermutationError, InvariantViolation) as e:
        if isinstance(e, InvariantViolation):
            out.invariant_violations += 1
        out.fail("inverse", p, format_cycles(c), f"{type(e).__name__}: {e}")
        return
    if back != c:
        out.fail("inverse", p, format_cycles(c), format_cycles(back))


def _check_one_fixed(p: Permutation, tags: frozenset, out: _ShardResult) -> None:
    c = to_cycle_form(p)
    try:
        pre = psi_inverse(c)
    except ExcludedInput:
        out.excluded_f += 1
        if PermClass.FStar in tags:
            out.fail("psi_inverse", p, "a preimage", "ExcludedInput")
        return
    except InvariantViolation as e:
        out.invariant_violations += 1
        out.fail("invariant", p, "no violation", str(e))
        return
    except PermutationError as e:
        out.fail("psi_inverse", p, "a preimage", f"{type(e).__name__}: {e}")
        return
    if PermClass.FStar not in tags:
        out.fail("psi_inverse", p, "ExcludedInput", format_cycles(pre))
    if PermClass.DStar not in classify(from_cycle_form(pre)):
        out.fail("psi_inverse", p, "preimage in D*", format_cycles(pre))
    try:
        again = psi(pre)
    except (PermutationError, InvariantViolation) as e:
        if isinstance(e, InvariantViolation):
            out.invariant_violations += 1
        out.fail("inverse", p, format_cycles(c), f"{type(e).__name__}: {e}")
        return
    if again != c:
        out.fail("inverse", p, format_cycles(c), format_cycles(again))


def _verify_shard(n: int, firsts: Sequence[int]) -> _ShardResult:
    out = _ShardResult()
    for first in firsts:
        others = [v for v in range(1, n + 1) if v != first]
        for rest in itertools.permutations(others):
            p = Permutation((first,) + rest)
            out.total += 1
            tags = classify(p)
            if PermClass.D in tags:
                out.d += 1
                out.dstar += PermClass.DStar in tags
                _check_derangement(p, tags, out)
            elif PermClass.F in tags:
                out.f += 1
                out.fstar += PermClass.FStar in tags
                _check_one_fixed(p, tags, out)
    return out


def shard_plan(n: int, shard_count: int) -> list[tuple[int, ...]]:
    """Assign each value of p(1) to a shard, round-robin; empty shards are dropped."""
    if shard_count < 1:
        raise ValueError(f"shard_count must be positive, got {shard_count}")
    plan = [tuple(range(1 + s, n + 1, shard_count)) for s in range(shard_count)]
    return [firsts for firsts in plan if firsts]


@dataclass(frozen=True)
class VerifyReport:
    n: int
    bijective: bool
    inverse_ok: bool
    exclusion_ok: bool
    excluded_count_d: int
    excluded_count_f: int
    dstar_count: int
    fstar_count: int
    image_size: int
    invariant_violations: int
    cardinalities: CountRecord
    failure_count: int = 0
    failures: tuple[Failure, ...] = ()

    @property
    def ok(self) -> bool:
        return self.bijective and self.inverse_ok and self.exclusion_ok

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ok": self.ok,
            "bijective": self.bijective,
            "inverse_ok": self.inverse_ok,
            "exclusion_ok": self.exclusion_ok,
            "excluded_count_d": self.excluded_count_d,
            "excluded_count_f": self.excluded_count_f,
            "dstar_count": self.dstar_count,
            "fstar_count": self.fstar_count,
            "image_size": self.image_size,
            "invariant_violations": self.invariant_violations,
            "cardinalities": self.cardinalities.to_dict(),
            "failure_count": self.failure_count,
            "failures": [
                {"kind": f.kind, "input": f.input, "expected": f.expected, "actual": f.actual}
                for f in self.failures
            ],
        }

    def to_text(self) -> str:
        c = self.cardinalities
        lines = [
            f"n={self.n}",
            f"ok={self.ok}",
            f"bijective={self.bijective}",
            f"inverse_ok={self.inverse_ok}",
            f"exclusion_ok={self.exclusion_ok}",
            f"excluded_count_d={self.excluded_count_d}",
            f"excluded_count_f={self.excluded_count_f}",
            f"dstar_count={self.dstar_count}",
            f"fstar_count={self.fstar_count}",
            f"image_size={self.image_size}",
            f"invariant_violations={self.invariant_violations}",
            f"d_n={c.d_n}",
            f"f_n={c.f_n}",
            f"counts_consistent={c.consistent}",
            f"failure_count={self.failure_count}",
        ]
        for fl in self.failures:
            lines.append(f"failure={fl.kind} input={fl.input} expected={fl.expected} actual={fl.actual}")
        return "\n".join(lines)


def verify_n(
    n: int, shard_count: int = 1, jobs: int = 1, bound: int = ENUMERATION_BOUND
) -> VerifyReport:
    """Check psi exhaustively on S_n.

    ``shard_count`` splits the work by p(1); ``jobs`` > 1 runs shards in that
    many worker processes. The report does not depend on either.
    """
    if n > bound:
        raise BoundExceeded(n, bound)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    plan = shard_plan(n, shard_count)
    if jobs > 1 and len(plan) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(plan))) as pool:
            shards = list(pool.map(_verify_shard, itertools.repeat(n), plan))
    else:
        shards = [_verify_shard(n, firsts) for firsts in plan]
    log.debug("n=%d: merged %d shards", n, len(shards))

    # image -> smallest preimage seen; a clash is reported at the larger preimage,
    # which is what a single sequential pass would report
    images: dict = {}
    failures: list[Failure] = []
    counts: Counter = Counter()
    for shard in shards:
        counts.update(shard.failure_counts)
        clashes = []
        for image in images.keys() & shard.images.keys():
            a, b = images[image], shard.images[image]
            clashes.append((max(a, b), image))
            images[image] = min(a, b)
        counts["collision"] += len(clashes)
        for later, image in sorted(clashes)[:MAX_FAILURES]:
            failures.append(Failure(
                "collision", later, format_cycles(to_cycle_form(Permutation(later))),
                "distinct image", format_cycles(to_cycle_form(Permutation(image))),
            ))
        for image, pre in shard.images.items():
            images.setdefault(image, pre)
        failures.extend(shard.failures)
    failures = sorted(failures)[:MAX_FAILURES]

    def total(attr: str) -> int:
        return sum(getattr(s, attr) for s in shards)

    d1, d2 = count_d_rec1(n), count_d_rec2(n)
    brute = {
        PermClass.S: total("total"),
        PermClass.D: total("d"),
        PermClass.F: total("f"),
        PermClass.DStar: total("dstar"),
        PermClass.FStar: total("fstar"),
    }
    record = make_count_record(n, d1, d2, brute)
    expected_fstar = n * d1[n - 1] - (n % 2)
    dstar, fstar = brute[PermClass.DStar], brute[PermClass.FStar]
    bijective = sum(counts.values()) == 0 and len(images) == dstar == fstar == expected_fstar
    inverse_ok = not (counts["inverse"] or counts["psi_inverse"] or counts["invariant"])
    excluded_d, excluded_f = total("excluded_d"), total("excluded_f")
    exclusion_ok = (excluded_d, excluded_f) == ((1, 0) if n % 2 == 0 else (0, 1))
    return VerifyReport(
        n=n,
        bijective=bijective,
        inverse_ok=inverse_ok,
        exclusion_ok=exclusion_ok,
        excluded_count_d=excluded_d,
        excluded_count_f=excluded_f,
        dstar_count=dstar,
        fstar_count=fstar,
        image_size=len(images),
        invariant_violations=total("invariant_violations"),
        cardinalities=record,
        failure_count=sum(counts.values()),
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# worked example tables

@dataclass(frozen=True)
class GoldenRow:
    """One column of an example table, in compact notation without commas.

    ``pi`` is "-" for a permutation with no preimage and ``sigma`` is "-" for
    the derangement with no image. ``a1`` is the highlighted entry.
    """

    pi: str
    sigma: str
    case: str
    a1: Optional[int]


GOLDEN_ROWS: tuple[GoldenRow, ...] = (
    # n = 4, every derangement
    GoldenRow("(12)(34)", "-", "excluded", None),
    GoldenRow("(13)(24)", "(1)(234)", "ii", 3),
    GoldenRow("(14)(23)", "(1)(243)", "ii", 4),
    GoldenRow("(1234)", "(2)(134)", "i", 2),
    GoldenRow("(1243)", "(2)(143)", "i", 2),
    GoldenRow("(1324)", "(3)(124)", "i", 3),
    GoldenRow("(1342)", "(3)(142)", "i", 3),
    GoldenRow("(1423)", "(4)(123)", "i", 4),
    GoldenRow("(1432)", "(4)(132)", "i", 4),
    # n = 5, a selection
    GoldenRow("-", "(1)(23)(45)", "excluded", None),
    GoldenRow("(12)(345)", "(1)(24)(35)", "i", 4),
    GoldenRow("(12)(354)", "(1)(25)(34)", "i", 5),
    GoldenRow("(123)(45)", "(2)(13)(45)", "i", 2),
    GoldenRow("(13)(245)", "(1)(2345)", "ii", 3),
    GoldenRow("(14)(235)", "(1)(2435)", "ii", 4),
    GoldenRow("(154)(23)", "(5)(14)(23)", "i", 5),
)


@dataclass(frozen=True)
class TableRow:
    input: str
    output: str
    case: str
    k: Optional[int]
    a1: Optional[int]


def normalize(text: str) -> str:
    """Drop separators so "(1,3)(2,4)" and "(13)(24)" compare equal (single-digit elements only)."""
    return "".join(ch for ch in text if ch not in ", \t")


def parse_compact(text: str) -> CycleForm:
    """Parse cycle notation written without separators, one digit per element."""
    spaced = "".join(f"{ch} " if ch.isdigit() else ch for ch in text)
    return parse_cycles(spaced)


def _row_for(golden: GoldenRow) -> TableRow:
    if golden.pi == "-":
        sigma = parse_compact(golden.sigma)
        try:
            pre = psi_inverse(sigma)
        except ExcludedInput:
            return TableRow("-", format_cycles(sigma, "fixed-point-first"), "excluded", None, None)
        return TableRow(format_cycles(pre), format_cycles(sigma, "fixed-point-first"), "has-preimage", None, None)
    pi = parse_compact(golden.pi)
    case = classify_case(pi)
    try:
        sigma = psi(pi)
    except ExcludedInput:
        return TableRow(format_cycles(pi), "-", case.variant.value, None, None)
    return TableRow(
        format_cycles(pi),
        format_cycles(sigma, "fixed-point-first"),
        case.variant.value,
        case.k,
        case.a1,
    )


def golden_tables(golden: Sequence[GoldenRow] = GOLDEN_ROWS) -> list[TableRow]:
    """Recompute every example-table column from its left-hand entry."""
    rows = []
    for g in golden:
        try:
            rows.append(_row_for(g))
        except PermutationError as e:
            rows.append(TableRow(g.pi, f"{type(e).__name__}: {e}", "error", None, None))
    return rows


def row_matches(row: TableRow, golden: GoldenRow) -> bool:
    return (
        normalize(row.input) == normalize(golden.pi)
        and normalize(row.output) == normalize(golden.sigma)
        and row.case == golden.case
        and row.a1 == golden.a1
    )


def compare_golden(golden: Sequence[GoldenRow] = GOLDEN_ROWS) -> list[tuple[TableRow, GoldenRow, bool]]:
    return [(row, g, row_matches(row, g)) for row, g in zip(golden_tables(golden), golden)]
