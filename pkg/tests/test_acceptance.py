"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest summary
under "acceptance criteria". Tolerances are all exact.
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from derangement_bijection.enumerate import (
    count_class_bruteforce,
    count_d_rec1,
    count_d_rec2,
)
from derangement_bijection.perm import PermClass
from derangement_bijection.verify import GOLDEN_ROWS, compare_golden, parse_compact, verify_n

MAX_N = 9
RECURRENCE_N = 30


def record(number, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}" + (f" ({detail})" if detail else ""))
    assert ok, detail


@pytest.fixture(scope="module")
def sweep():
    reports, seconds = {}, {}
    for n in range(1, MAX_N + 1):
        start = time.perf_counter()
        reports[n] = verify_n(n)
        seconds[n] = time.perf_counter() - start
    return reports, seconds


def test_1_golden_tables():
    start = time.perf_counter()
    results = compare_golden()
    elapsed = time.perf_counter() - start
    sizes = [parse_compact(g.sigma if g.pi == "-" else g.pi).n for g in GOLDEN_ROWS]
    dashes = [row for row, g, _ in results if "-" in (row.input, row.output)]
    ok = (
        all(match for _, _, match in results)
        and sizes.count(4) == 9
        and sizes.count(5) == 7
        and len(dashes) == 2
        and all(row.case in ("i", "ii") and row.a1 is not None for row, g, _ in results if g.case != "excluded")
        and elapsed < 1.0
    )
    matched = sum(m for _, _, m in results)
    record(1, "golden tables reproduced", ok, f"{matched}/{len(results)} rows match, {elapsed:.3f}s")


def test_2_exhaustive_bijectivity(sweep):
    reports, seconds = sweep
    d = count_d_rec1(MAX_N)
    bad = []
    for n, r in reports.items():
        expected = n * d[n - 1] - (n % 2)
        if not (r.bijective and r.image_size == r.dstar_count == r.fstar_count == expected):
            bad.append(n)
    ok = not bad and reports[4].dstar_count == 8 and reports[5].dstar_count == 44 and seconds[MAX_N] <= 60
    record(2, f"psi bijective D*_n -> F*_n for n=1..{MAX_N}", ok,
           f"failing n={bad}, |D*_9|={reports[9].dstar_count}, n=9 took {seconds[MAX_N]:.1f}s")


def test_3_inverse_laws(sweep):
    reports, seconds = sweep
    bad = [n for n, r in reports.items() if not r.inverse_ok]
    record(3, f"psi^-1 . psi = id and psi . psi^-1 = id for n=1..{MAX_N}", not bad and seconds[MAX_N] <= 60,
           f"failing n={bad}")


def test_4_recurrence():
    # the identity is checked on the second recurrence's table, which does not encode it
    d = count_d_rec2(RECURRENCE_N)
    identity = all(d[n] - n * d[n - 1] == (-1) ** n for n in range(1, RECURRENCE_N + 1))
    rec1 = count_d_rec1(MAX_N)
    brute = [count_class_bruteforce(n, PermClass.D) for n in range(MAX_N + 1)]
    ok = identity and rec1 == brute and brute[4] == 9 and brute[5] == 44
    record(4, f"d_n - n d_(n-1) = (-1)^n for n=1..{RECURRENCE_N}, brute force to n={MAX_N}", ok,
           f"d_9={brute[9]}, d_30={d[30]}")


def test_5_cross_recurrence():
    ok = count_d_rec1(RECURRENCE_N) == count_d_rec2(RECURRENCE_N)
    record(5, f"both recurrences agree for n=0..{RECURRENCE_N}", ok)


def test_6_one_fixed_point_count():
    bad = [
        n for n in range(1, MAX_N + 1)
        if count_class_bruteforce(n, PermClass.F) != n * count_class_bruteforce(n - 1, PermClass.D)
    ]
    record(6, f"|F_n| = n d_(n-1) by enumeration for n=1..{MAX_N}", not bad, f"failing n={bad}")


def test_7_exclusion_parity(sweep):
    reports, _ = sweep
    bad = [
        n for n, r in reports.items()
        if (r.excluded_count_d, r.excluded_count_f) != ((1, 0) if n % 2 == 0 else (0, 1))
    ]
    record(7, "exactly one excluded element on the side fixed by parity", not bad, f"failing n={bad}")


def test_8_structural_assertions(sweep):
    reports, _ = sweep
    fired = {n: r.invariant_violations for n, r in reports.items() if r.invariant_violations}
    record(8, "structural checks never fire in the sweep", not fired, f"violations={fired}")
