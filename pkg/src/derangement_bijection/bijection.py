"""The map psi from derangements to one-fixed-point permutations, and its inverse.

For even n the involution (1,2)(3,4)...(n-1,n) has no image; for odd n the
permutation (1)(2,3)...(n-1,n) has no preimage. Everywhere else psi is a
bijection, which shows that derangements and one-fixed-point permutations of
{1..n} differ in number by exactly one.

Both directions work on canonical cycle notation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .perm import CycleForm, NotExactlyOneFixedPoint, PermutationError

__all__ = [
    "BijectionCase",
    "Case",
    "ExcludedInput",
    "InvariantViolation",
    "NotADerangement",
    "classify_case",
    "prefix_k",
    "psi",
    "psi_inverse",
]

Cycles = tuple[tuple[int, ...], ...]


class ExcludedInput(PermutationError):
    """The input is the one element left out of the bijection."""


class NotADerangement(PermutationError):
    pass


class InvariantViolation(RuntimeError):
    """A structural property of psi failed to hold. Always a bug, never bad input."""


class Case(enum.Enum):
    I = "i"
    II = "ii"
    EXCLUDED = "excluded"


@dataclass(frozen=True)
class BijectionCase:
    variant: Case
    k: Optional[int] = None
    a1: Optional[int] = None


def _canonical_derangement(c: CycleForm) -> Cycles:
    c = c.canonical()
    if any(len(cyc) == 1 for cyc in c.cycles):
        raise NotADerangement(f"{c} has a fixed point")
    return c.cycles


def _prefix(cycles: Cycles) -> int:
    k = 0
    for cyc in cycles:
        if cyc != (2 * k + 1, 2 * k + 2):
            break
        k += 1
    return k


def prefix_k(c: CycleForm) -> int:
    """Number of leading cycles equal to (1,2), (3,4), ..., (2k-1,2k)."""
    return _prefix(_canonical_derangement(c))


def classify_case(c: CycleForm) -> BijectionCase:
    cycles = _canonical_derangement(c)
    k = _prefix(cycles)
    if 2 * k == c.n:
        return BijectionCase(Case.EXCLUDED)
    head = cycles[k]
    return BijectionCase(Case.I if len(head) >= 3 else Case.II, k, head[1])


def _psi_cycles(cycles: Cycles, n: int) -> Cycles:
    k = _prefix(cycles)
    if 2 * k == n:
        raise ExcludedInput(f"{CycleForm(n, cycles)} has no image")
    if not 2 * k < n:
        raise InvariantViolation(f"prefix length {k} is not below n/2 for n={n}")
    head = cycles[k]
    if head[0] != 2 * k + 1:
        raise InvariantViolation(f"cycle after the prefix starts at {head[0]}, expected {2 * k + 1}")
    a1 = head[1]
    shifted_pairs = [(2 * i, 2 * i + 1) for i in range(1, k)]

    if len(head) >= 3:
        rest = cycles[k + 1:]
        if k == 0:
            new = [(a1,), (1,) + head[2:]]
        else:
            new = [(1,), *shifted_pairs, (2 * k, a1), (2 * k + 1,) + head[2:]]
    else:
        if a1 < 2 * k + 3:
            raise InvariantViolation(f"case ii: a1={a1} is below {2 * k + 3}")
        if k + 1 >= len(cycles) or cycles[k + 1][0] != 2 * k + 2:
            raise InvariantViolation(
                f"case ii: cycle following {head} does not start at {2 * k + 2}"
            )
        nxt = cycles[k + 1]
        rest = cycles[k + 2:]
        new = [(1,), *shifted_pairs]
        if k >= 1:
            new.append((2 * k, 2 * k + 1))
        new.append((2 * k + 2, a1) + nxt[1:])
    return tuple(sorted(new + list(rest), key=lambda cyc: cyc[0]))


def psi(c: CycleForm) -> CycleForm:
    """Map a derangement other than the excluded involution to a one-fixed-point permutation.

    Raises NotADerangement for inputs with fixed points and ExcludedInput for
    (1,2)(3,4)...(n-1,n).
    """
    cycles = _canonical_derangement(c)
    return CycleForm(c.n, _psi_cycles(cycles, c.n))


def _shift(cycles, delta: int) -> list[tuple[int, ...]]:
    return [tuple(v + delta for v in cyc) for cyc in cycles]


def psi_inverse(c: CycleForm) -> CycleForm:
    """Inverse of psi on one-fixed-point permutations other than (1)(2,3)...(n-1,n)."""
    c = c.canonical()
    n = c.n
    fixed = c.fixed_points
    if len(fixed) != 1:
        raise NotExactlyOneFixedPoint(f"{c} has {len(fixed)} fixed points, expected 1")
    ell = fixed[0]
    if n % 2 == 1 and c.cycles == ((1,),) + tuple((i, i + 1) for i in range(2, n, 2)):
        raise ExcludedInput(f"{c} has no preimage")

    if ell != 1:
        merged = []
        for cyc in c.cycles:
            if cyc[0] == 1:
                merged.append((1, ell) + cyc[1:])
            elif cyc != (ell,):
                merged.append(cyc)
        return CycleForm(n, tuple(merged))

    # drop (1), relabel 2..n as 1..n-1, apply psi, relabel back, turn the fixed point m into (1,m)
    inner = tuple(_shift(c.cycles[1:], -1))
    if n % 2 == 1 and inner == tuple((i, i + 1) for i in range(1, n - 1, 2)):
        raise InvariantViolation("inner derangement is the excluded involution")
    image = _shift(_psi_cycles(inner, n - 1), +1)
    out = []
    for cyc in image:
        out.append((1,) + cyc if len(cyc) == 1 else cyc)
    return CycleForm(n, tuple(sorted(out, key=lambda cyc: cyc[0])))
