"""Streams over S_n and its subclasses, and derangement counts by several methods."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .perm import PermClass, Permutation, classify

__all__ = [
    "ENUMERATION_BOUND",
    "BoundExceeded",
    "CountRecord",
    "bruteforce_counts",
    "count_class_bruteforce",
    "count_d_rec1",
    "count_d_rec2",
    "count_record",
    "iter_class",
]

ENUMERATION_BOUND = 9


class BoundExceeded(ValueError):
    def __init__(self, n: int, bound: int):
        super().__init__(f"n={n} exceeds the enumeration bound {bound}")
        self.n = n
        self.bound = bound


def iter_class(n: int, cls: PermClass = PermClass.S) -> Iterator[Permutation]:
    """Yield the members of ``cls`` among permutations of {1..n} in lexicographic one-line order."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    for image in itertools.permutations(range(1, n + 1)):
        p = Permutation(image)
        if cls is PermClass.S or cls in classify(p):
            yield p


def count_d_rec1(n_max: int) -> list[int]:
    """d_0..d_{n_max} from d_n = n*d_{n-1} + (-1)^n."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    d = [1]
    for n in range(1, n_max + 1):
        d.append(n * d[-1] + (-1) ** n)
    return d


def count_d_rec2(n_max: int) -> list[int]:
    """d_0..d_{n_max} from d_n = (n-1)(d_{n-1} + d_{n-2})."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    d = [1, 0][: n_max + 1]
    for n in range(2, n_max + 1):
        d.append((n - 1) * (d[-1] + d[-2]))
    return d


def bruteforce_counts(n: int, bound: int = ENUMERATION_BOUND) -> dict[PermClass, int]:
    """Size of every class by walking all of S_n.

    Deliberately shares no code with ``classify`` so it can serve as an oracle.
    """
    if n > bound:
        raise BoundExceeded(n, bound)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    involution = tuple(i + 1 if i % 2 else i - 1 for i in range(1, n + 1))
    shifted = (1,) + tuple(i + 1 if i % 2 == 0 else i - 1 for i in range(2, n + 1))
    total = d = f = 0
    involution_seen = shifted_seen = False
    for image in itertools.permutations(range(1, n + 1)):
        total += 1
        nfixed = 0
        for i, v in enumerate(image, 1):
            if i == v:
                nfixed += 1
        if nfixed == 0:
            d += 1
            if image == involution:
                involution_seen = True
        elif nfixed == 1:
            f += 1
            if image == shifted:
                shifted_seen = True
    dstar = d - (1 if n % 2 == 0 and involution_seen else 0)
    fstar = f - (1 if n % 2 == 1 and shifted_seen else 0)
    return {
        PermClass.S: total,
        PermClass.D: d,
        PermClass.F: f,
        PermClass.DStar: dstar,
        PermClass.FStar: fstar,
    }


def count_class_bruteforce(n: int, cls: PermClass, bound: int = ENUMERATION_BOUND) -> int:
    return bruteforce_counts(n, bound)[cls]


@dataclass(frozen=True)
class CountRecord:
    """Counts for one n, with the derangement number computed by every available method.

    ``d_by_method`` maps method name to its value of d_n (None when a method
    was skipped); ``method_agreement`` flags whether each method agrees with
    all the others.
    """

    n: int
    d_n: int
    f_n: int
    dstar_n: int
    fstar_n: int
    d_by_method: dict[str, Optional[int]] = field(default_factory=dict)
    method_agreement: dict[str, Optional[bool]] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return (
            all(flag is not False for flag in self.method_agreement.values())
            and self.d_n - self.f_n == (-1) ** self.n
            and self.dstar_n == self.fstar_n
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d_n": self.d_n,
            "f_n": self.f_n,
            "dstar_n": self.dstar_n,
            "fstar_n": self.fstar_n,
            "d_by_method": dict(self.d_by_method),
            "method_agreement": dict(self.method_agreement),
            "consistent": self.consistent,
        }


def make_count_record(
    n: int,
    rec1: Sequence[int],
    rec2: Sequence[int],
    brute: Optional[dict[PermClass, int]] = None,
) -> CountRecord:
    """Assemble a CountRecord from recurrence tables covering 0..n and optional brute-force counts."""
    by_method: dict[str, Optional[int]] = {
        "recurrence_1": rec1[n],
        "recurrence_2": rec2[n],
        "brute_force": brute[PermClass.D] if brute is not None else None,
    }
    present = [v for v in by_method.values() if v is not None]
    agreement = {
        name: (None if v is None else all(v == w for w in present))
        for name, v in by_method.items()
    }
    if brute is not None:
        f_n, dstar, fstar = brute[PermClass.F], brute[PermClass.DStar], brute[PermClass.FStar]
        agreement["f_n_identity"] = f_n == (n * rec1[n - 1] if n else 0)
    else:
        f_n = n * rec1[n - 1] if n else 0
        dstar = rec1[n] - (1 if n % 2 == 0 else 0)
        fstar = f_n - (1 if n % 2 == 1 else 0)
    return CountRecord(n, rec1[n], f_n, dstar, fstar, by_method, agreement)


def count_record(n: int, bound: int = ENUMERATION_BOUND) -> CountRecord:
    """CountRecord for n; brute force is used when n is within ``bound`` and skipped otherwise."""
    rec1, rec2 = count_d_rec1(n), count_d_rec2(n)
    brute = bruteforce_counts(n, bound) if n <= bound else None
    return make_count_record(n, rec1, rec2, brute)
