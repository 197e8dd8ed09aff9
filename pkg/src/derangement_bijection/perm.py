"""Permutations of {1..n}: one-line form, canonical cycle notation, parsing and class tags.

All element values are 1-based. A permutation is stored as its one-line image
``(p(1), ..., p(n))``; cycle notation writes each cycle starting from its
smallest element and lists cycles by increasing first element.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

__all__ = [
    "CycleForm",
    "MissingElement",
    "NotExactlyOneFixedPoint",
    "NotOneFixedPoint",
    "OutOfRange",
    "ParseError",
    "PermClass",
    "Permutation",
    "PermutationError",
    "RepeatedElement",
    "classify",
    "excluded_derangement",
    "excluded_one_fixed",
    "fixed_points",
    "format_cycles",
    "from_cycle_form",
    "parse_cycles",
    "to_cycle_form",
]


class PermutationError(ValueError):
    """Base class for malformed or out-of-domain permutation input."""


class ParseError(PermutationError):
    pass


class RepeatedElement(PermutationError):
    def __init__(self, element: int):
        super().__init__(f"element {element} appears more than once")
        self.element = element


class MissingElement(PermutationError):
    def __init__(self, element: int):
        super().__init__(f"element {element} is missing")
        self.element = element


class OutOfRange(PermutationError):
    def __init__(self, element: int, n: int):
        super().__init__(f"element {element} is outside 1..{n}")
        self.element = element
        self.n = n


class NotExactlyOneFixedPoint(PermutationError):
    pass


# format_cycles and psi_inverse reject the same condition
NotOneFixedPoint = NotExactlyOneFixedPoint


class PermClass(enum.Enum):
    S = "s"
    D = "d"
    F = "f"
    DStar = "dstar"
    FStar = "fstar"


def _check_image(image: Sequence[int]) -> None:
    n = len(image)
    seen = bytearray(n + 1)
    for v in image:
        if not 1 <= v <= n:
            raise OutOfRange(v, n)
        if seen[v]:
            raise RepeatedElement(v)
        seen[v] = 1


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} given by its one-line image."""

    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        _check_image(self.image)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __len__(self) -> int:
        return len(self.image)

    def __str__(self) -> str:
        return format_cycles(to_cycle_form(self))


@dataclass(frozen=True)
class CycleForm:
    """A cycle decomposition of a permutation of {1..n}.

    Instances are not validated on construction; ``from_cycle_form`` and
    ``canonical`` check that the cycles partition {1..n}.
    """

    n: int
    cycles: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(tuple(c) for c in self.cycles))

    def canonical(self) -> CycleForm:
        """Return the validated canonical form of the same permutation."""
        _check_partition(self)
        return CycleForm(self.n, _canonical_cycles(self.cycles))

    def is_canonical(self) -> bool:
        firsts = [c[0] for c in self.cycles if c]
        return (
            all(c and c[0] == min(c) for c in self.cycles)
            and all(a < b for a, b in zip(firsts, firsts[1:]))
        )

    @property
    def fixed_points(self) -> list[int]:
        return [c[0] for c in self.cycles if len(c) == 1]

    def __str__(self) -> str:
        return format_cycles(self)


def _check_partition(c: CycleForm) -> None:
    seen = bytearray(c.n + 1)
    for cycle in c.cycles:
        if not cycle:
            raise PermutationError("empty cycle")
        for v in cycle:
            if not 1 <= v <= c.n:
                raise OutOfRange(v, c.n)
            if seen[v]:
                raise RepeatedElement(v)
            seen[v] = 1
    for v in range(1, c.n + 1):
        if not seen[v]:
            raise MissingElement(v)


def _rotate_to_min(cycle: tuple[int, ...]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def _canonical_cycles(cycles: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((_rotate_to_min(c) for c in cycles), key=lambda c: c[0]))


def to_cycle_form(p: Permutation) -> CycleForm:
    image = p.image
    n = len(image)
    seen = bytearray(n + 1)
    cycles = []
    # scanning starts in increasing order, so each orbit is entered at its minimum
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = 1
        v = image[start - 1]
        while v != start:
            cycle.append(v)
            seen[v] = 1
            v = image[v - 1]
        cycles.append(tuple(cycle))
    return CycleForm(n, tuple(cycles))


def from_cycle_form(c: CycleForm) -> Permutation:
    """Convert any valid cycle decomposition, canonical or not, to one-line form."""
    _check_partition(c)
    image = [0] * c.n
    for cycle in c.cycles:
        m = len(cycle)
        for i, v in enumerate(cycle):
            image[v - 1] = cycle[(i + 1) % m]
    return Permutation(tuple(image))


def parse_cycles(text: str) -> CycleForm:
    """Parse text such as ``"(1,3)(2,4,5)"`` into a canonical CycleForm.

    Inside a cycle, elements are separated by commas or whitespace. Every
    element of 1..n must appear, fixed points included, where n is the
    largest element written.
    """
    cycles: list[tuple[int, ...]] = []
    i, end = 0, len(text)

    def skip_ws(j: int) -> int:
        while j < end and text[j].isspace():
            j += 1
        return j

    i = skip_ws(i)
    if i == end:
        raise ParseError("empty input")
    while i < end:
        if text[i] != "(":
            raise ParseError(f"expected '(' at offset {i}, found {text[i]!r}")
        i = skip_ws(i + 1)
        cycle: list[int] = []
        while True:
            j = i
            while j < end and text[j].isdigit():
                j += 1
            if j == i:
                found = repr(text[i]) if i < end else "end of input"
                raise ParseError(f"expected integer at offset {i}, found {found}")
            value = int(text[i:j])
            if value < 1:
                raise ParseError(f"elements must be >= 1, got {value}")
            cycle.append(value)
            i = skip_ws(j)
            if i < end and text[i] == ")":
                i += 1
                break
            if i < end and text[i] == ",":
                i = skip_ws(i + 1)
            elif i == end or i == j:
                # no separator consumed: neither ',' nor whitespace follows the integer
                found = repr(text[i]) if i < end else "end of input"
                raise ParseError(f"expected ',' or ')' at offset {i}, found {found}")
        cycles.append(tuple(cycle))
        i = skip_ws(i)
    n = max(max(c) for c in cycles)
    return CycleForm(n, tuple(cycles)).canonical()


def format_cycles(
    c: CycleForm, mode: Literal["canonical", "fixed-point-first"] = "canonical"
) -> str:
    canon = c if c.is_canonical() else c.canonical()
    cycles = canon.cycles
    if mode == "fixed-point-first":
        fixed = [cyc for cyc in cycles if len(cyc) == 1]
        if len(fixed) != 1:
            raise NotExactlyOneFixedPoint(
                f"fixed-point-first display needs exactly one fixed point, found {len(fixed)}"
            )
        cycles = fixed + [cyc for cyc in cycles if len(cyc) != 1]
    elif mode != "canonical":
        raise ValueError(f"unknown format mode {mode!r}")
    return "".join("(" + ",".join(map(str, cyc)) + ")" for cyc in cycles)


def fixed_points(p: Permutation) -> set[int]:
    return {i for i, v in enumerate(p.image, 1) if i == v}


def excluded_derangement(n: int) -> tuple[int, ...]:
    """One-line image of (1,2)(3,4)...(n-1,n); only meaningful for even n."""
    return tuple(i + 1 if i % 2 else i - 1 for i in range(1, n + 1))


def excluded_one_fixed(n: int) -> tuple[int, ...]:
    """One-line image of (1)(2,3)...(n-1,n); only meaningful for odd n."""
    return (1,) + tuple(i + 1 if i % 2 == 0 else i - 1 for i in range(2, n + 1))


def classify(p: Permutation) -> frozenset[PermClass]:
    image = p.image
    n = len(image)
    nfixed = sum(1 for i, v in enumerate(image, 1) if i == v)
    tags = {PermClass.S}
    if nfixed == 0:
        tags.add(PermClass.D)
        if n % 2 == 1 or image != excluded_derangement(n):
            tags.add(PermClass.DStar)
    elif nfixed == 1:
        tags.add(PermClass.F)
        if n % 2 == 0 or image != excluded_one_fixed(n):
            tags.add(PermClass.FStar)
    return frozenset(tags)
