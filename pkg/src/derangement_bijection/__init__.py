"""A bijection between derangements and permutations with one fixed point."""

from .bijection import (
    BijectionCase,
    Case,
    ExcludedInput,
    InvariantViolation,
    NotADerangement,
    classify_case,
    prefix_k,
    psi,
    psi_inverse,
)
from .enumerate import (
    ENUMERATION_BOUND,
    BoundExceeded,
    CountRecord,
    count_class_bruteforce,
    count_d_rec1,
    count_d_rec2,
    count_record,
    iter_class,
)
from .perm import (
    CycleForm,
    MissingElement,
    NotExactlyOneFixedPoint,
    NotOneFixedPoint,
    OutOfRange,
    ParseError,
    PermClass,
    Permutation,
    PermutationError,
    RepeatedElement,
    classify,
    fixed_points,
    format_cycles,
    from_cycle_form,
    parse_cycles,
    to_cycle_form,
)
from .verify import VerifyReport, golden_tables, verify_n

__version__ = "0.1.0"
