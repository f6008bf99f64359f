"""Scalar arithmetic shared by the series engines.

Two backends are supported and never mixed inside one computation:

* ``float64`` -- ordinary Python floats (IEEE double),
* ``rational`` -- exact ``fractions.Fraction`` values.

Plain ints are neutral: they combine with either backend without changing it.
``classify_backend`` decides which backend a collection of scalars lives in and
raises :class:`~f3sum.errors.BackendMismatchError` on a float/Fraction mix.

The module also provides the rising factorial (Pochhammer symbol), the
truncation policy / result records used by every adaptive summation, and
``adaptive_sum`` itself, the single stall-rule loop the rest of the package
builds on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from .errors import BackendMismatchError, InexactPowerError, NotConvergedError

Number = Union[int, float, Fraction]

FLOAT64 = "float64"
RATIONAL = "rational"
BACKENDS = (FLOAT64, RATIONAL)


def classify_backend(values: Iterable[Number]) -> str:
    """Return the backend a set of scalars belongs to.

    Ints alone count as rational (they are exact).  A mix of float and
    Fraction raises BackendMismatchError: silent promotion of an exact value
    to float (or the reverse) is exactly the bug this guard exists to catch.
    """
    has_float = False
    has_fraction = False
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
            raise BackendMismatchError(f"unsupported scalar type {type(v).__name__}")
        if isinstance(v, float):
            has_float = True
        elif isinstance(v, Fraction):
            has_fraction = True
    if has_float and has_fraction:
        raise BackendMismatchError("float and rational scalars mixed in one computation")
    return FLOAT64 if has_float else RATIONAL


def coerce_number(x: Number, backend: str) -> Number:
    """Coerce one scalar into a backend.

    Floats refuse to become rational: Fraction(0.1) silently means the binary
    ratio 3602879701896397/36028797018963968, which is never what a decimal
    input intended.  Parse decimal text into Fraction at the I/O layer instead.
    """
    if backend == FLOAT64:
        return float(x)
    if backend == RATIONAL:
        if isinstance(x, float):
            raise BackendMismatchError(
                "refusing to coerce a float into the rational backend; "
                "supply an int, a Fraction, or a 'p/q' string"
            )
        return x
    raise ValueError(f"unknown backend {backend!r}")


def is_integer_valued(x: Number) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    return float(x).is_integer()


def is_nonpositive_integer(x: Number) -> bool:
    """True when x is an integer <= 0, the Pochhammer termination condition."""
    return is_integer_valued(x) and x <= 0


def exact_div(num: Number, den: Number) -> Number:
    """Divide without leaving the backend.

    int/int must give a Fraction, not a float; float operands divide normally.
    """
    if isinstance(num, float) or isinstance(den, float):
        return num / den
    return Fraction(num) / Fraction(den)


def number_pow(base: Number, exponent: Number) -> Number:
    """base ** exponent staying inside the backend.

    Integer exponents are computed exactly in both backends.  Non-integer
    exponents need floats on both sides; a rational base then raises
    InexactPowerError, and a negative base raises ValueError (the result
    would be complex).
    """
    if is_integer_valued(exponent):
        n = int(exponent)
        if isinstance(base, float):
            return base ** n
        if n < 0:
            return Fraction(base) ** n
        return base ** n
    if isinstance(base, float):
        if base < 0:
            raise ValueError(f"negative base {base} with non-integer exponent")
        return base ** float(exponent)
    raise InexactPowerError(
        f"exact power needs an integer exponent, got {exponent!r}"
    )


def pochhammer(x: Number, k: int) -> Number:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1), with (x)_0 = 1.

    Exact for int and Fraction arguments; IEEE for floats.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"pochhammer order must be a non-negative int, got {k!r}")
    result: Number = 1
    for i in range(k):
        result = result * (x + i)
    return result


def pochhammer_product(values: Iterable[Number], k: int) -> Number:
    """Product of (v)_k over a parameter family; empty family gives 1."""
    result: Number = 1
    for v in values:
        result = result * pochhammer(v, k)
    return result


@dataclass(frozen=True)
class TruncationPolicy:
    """Stop rule for adaptive summation.

    tol               relative threshold a term must fall below,
    max_total_degree  hard cap on the summation index (shell or outer k),
    stall_window      consecutive below-threshold terms required to stop.
    """

    tol: float = 1e-12
    max_total_degree: int = 28
    stall_window: int = 3

    def __post_init__(self) -> None:
        if not (self.tol > 0):
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.max_total_degree < 1:
            raise ValueError("max_total_degree must be >= 1")
        if self.stall_window < 1:
            raise ValueError("stall_window must be >= 1")


@dataclass(frozen=True)
class EvaluationResult:
    """Value of a truncated series plus convergence diagnostics.

    terminated_exactly implies converged: the summation exhausted every
    nonzero term, so the value is the exact (backend-exact) sum.
    """

    value: Number
    shells_used: int
    last_shell_magnitude: float
    converged: bool
    terminated_exactly: bool

    def __post_init__(self) -> None:
        if self.terminated_exactly and not self.converged:
            raise ValueError("terminated_exactly requires converged")


def magnitude_as_float(mag: Number) -> float:
    try:
        return float(mag)
    except OverflowError:
        return math.inf


def below_threshold(mag: Number, reference: Number, tol: float) -> bool:
    """|term| < tol * max(|S|, 1), computed exactly for rational magnitudes.

    Non-finite values never count as small, so overflow or NaN can only delay
    convergence, never fake it.
    """
    if isinstance(mag, float) and not math.isfinite(mag):
        return False
    ref = reference if reference > 1 else 1
    if isinstance(mag, float) or isinstance(ref, float):
        if isinstance(ref, float) and not math.isfinite(ref):
            return False
        return mag < tol * ref
    return mag < Fraction(tol) * ref


def adaptive_sum(
    term: Callable[[int], Number],
    policy: TruncationPolicy,
    exact_bound: Optional[int] = None,
    strict: bool = False,
) -> EvaluationResult:
    """Sum term(0) + term(1) + ... under the policy's stall rule.

    Terms are requested in strictly increasing order, once each, so stateful
    term closures are safe and the result is bitwise reproducible.

    exact_bound, when given, promises term(k) == 0 for every k > exact_bound.
    If the bound fits under the cap the slice is summed in full and the result
    is flagged terminated_exactly.

    Hitting the cap without satisfying the stall rule leaves converged False
    (and raises NotConvergedError when strict is set); the partial sum is
    still returned.
    """
    if exact_bound is not None and exact_bound <= policy.max_total_degree:
        total: Number = 0
        last: Number = 0
        for k in range(exact_bound + 1):
            last = term(k)
            total = total + last
        return EvaluationResult(
            value=total,
            shells_used=exact_bound + 1,
            last_shell_magnitude=magnitude_as_float(abs(last)),
            converged=True,
            terminated_exactly=True,
        )

    total = 0
    streak = 0
    used = 0
    last_mag: Number = 0
    converged = False
    for k in range(policy.max_total_degree + 1):
        t_k = term(k)
        total = total + t_k
        used = k + 1
        last_mag = abs(t_k)
        if below_threshold(last_mag, abs(total), policy.tol):
            streak += 1
            if streak >= policy.stall_window:
                converged = True
                break
        else:
            streak = 0
    if strict and not converged:
        raise NotConvergedError(
            f"series did not settle within {policy.max_total_degree} terms"
        )
    return EvaluationResult(
        value=total,
        shells_used=used,
        last_shell_magnitude=magnitude_as_float(last_mag),
        converged=converged,
        terminated_exactly=False,
    )
