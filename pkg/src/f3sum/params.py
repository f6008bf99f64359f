"""Parameter bookkeeping for the triple hypergeometric series.

The series coefficient is a ratio of Pochhammer products taken over fourteen
parameter families, seven upstairs and seven downstairs.  Each family is tied
to one of the seven nonempty combinations of the three summation indices:

    family (num/den)    Pochhammer order
    a   / e             m1 + m2 + m3
    b   / g             m1 + m2
    bp  / gp            m2 + m3
    bpp / gpp           m3 + m1
    c   / h             m1
    cp  / hp            m2
    cpp / hpp           m3

A :class:`ParameterSet` holds one tuple of scalars per family (any family may
be empty).  All entries must live in a single arithmetic backend; see
:mod:`f3sum.numerics`.

Editing helpers (``shift_family``, ``shift_entry``, ``drop_entry``,
``push_entry``) return new frozen instances, so parameter sets can be shared
freely between the transformation rules that rewrite them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import InvalidIndexError
from .numerics import (
    FLOAT64,
    RATIONAL,
    Number,
    classify_backend,
    coerce_number,
    is_nonpositive_integer,
)

FAMILIES: Tuple[str, ...] = (
    "a", "b", "bp", "bpp", "c", "cp", "cpp",
    "e", "g", "gp", "gpp", "h", "hp", "hpp",
)

NUMERATOR_FAMILIES: Tuple[str, ...] = FAMILIES[:7]
DENOMINATOR_FAMILIES: Tuple[str, ...] = FAMILIES[7:]

# Which summation indices (m1, m2, m3) each family's Pochhammer order sums.
FAMILY_COMBO: Dict[str, Tuple[int, int, int]] = {
    "a": (1, 1, 1), "e": (1, 1, 1),
    "b": (1, 1, 0), "g": (1, 1, 0),
    "bp": (0, 1, 1), "gp": (0, 1, 1),
    "bpp": (1, 0, 1), "gpp": (1, 0, 1),
    "c": (1, 0, 0), "h": (1, 0, 0),
    "cp": (0, 1, 0), "hp": (0, 1, 0),
    "cpp": (0, 0, 1), "hpp": (0, 0, 1),
}

# Families whose Pochhammer order grows with the given argument direction.
X1_GROUP: Tuple[str, ...] = ("a", "b", "bpp", "c", "e", "g", "gpp", "h")
X2_GROUP: Tuple[str, ...] = ("a", "b", "bp", "cp", "e", "g", "gp", "hp")
X3_GROUP: Tuple[str, ...] = ("a", "bp", "bpp", "cpp", "e", "gp", "gpp", "hpp")


def combo_degree(family: str, m1: int, m2: int, m3: int) -> int:
    """Pochhammer order of a family at lattice point (m1, m2, m3)."""
    w = FAMILY_COMBO[family]
    return w[0] * m1 + w[1] * m2 + w[2] * m3


@dataclass(frozen=True)
class ParameterSet:
    """Immutable bundle of the fourteen parameter families."""

    a: Tuple[Number, ...] = ()
    b: Tuple[Number, ...] = ()
    bp: Tuple[Number, ...] = ()
    bpp: Tuple[Number, ...] = ()
    c: Tuple[Number, ...] = ()
    cp: Tuple[Number, ...] = ()
    cpp: Tuple[Number, ...] = ()
    e: Tuple[Number, ...] = ()
    g: Tuple[Number, ...] = ()
    gp: Tuple[Number, ...] = ()
    gpp: Tuple[Number, ...] = ()
    h: Tuple[Number, ...] = ()
    hp: Tuple[Number, ...] = ()
    hpp: Tuple[Number, ...] = ()

    def __post_init__(self) -> None:
        for name in FAMILIES:
            values = getattr(self, name)
            if not isinstance(values, tuple):
                object.__setattr__(self, name, tuple(values))
        # Raises BackendMismatchError on a float/Fraction mix.
        self.backend

    @property
    def backend(self) -> str:
        return classify_backend(self.all_entries())

    def family(self, name: str) -> Tuple[Number, ...]:
        if name not in FAMILIES:
            raise InvalidIndexError(f"unknown parameter family {name!r}")
        return getattr(self, name)

    def all_entries(self) -> List[Number]:
        out: List[Number] = []
        for name in FAMILIES:
            out.extend(getattr(self, name))
        return out

    def to_json_dict(self) -> Dict[str, list]:
        """Plain-JSON form; Fractions become 'p/q' strings, empty families are
        omitted."""
        out: Dict[str, list] = {}
        for name in FAMILIES:
            values = getattr(self, name)
            if values:
                out[name] = [format_number(v) for v in values]
        return out


def format_number(x: Number):
    """JSON-safe rendering of one scalar: ints and floats pass through,
    Fractions become 'p/q' strings (or a bare int when q == 1)."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    return x


def parse_number(raw, backend: str) -> Number:
    """Parse one scalar from JSON/CLI text into the requested backend.

    The rational backend reads JSON floats through their decimal spelling, so
    0.1 means exactly 1/10 rather than the nearest binary double.
    """
    if isinstance(raw, bool):
        raise InvalidIndexError(f"not a scalar: {raw!r}")
    if isinstance(raw, str):
        try:
            value: Number = Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidIndexError(f"cannot parse number {raw!r}") from exc
    elif isinstance(raw, int):
        value = raw
    elif isinstance(raw, float):
        value = Fraction(repr(raw)) if backend == RATIONAL else raw
    else:
        raise InvalidIndexError(f"not a scalar: {raw!r}")
    if backend == RATIONAL and isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return coerce_number(value, backend)


def parameter_set_from_json(data: Mapping[str, Sequence], backend: str = FLOAT64) -> ParameterSet:
    fields: Dict[str, Tuple[Number, ...]] = {}
    for name, values in data.items():
        if name not in FAMILIES:
            raise InvalidIndexError(f"unknown parameter family {name!r}")
        if isinstance(values, (str, bytes)) or not isinstance(values, Sequence):
            raise InvalidIndexError(f"family {name!r} must be a list of scalars")
        fields[name] = tuple(parse_number(v, backend) for v in values)
    return ParameterSet(**fields)


@dataclass(frozen=True)
class FamilyIndex:
    """1-based reference to one entry of one family."""

    family: str
    i: int = 1

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidIndexError(f"unknown parameter family {self.family!r}")
        if not isinstance(self.i, int) or self.i < 1:
            raise InvalidIndexError(f"family index is 1-based, got {self.i!r}")

    def check_against(self, ps: ParameterSet) -> None:
        if self.i > len(ps.family(self.family)):
            raise InvalidIndexError(
                f"index {self.i} out of range for family {self.family!r} "
                f"of length {len(ps.family(self.family))}"
            )


def entry_value(ps: ParameterSet, idx: FamilyIndex) -> Number:
    idx.check_against(ps)
    return ps.family(idx.family)[idx.i - 1]


def replace_family(ps: ParameterSet, name: str, values: Sequence[Number]) -> ParameterSet:
    if name not in FAMILIES:
        raise InvalidIndexError(f"unknown parameter family {name!r}")
    return replace(ps, **{name: tuple(values)})


def shift_family(ps: ParameterSet, name: str, delta: Number) -> ParameterSet:
    """Add delta to every entry of one family."""
    return replace_family(ps, name, tuple(v + delta for v in ps.family(name)))


def shift_entry(ps: ParameterSet, idx: FamilyIndex, delta: Number) -> ParameterSet:
    """Add delta to a single entry."""
    idx.check_against(ps)
    values = list(ps.family(idx.family))
    values[idx.i - 1] = values[idx.i - 1] + delta
    return replace_family(ps, idx.family, values)


def set_entry(ps: ParameterSet, idx: FamilyIndex, value: Number) -> ParameterSet:
    idx.check_against(ps)
    values = list(ps.family(idx.family))
    values[idx.i - 1] = value
    return replace_family(ps, idx.family, values)


def drop_entry(ps: ParameterSet, idx: FamilyIndex) -> ParameterSet:
    """Remove a single entry from its family."""
    idx.check_against(ps)
    values = list(ps.family(idx.family))
    del values[idx.i - 1]
    return replace_family(ps, idx.family, values)


def push_entry(ps: ParameterSet, name: str, value: Number) -> ParameterSet:
    """Append one entry to a family."""
    return replace_family(ps, name, ps.family(name) + (value,))


def termination_bound(values: Sequence[Number]) -> Optional[int]:
    """Largest Pochhammer order with all factors nonzero, i.e. min(-v) over
    nonpositive-integer entries v.  None when the family never terminates."""
    bound: Optional[int] = None
    for v in values:
        if is_nonpositive_integer(v):
            u = -int(v)
            bound = u if bound is None else min(bound, u)
    return bound


def numerator_bounds(ps: ParameterSet) -> Dict[str, Optional[int]]:
    """Termination bound per upstairs family (None where absent)."""
    return {name: termination_bound(ps.family(name)) for name in NUMERATOR_FAMILIES}


def in_support(bounds: Mapping[str, Optional[int]], m1: int, m2: int, m3: int) -> bool:
    """Is (m1, m2, m3) inside the region of nonzero series terms?

    A nonpositive-integer upstairs entry v kills every term whose Pochhammer
    order exceeds -v, so the support is the lower set cut out by the family
    bounds.
    """
    for name, bound in bounds.items():
        if bound is not None and combo_degree(name, m1, m2, m3) > bound:
            return False
    return True


def validate(ps: ParameterSet) -> List[Tuple[str, int]]:
    """Flag downstairs entries whose Pochhammer factor vanishes somewhere in
    the support of the series.

    Returns (family, 1-based index) pairs.  A nonpositive integer downstairs
    is harmless when every lattice point in the support stays short of the
    zero factor; that happens when an upstairs bound cuts the support first.
    """
    bounds = numerator_bounds(ps)
    warnings: List[Tuple[str, int]] = []
    for name in DENOMINATOR_FAMILIES:
        for j, v in enumerate(ps.family(name), start=1):
            if not is_nonpositive_integer(v):
                continue
            pole_order = 1 - int(v)  # smallest Pochhammer order with a zero factor
            if _support_reaches(bounds, name, pole_order):
                warnings.append((name, j))
    return warnings


def _support_reaches(
    bounds: Mapping[str, Optional[int]], family: str, order: int
) -> bool:
    """Does some support point give this family a Pochhammer order >= order?

    If reachable at all, it is reachable inside the box [0, order]^3, so a
    finite scan decides the question exactly.
    """
    for m1 in range(order + 1):
        for m2 in range(order + 1):
            for m3 in range(order + 1):
                if combo_degree(family, m1, m2, m3) < order:
                    continue
                if in_support(bounds, m1, m2, m3):
                    return True
    return False
