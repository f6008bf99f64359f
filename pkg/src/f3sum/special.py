"""Classical triple hypergeometric functions as parameter-set embeddings.

Each constructor places the parameters of a well-known three-variable series
into the fourteen-family layout of :mod:`f3sum.params`, so the general engine
evaluates the classical function directly:

* ``lauricella_fa3``: one upstairs parameter of full order m1+m2+m3, one
  upstairs and one downstairs parameter per single index.
* ``lauricella_fd3``: one upstairs parameter and one downstairs parameter of
  full order, one upstairs parameter per single index.
* ``srivastava_ha``: three upstairs parameters on the index pairs m3+m1,
  m1+m2, m2+m3, one downstairs parameter on m1 and one on m2+m3.

``check_special_case`` exercises each embedded function through whichever
resummation rule applies to it wholesale, confirming the embedding transforms
exactly as the classical function does.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .errors import InvalidInstanceError
from .f3core import ArgumentTriple
from .identities import CheckReport, IdentityInstance, check_identity
from .numerics import Number, TruncationPolicy
from .params import FamilyIndex, ParameterSet

SPECIAL_KINDS: Tuple[str, ...] = ("fa3", "fd3", "ha")


def lauricella_fa3(
    a: Number, b1: Number, b2: Number, b3: Number,
    c1: Number, c2: Number, c3: Number,
) -> ParameterSet:
    """Parameter layout whose series is
    sum (a)_(m1+m2+m3) (b1)_m1 (b2)_m2 (b3)_m3 / ((c1)_m1 (c2)_m2 (c3)_m3)
        * x1^m1 x2^m2 x3^m3 / (m1! m2! m3!)."""
    return ParameterSet(a=(a,), c=(b1,), cp=(b2,), cpp=(b3,), h=(c1,), hp=(c2,), hpp=(c3,))


def lauricella_fd3(a: Number, b1: Number, b2: Number, b3: Number, c: Number) -> ParameterSet:
    """Parameter layout whose series is
    sum (a)_(m1+m2+m3) (b1)_m1 (b2)_m2 (b3)_m3 / (c)_(m1+m2+m3)
        * x1^m1 x2^m2 x3^m3 / (m1! m2! m3!)."""
    return ParameterSet(a=(a,), c=(b1,), cp=(b2,), cpp=(b3,), e=(c,))


def srivastava_ha(a: Number, b1: Number, b2: Number, c1: Number, c2: Number) -> ParameterSet:
    """Parameter layout whose series is
    sum (a)_(m1+m3) (b1)_(m1+m2) (b2)_(m2+m3) / ((c1)_m1 (c2)_(m2+m3))
        * x1^m1 x2^m2 x3^m3 / (m1! m2! m3!)."""
    return ParameterSet(bpp=(a,), b=(b1,), bp=(b2,), h=(c1,), gp=(c2,))


def special_case_instance(
    kind: str, ps: ParameterSet, args: ArgumentTriple, t: Number
) -> IdentityInstance:
    """Wrap an embedded classical function as a rule instance.

    The full-order upstairs functions go through the all-argument rescale
    rule on their single a-entry; the pair-order function goes through the
    x1-translation rule, whose weight collapses to the classical
    2F1-style ratio for this layout.
    """
    if kind in ("fa3", "fd3"):
        return IdentityInstance(
            identity_id="T1a", ps=ps, args=args,
            idx=FamilyIndex("a", 1), scalars={"t": t},
        )
    if kind == "ha":
        return IdentityInstance(identity_id="T2x1", ps=ps, args=args, scalars={"t": t})
    raise InvalidInstanceError(
        f"unknown special case {kind!r}; expected one of {SPECIAL_KINDS}"
    )


def check_special_case(
    kind: str,
    ps: ParameterSet,
    args: ArgumentTriple,
    t: Number,
    policy: Optional[TruncationPolicy] = None,
    residual_tol: float = 1e-8,
    outer_cap: int = 40,
) -> CheckReport:
    inst = special_case_instance(kind, ps, args, t)
    return check_identity(inst, policy=policy, residual_tol=residual_tol, outer_cap=outer_cap)
