"""Terminating instances close identities exactly, with zero residual.

When a numerator entry is a nonpositive integer the series is a polynomial,
the rational backend sums it exactly, and a true identity must give residual
exactly 0 -- not merely small.  Run:

    python3 demos/exact_termination.py
"""

from fractions import Fraction

from f3sum import (
    ArgumentTriple,
    FamilyIndex,
    IdentityInstance,
    ParameterSet,
    check_identity,
    eval_pfq,
    saalschutz_3f2,
    vandermonde_2f1,
)
from f3sum.suite import exact_instance

# A terminating instance of T1c built by hand: the indexed entry -3 cuts the
# series at degree 3 in the first direction.
ps = ParameterSet(
    c=(-3, Fraction(2, 7)), cp=(-1,), cpp=(-1,), e=(Fraction(9, 7),),
)
inst = IdentityInstance(
    "T1c", ps,
    ArgumentTriple(Fraction(1, 3), Fraction(-1, 4), Fraction(1, 5)),
    idx=FamilyIndex("c", 1),
    scalars={"t": Fraction(2, 7)},
)
rep = check_identity(inst)
print("hand-built terminating T1c")
print("  lhs       ", rep.lhs)
print("  rhs       ", rep.rhs)
print("  residual  ", rep.residual, "(exact zero)" if rep.residual == 0 else "")
print()

# The suite ships a seeded generator of terminating rational instances for
# every rule; parameters are sevenths and thirds so no denominator entry can
# land on a lattice zero.
for i in range(3):
    inst = exact_instance("T9c", seed=9, index=i)
    rep = check_identity(inst)
    print(f"generated T9c #{i}: residual = {rep.residual}, "
          f"both sides terminated = "
          f"{rep.lhs_diag.terminated_exactly and rep.rhs_diag.terminated_exactly}")
print()

# The same exactness carries the one-dimensional machinery: classical
# closed forms match exact summation term for term.
n, a, c = 4, Fraction(3, 7), Fraction(26, 7)
series = eval_pfq([-n, a], [c], 1)
print("vandermonde closed form vs exact sum")
print("  closed    ", vandermonde_2f1(n, a, c))
print("  summed    ", series.value)
print()

b = Fraction(-5, 7)
series = eval_pfq([-n, a, b], [c, 1 + a + b - c - n], 1)
print("saalschutz closed form vs exact sum")
print("  closed    ", saalschutz_3f2(n, a, b, c))
print("  summed    ", series.value)
