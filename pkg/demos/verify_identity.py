"""Check one resummation rule numerically, from both sides.

Each registered rule rewrites a weighted outer sum of triple-series values
(the left side) as a prefactor times a single modified series (the right
side).  The checker evaluates both sides independently and reports the
relative residual.  Run:

    python3 demos/verify_identity.py
"""

from f3sum import (
    ArgumentTriple,
    FamilyIndex,
    IdentityInstance,
    ParameterSet,
    check_identity,
    list_identities,
)

print("registered rules")
for row in list_identities():
    print(f"  {row['id']:<5} scalars={','.join(row['scalars']) or '-'}")
print()

ps = ParameterSet(
    a=(1.1,), b=(0.7,), bp=(0.9,), bpp=(1.3,),
    c=(0.8,), cp=(1.7,), cpp=(0.6,),
    e=(1.9,), g=(1.2,), gp=(0.5,), gpp=(2.1,),
    h=(1.4,), hp=(0.95,), hpp=(1.6,),
)
args = ArgumentTriple(0.03, -0.02, 0.025)

# T1a: an outer geometric sum in t shifts the first 'a' entry; the right
# side rescales every argument by 1/(1 - t).
inst = IdentityInstance(
    "T1a", ps, args, idx=FamilyIndex("a", 1), scalars={"t": 0.11}
)
rep = check_identity(inst)
print("T1a at a dense float point")
print("  lhs       ", rep.lhs)
print("  rhs       ", rep.rhs)
print("  residual  ", rep.residual)
print("  pass      ", rep.passed)
print()

# Setting the free scalar to zero collapses the outer sum to its first term,
# so both sides must agree to rounding error.
collapse = IdentityInstance(
    "T1a", ps, args, idx=FamilyIndex("a", 1), scalars={"t": 0.0}
)
rep = check_identity(collapse)
print("T1a with t = 0 (outer sum collapses)")
print("  residual  ", rep.residual)
print()

# A scalar outside the convergence region is refused with a reason instead
# of a bogus number.
guarded = IdentityInstance(
    "T1a", ps, args, idx=FamilyIndex("a", 1), scalars={"t": 1.7}
)
rep = check_identity(guarded)
print("T1a with t = 1.7 (outside the geometric region)")
print("  pass      ", rep.passed)
print("  reason    ", rep.reason)
print()

# T5c needs two scalars and an indexed 'c' entry.
inst = IdentityInstance(
    "T5c", ps, args, idx=FamilyIndex("c", 1), scalars={"d": 0.3, "r": 0.7}
)
rep = check_identity(inst)
print("T5c at the same point")
print("  residual  ", rep.residual)
print("  pass      ", rep.passed)
