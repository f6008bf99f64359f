"""Seeded verification suite.

Three row groups, always in this order:

1. the six closed-form summation lemmas, each checked exactly (rational
   arithmetic) against :func:`f3sum.f3core.eval_pfq`,
2. the seventeen resummation rules, each on freshly generated instances,
3. the three classical special cases, each run through the rule that covers
   it wholesale.

Instance generation is deterministic: every instance draws from its own
``random.Random`` seeded with a string unique to (seed, row group, index), so
rows never depend on generation order or worker count.

In the float64 backend, rule instances are rejection-sampled until the
family sizes satisfy the balance conditions that keep both the plain series
and all its outer shifts convergent at the suite's small arguments.  In the
rational backend each rule instead gets a terminating recipe: nonpositive
integer entries cut off every series involved, both sides are summed in
full, and a passing row means the two exact values are identical.
"""

from __future__ import annotations

import csv
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import F3Error
from .f3core import ArgumentTriple, eval_pfq
from .identities import (
    IDENTITY_IDS,
    IdentityInstance,
    binomial_1f0,
    check_identity,
    get_rule,
    nearly_poised_3f2,
    saalschutz_3f2,
    twob_balanced_3f2,
    vandermonde_2f1,
    watson_4f3,
)
from .numerics import FLOAT64, RATIONAL, Number, TruncationPolicy
from .params import FAMILIES, FamilyIndex, ParameterSet
from .special import SPECIAL_KINDS, check_special_case, lauricella_fa3, lauricella_fd3, srivastava_ha

LEMMA_NAMES: Tuple[str, ...] = (
    "binomial_1f0",
    "vandermonde_2f1",
    "saalschutz_3f2",
    "nearly_poised_3f2",
    "twob_balanced_3f2",
    "watson_4f3",
)

CSV_COLUMNS: Tuple[str, ...] = (
    "identity_id",
    "instance_index",
    "residual",
    "converged_lhs",
    "converged_rhs",
    "pass",
)


# ---------------------------------------------------------------------------
# Lemma cases.


@dataclass(frozen=True)
class LemmaCase:
    """One terminating hypergeometric sum with its closed-form value."""

    name: str
    order: int
    upper: Tuple[Number, ...]
    lower: Tuple[Number, ...]
    argument: Number
    closed_value: Number


def _seventh(rng: random.Random, lo: int = -20, hi: int = 20) -> Fraction:
    # Denominator 7 keeps every derived parameter combination away from the
    # integers, so Pochhammer poles cannot occur by construction.
    while True:
        p = rng.randrange(lo, hi + 1)
        if p % 7 != 0:
            return Fraction(p, 7)


def lemma_case(name: str, seed: int, index: int, max_order: int = 15) -> LemmaCase:
    """Deterministically generate one valid case for the named lemma.

    Rejection-samples until both the closed form and the series are free of
    poles; the RNG stream is a pure function of (seed, name, index).
    """
    rng = random.Random(f"{seed}:{name}:{index}")
    for _ in range(500):
        n = rng.randrange(0, max_order + 1)
        try:
            if name == "binomial_1f0":
                t = _seventh(rng)
                case = LemmaCase(name, n, (-n,), (), t, binomial_1f0(-n, t))
            elif name == "vandermonde_2f1":
                a, c = _seventh(rng), _seventh(rng)
                case = LemmaCase(name, n, (-n, a), (c,), 1, vandermonde_2f1(n, a, c))
            elif name == "saalschutz_3f2":
                a, b, c = _seventh(rng), _seventh(rng), _seventh(rng)
                case = LemmaCase(
                    name, n, (-n, a, b), (c, 1 + a + b - c - n), 1,
                    saalschutz_3f2(n, a, b, c),
                )
            elif name == "nearly_poised_3f2":
                a, b = _seventh(rng), _seventh(rng)
                half_a = Fraction(a, 2)
                case = LemmaCase(
                    name, n, (-n, a, 1 + half_a), (half_a, b), 1,
                    nearly_poised_3f2(n, a, b),
                )
            elif name == "twob_balanced_3f2":
                a, b = _seventh(rng), _seventh(rng)
                case = LemmaCase(
                    name, n, (-n, a, b), (1 + a - b, 1 + 2 * b - n), 1,
                    twob_balanced_3f2(n, a, b),
                )
            elif name == "watson_4f3":
                a, b = _seventh(rng), _seventh(rng)
                half_a = Fraction(a, 2)
                case = LemmaCase(
                    name, n, (-n, a, 1 + half_a, b),
                    (half_a, 1 + a - b, 1 + 2 * b - n), 1,
                    watson_4f3(n, a, b),
                )
            else:
                raise ValueError(f"unknown lemma {name!r}")
            # The series must be summable in full as well.
            eval_pfq(case.upper, case.lower, case.argument)
            return case
        except (F3Error, ZeroDivisionError):
            continue
    raise RuntimeError(f"could not generate a valid case for {name} (seed={seed}, index={index})")


# ---------------------------------------------------------------------------
# Float64 rule instances: balanced random families.

_DIR_UP = (("a", "b", "bpp", "c"), ("a", "b", "bp", "cp"), ("a", "bp", "bpp", "cpp"))
_DIR_DOWN = (("e", "g", "gpp", "h"), ("e", "g", "gp", "hp"), ("e", "gp", "gpp", "hpp"))
_PAIR_UP = (("a", "b"), ("a", "bp"), ("a", "bpp"))
_PAIR_DOWN = (("e", "g"), ("e", "gp"), ("e", "gpp"))


def _balanced(lengths: Dict[str, int]) -> bool:
    """Family-size conditions keeping every series in a check convergent.

    Per direction the upstairs order may exceed the downstairs by at most
    one (the factorial supplies the last power).  The pair conditions bound
    the growth that outer k-shifts inject into the two other directions."""
    for up, down in zip(_DIR_UP, _DIR_DOWN):
        if sum(lengths[f] for f in up) > sum(lengths[f] for f in down) + 1:
            return False
    for up, down in zip(_PAIR_UP, _PAIR_DOWN):
        if sum(lengths[f] for f in up) > sum(lengths[f] for f in down) + 1:
            return False
    return True


def random_instance(identity_id: str, seed: int, index: int) -> IdentityInstance:
    """Seeded float64 instance for one rule: balanced family sizes, entries
    in [0.3, 2.5], arguments within 0.05, free scalars in mild ranges."""
    rule = get_rule(identity_id)
    rng = random.Random(f"{seed}:{identity_id}:{index}")

    while True:
        lengths = {f: rng.choice((0, 1, 2)) for f in FAMILIES}
        if rule.indexed_family is not None:
            lengths[rule.indexed_family] = rng.choice((1, 2))
        if _balanced(lengths):
            break

    fields = {
        f: tuple(rng.uniform(0.3, 2.5) for _ in range(lengths[f])) for f in FAMILIES
    }
    ps = ParameterSet(**fields)
    x1, x2, x3 = (rng.uniform(-0.05, 0.05) for _ in range(3))
    args = ArgumentTriple(x1, x2, x3)

    scalars: Dict[str, Number] = {}
    for name in sorted(rule.scalar_names):
        if name == "t":
            if identity_id == "T9c":
                # the rescaled argument carries 1/t, keep t away from 0
                magnitude = rng.uniform(0.05, 0.2)
                scalars["t"] = magnitude if rng.random() < 0.5 else -magnitude
            elif identity_id == "T10c":
                t = rng.uniform(-0.2, 0.2)
                while abs(t + x1) < 0.02:
                    t = rng.uniform(-0.2, 0.2)
                scalars["t"] = t
            else:
                scalars["t"] = rng.uniform(-0.2, 0.2)
        else:
            scalars[name] = rng.choice((0.3, 0.7, 1.4))

    idx = None
    if rule.indexed_family is not None:
        idx = FamilyIndex(
            rule.indexed_family,
            rng.randrange(1, lengths[rule.indexed_family] + 1),
        )
    return IdentityInstance(identity_id, ps, args, idx=idx, scalars=scalars)


# ---------------------------------------------------------------------------
# Rational rule instances: terminating recipes.


def _pos_seventh(rng: random.Random) -> Fraction:
    return _seventh(rng, 1, 20)


def _signed_seventh(rng: random.Random) -> Fraction:
    return _seventh(rng, -20, 20)


def _third(rng: random.Random) -> Fraction:
    # Denominator 3 for the free scalars: sums with denominator-7 entries
    # (and their halves) can never be integers, so no derived downstairs
    # parameter lands on a pole.
    return Fraction(rng.choice((1, 2, 4, 5)), 3)


def _small_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.choice((-4, -3, -2, -1, 1, 2, 3, 4)), 9)


def _rational_args(rng: random.Random) -> ArgumentTriple:
    return ArgumentTriple(_small_rational(rng), _small_rational(rng), _small_rational(rng))


def exact_instance(identity_id: str, seed: int, index: int) -> IdentityInstance:
    """Seeded rational instance for one rule, built so that the outer sum
    and every series on both sides terminate.

    Terminating entries (-n on the indexed entry, -1 markers on the single
    index families) bound all three lattice directions at every outer k and
    keep the binomial prefactors at integer powers; all other entries are
    sevenths, all free scalars thirds, so no downstairs parameter produced by
    a rewrite can be an integer.  Both sides are then exact sums and a
    correct rule gives a residual of exactly zero.
    """
    rng = random.Random(f"{seed}:{identity_id}:exact:{index}")
    n = rng.randrange(1, 7)
    args = _rational_args(rng)

    if identity_id == "T1a":
        ps = ParameterSet(a=(-n,), c=(_pos_seventh(rng),), h=(1 + _pos_seventh(rng),))
        return IdentityInstance(identity_id, ps, args, idx=FamilyIndex("a", 1),
                                scalars={"t": _signed_seventh(rng)})
    if identity_id == "T1b":
        ps = ParameterSet(b=(-n,), cpp=(-1,), h=(1 + _pos_seventh(rng),))
        return IdentityInstance(identity_id, ps, args, idx=FamilyIndex("b", 1),
                                scalars={"t": _signed_seventh(rng)})
    if identity_id == "T1c":
        ps = ParameterSet(c=(-n,), cp=(-1,), cpp=(-1,), e=(1 + _pos_seventh(rng),))
        return IdentityInstance(identity_id, ps, args, idx=FamilyIndex("c", 1),
                                scalars={"t": _signed_seventh(rng)})

    if identity_id in ("T2x1", "T2x2", "T2x3"):
        extra_up = {"T2x1": "b", "T2x2": "bp", "T2x3": "bpp"}[identity_id]
        extra_down = {"T2x1": "h", "T2x2": "hp", "T2x3": "hpp"}[identity_id]
        fields = {"c": (-1,), "cp": (-1,), "cpp": (-1,)}
        fields[extra_up] = (_pos_seventh(rng),)
        fields[extra_down] = (1 + _pos_seventh(rng),)
        return IdentityInstance(identity_id, ParameterSet(**fields), args,
                                scalars={"t": _signed_seventh(rng)})

    # The x1-series rules share one terminating frame: -1 markers in the
    # three single-index upstairs families bound the lattice and cut the
    # outer weight off at k = 1.
    v = _pos_seventh(rng)
    rule = get_rule(identity_id)
    base = {"cp": (-1,), "cpp": (-1,), "h": (1 + _pos_seventh(rng),)}
    if identity_id in ("T9c", "T10c"):
        base["c"] = (-n, -1)
        idx = FamilyIndex("c", 1)
        t = _signed_seventh(rng)
        if identity_id == "T9c":
            x1 = _small_rational(rng)
        else:
            # denominator 5 makes t + x1 structurally nonzero against the
            # sevenths in t
            x1 = Fraction(rng.choice((-4, -3, -2, -1, 1, 2, 3, 4)), 5)
        ps = ParameterSet(**base)
        triple = ArgumentTriple(x1, args.x2, args.x3)
        return IdentityInstance(identity_id, ps, triple, idx=idx, scalars={"t": t})

    if rule.indexed_family == "a":
        base["a"] = (v,)
        base["c"] = (-1,)
        idx = FamilyIndex("a", 1)
    else:
        base["c"] = (v, -1)
        idx = FamilyIndex("c", 1)
    ps = ParameterSet(**base)
    scalars = {name: _third(rng) for name in sorted(rule.scalar_names)}
    return IdentityInstance(identity_id, ps, args, idx=idx, scalars=scalars)


# ---------------------------------------------------------------------------
# Special-case tuples.


def special_case_inputs(
    kind: str, seed: int, index: int, backend: str = FLOAT64
) -> Tuple[ParameterSet, ArgumentTriple, Number]:
    """Seeded inputs (embedded parameter set, arguments, t) for one classical
    function.  The rational backend substitutes terminating upper parameters
    so the check is exact."""
    rng = random.Random(f"{seed}:{kind}:{index}")
    if backend == FLOAT64:
        def val() -> float:
            return rng.uniform(0.3, 2.5)

        if kind == "fa3":
            ps = lauricella_fa3(val(), val(), val(), val(), val(), val(), val())
        elif kind == "fd3":
            ps = lauricella_fd3(val(), val(), val(), val(), val())
        elif kind == "ha":
            ps = srivastava_ha(val(), val(), val(), val(), val())
        else:
            raise ValueError(f"unknown special case {kind!r}")
        # these layouts put two numerator families against one denominator
        # family per direction, so shells decay only through |x| itself;
        # keep the draw small enough to settle within the default degree cap
        args = ArgumentTriple(*(rng.uniform(-0.03, 0.03) for _ in range(3)))
        return ps, args, rng.uniform(-0.15, 0.15)

    n = rng.randrange(1, 7)
    if kind == "fa3":
        ps = lauricella_fa3(
            -n, _pos_seventh(rng), _pos_seventh(rng), _pos_seventh(rng),
            1 + _pos_seventh(rng), 1 + _pos_seventh(rng), 1 + _pos_seventh(rng),
        )
    elif kind == "fd3":
        ps = lauricella_fd3(
            -n, _pos_seventh(rng), _pos_seventh(rng), _pos_seventh(rng),
            1 + _pos_seventh(rng),
        )
    elif kind == "ha":
        m = rng.randrange(1, 7)
        ps = srivastava_ha(
            -n, -m, _pos_seventh(rng),
            1 + _pos_seventh(rng), 1 + _pos_seventh(rng),
        )
    else:
        raise ValueError(f"unknown special case {kind!r}")
    return ps, _rational_args(rng), _signed_seventh(rng)


# ---------------------------------------------------------------------------
# Suite runner.


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    instances: int = 5
    backend: str = FLOAT64
    residual_tol: float = 1e-8
    outer_cap: int = 40
    jobs: int = 1
    policy: Optional[TruncationPolicy] = None

    def series_policy(self) -> TruncationPolicy:
        if self.policy is not None:
            return self.policy
        return TruncationPolicy(tol=max(self.residual_tol * 1e-4, 1e-15))


def _lemma_row(config: SuiteConfig, name: str, index: int) -> Dict[str, object]:
    case = lemma_case(name, config.seed, index)
    series = eval_pfq(case.upper, case.lower, case.argument)
    exact_match = series.converged and series.value == case.closed_value
    ref = abs(case.closed_value)
    residual = float(abs(series.value - case.closed_value) / (ref if ref else 1))
    return {
        "identity_id": name,
        "instance_index": index,
        "residual": residual,
        "converged_lhs": series.converged,
        "converged_rhs": True,
        "pass": exact_match,
    }


def _report_row(rid: str, index: int, report, exact: bool) -> Dict[str, object]:
    passed = report.passed
    if exact:
        passed = passed and report.residual == 0.0
    return {
        "identity_id": rid,
        "instance_index": index,
        "residual": report.residual,
        "converged_lhs": report.converged_lhs,
        "converged_rhs": report.converged_rhs,
        "pass": passed,
    }


def _identity_row(config: SuiteConfig, rid: str, index: int) -> Dict[str, object]:
    exact = config.backend == RATIONAL
    if exact:
        inst = exact_instance(rid, config.seed, index)
    else:
        inst = random_instance(rid, config.seed, index)
    report = check_identity(
        inst,
        policy=config.series_policy(),
        residual_tol=config.residual_tol,
        outer_cap=config.outer_cap,
    )
    return _report_row(rid, index, report, exact)


def _special_row(config: SuiteConfig, kind: str, index: int) -> Dict[str, object]:
    exact = config.backend == RATIONAL
    ps, args, t = special_case_inputs(kind, config.seed, index, config.backend)
    report = check_special_case(
        kind, ps, args, t,
        policy=config.series_policy(),
        residual_tol=config.residual_tol,
        outer_cap=config.outer_cap,
    )
    return _report_row(kind, index, report, exact)


def run_suite(config: SuiteConfig) -> Tuple[Dict[str, object], List[Dict[str, object]]]:
    """Run all row groups; returns (summary, rows).

    Row order is fixed regardless of worker count: tasks are enumerated up
    front and results collected by position.
    """
    tasks: List[Tuple[str, Callable[[], Dict[str, object]]]] = []
    for name in LEMMA_NAMES:
        for i in range(config.instances):
            tasks.append(("lemmas", lambda name=name, i=i: _lemma_row(config, name, i)))
    for rid in IDENTITY_IDS:
        for i in range(config.instances):
            tasks.append(("identities", lambda rid=rid, i=i: _identity_row(config, rid, i)))
    for kind in SPECIAL_KINDS:
        for i in range(config.instances):
            tasks.append(("special_cases", lambda kind=kind, i=i: _special_row(config, kind, i)))

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(lambda task: task[1](), tasks))
    else:
        results = [run() for _, run in tasks]

    sections: Dict[str, Dict[str, int]] = {}
    for (section, _), row in zip(tasks, results):
        stats = sections.setdefault(section, {"rows": 0, "passed": 0})
        stats["rows"] += 1
        stats["passed"] += bool(row["pass"])
    passed = sum(1 for row in results if row["pass"])
    summary = {
        "backend": config.backend,
        "seed": config.seed,
        "instances_per_group": config.instances,
        "residual_tol": config.residual_tol,
        "rows": len(results),
        "passed": passed,
        "failed": len(results) - passed,
        "sections": sections,
        "all_pass": passed == len(results),
    }
    return summary, results


def write_rows_csv(rows: Sequence[Dict[str, object]], path: str) -> None:
    """Write suite rows with the fixed column set; booleans lowercase, a
    missing residual empty, so identical rows give identical bytes."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(row[c]) for c in CSV_COLUMNS])


def _format_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)
