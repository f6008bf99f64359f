"""Tests for the resummation rule registry and the two-sided identity checker."""

from fractions import Fraction

import pytest

from f3sum import (
    ArgumentTriple,
    CheckReport,
    FamilyIndex,
    IDENTITY_IDS,
    IdentityInstance,
    InvalidInstanceError,
    ParameterSet,
    TruncationPolicy,
    check_identity,
    dd_weight,
    get_rule,
    instance_from_json,
    instance_to_json,
    list_identities,
    pochhammer,
    validate_instance,
)

TIGHT = TruncationPolicy(tol=1e-13, max_total_degree=34, stall_window=3)

DENSE = dict(
    a=(1.1,), b=(0.7,), bp=(0.9,), bpp=(1.3,),
    c=(0.8,), cp=(1.7,), cpp=(0.6,),
    e=(1.9,), g=(1.2,), gp=(0.5,), gpp=(2.1,),
    h=(1.4,), hp=(0.95,), hpp=(1.6,),
)
DENSE_ARGS = ArgumentTriple(0.03, -0.02, 0.025)

SCALARS = {"t": 0.11, "r": 0.7, "d": 0.3}


def dense_instance(identity_id):
    rule = get_rule(identity_id)
    idx = None
    if rule.indexed_family is not None:
        idx = FamilyIndex(rule.indexed_family, 1)
    scalars = {name: SCALARS[name] for name in rule.scalar_names}
    return IdentityInstance(
        identity_id=identity_id,
        ps=ParameterSet(**DENSE),
        args=DENSE_ARGS,
        idx=idx,
        scalars=scalars,
    )


class TestRegistry:
    def test_canonical_order(self):
        assert IDENTITY_IDS == (
            "T1a", "T1b", "T1c",
            "T2x1", "T2x2", "T2x3",
            "T3a", "T3c",
            "T4a", "T4c",
            "T5c",
            "T6a", "T6c",
            "T7c",
            "T8c",
            "T9c", "T10c",
        )

    def test_get_rule_unknown(self):
        with pytest.raises(InvalidInstanceError):
            get_rule("T99")

    def test_list_identities(self):
        rows = list_identities()
        assert [r["id"] for r in rows] == list(IDENTITY_IDS)
        assert all(r["summary"] for r in rows)

    @pytest.mark.parametrize("rid", IDENTITY_IDS)
    def test_indexed_family_layout(self, rid):
        rule = get_rule(rid)
        if rid.startswith("T2"):
            assert rule.indexed_family is None
        elif rid.endswith("a"):
            assert rule.indexed_family == "a"
        elif rid == "T1b":
            assert rule.indexed_family == "b"
        else:
            assert rule.indexed_family == "c"


class TestDdWeight:
    def test_zero_order(self):
        assert dd_weight(0, Fraction(1, 3)) == 1
        assert dd_weight(0, 0) == 1

    @pytest.mark.parametrize("k", range(1, 7))
    def test_matches_ratio_form(self, k):
        # equals (d)_k (1 + d/2)_k / (d/2)_k wherever that form is defined
        d = Fraction(2, 7)
        want = (
            pochhammer(d, k) * pochhammer(1 + d / 2, k) / pochhammer(d / 2, k)
        )
        assert dd_weight(k, d) == want

    @pytest.mark.parametrize("k", range(1, 5))
    def test_defined_at_zero_d(self, k):
        # the ratio form is 0/0 here; the product form gives the limit 2*k!
        assert dd_weight(k, 0) == 2 * pochhammer(1, k)


class TestInstanceValidation:
    def test_missing_scalar(self):
        inst = dense_instance("T1a")
        bad = IdentityInstance("T1a", inst.ps, inst.args, idx=inst.idx, scalars={})
        with pytest.raises(InvalidInstanceError):
            validate_instance(bad)

    def test_extra_scalar(self):
        inst = dense_instance("T3c")
        bad = IdentityInstance(
            "T3c", inst.ps, inst.args, idx=inst.idx,
            scalars={"r": 0.5, "t": 0.1},
        )
        with pytest.raises(InvalidInstanceError):
            validate_instance(bad)

    def test_wrong_indexed_family(self):
        inst = dense_instance("T1a")
        bad = IdentityInstance(
            "T1a", inst.ps, inst.args,
            idx=FamilyIndex("c", 1), scalars={"t": 0.1},
        )
        with pytest.raises(InvalidInstanceError):
            validate_instance(bad)

    def test_index_required(self):
        inst = dense_instance("T1a")
        with pytest.raises(InvalidInstanceError):
            validate_instance(
                IdentityInstance("T1a", inst.ps, inst.args, scalars={"t": 0.1})
            )

    def test_index_forbidden(self):
        inst = dense_instance("T2x1")
        bad = IdentityInstance(
            "T2x1", inst.ps, inst.args,
            idx=FamilyIndex("a", 1), scalars={"t": 0.1},
        )
        with pytest.raises(InvalidInstanceError):
            validate_instance(bad)

    def test_geometric_scalar_at_one(self):
        inst = dense_instance("T1a")
        bad = IdentityInstance(
            "T1a", inst.ps, inst.args, idx=inst.idx, scalars={"t": 1.0}
        )
        with pytest.raises(InvalidInstanceError):
            validate_instance(bad)

    def test_even_negative_d_rejected(self):
        inst = dense_instance("T6c")
        bad = IdentityInstance(
            "T6c", inst.ps, inst.args, idx=inst.idx, scalars={"d": -2.0}
        )
        with pytest.raises(InvalidInstanceError):
            validate_instance(bad)

    def test_t9c_needs_zero_argument_with_zero_t(self):
        inst = dense_instance("T9c")
        bad = IdentityInstance(
            "T9c", inst.ps, inst.args, idx=inst.idx, scalars={"t": 0.0}
        )
        with pytest.raises(InvalidInstanceError):
            validate_instance(bad)

    def test_t10c_unit_argument_rejected(self):
        inst = dense_instance("T10c")
        ps = inst.ps
        bad = IdentityInstance(
            "T10c", ps, ArgumentTriple(1.0, 0.01, 0.01),
            idx=inst.idx, scalars={"t": 0.2},
        )
        with pytest.raises(InvalidInstanceError):
            validate_instance(bad)

    def test_valid_instance_returns_rule(self):
        rule = validate_instance(dense_instance("T5c"))
        assert rule.identity_id == "T5c"


class TestGuards:
    def test_geometric_guard_is_soft(self):
        inst = dense_instance("T1a")
        big_t = IdentityInstance(
            "T1a", inst.ps, inst.args, idx=inst.idx, scalars={"t": 1.7}
        )
        rep = check_identity(big_t)
        assert not rep.passed
        assert rep.reason is not None
        assert "1.7" in rep.reason

    def test_t10c_ratio_guard(self):
        inst = dense_instance("T10c")
        # |t + x1| / |x1 - 1| >= 1 makes the outer sum a divergent series
        rep = check_identity(
            IdentityInstance(
                "T10c", inst.ps, ArgumentTriple(0.03, -0.02, 0.025),
                idx=inst.idx, scalars={"t": 1.2},
            )
        )
        assert not rep.passed
        assert rep.reason is not None


class TestDenseInstances:
    @pytest.mark.parametrize("rid", IDENTITY_IDS)
    def test_dense_float_instance_passes(self, rid):
        rep = check_identity(dense_instance(rid), policy=TIGHT, residual_tol=1e-10)
        assert rep.passed, rep
        assert rep.residual <= 5e-13
        assert rep.converged_lhs and rep.converged_rhs

    @pytest.mark.parametrize("rid", IDENTITY_IDS)
    def test_report_json_shape(self, rid):
        rep = check_identity(dense_instance(rid), policy=TIGHT)
        data = rep.to_json_dict()
        assert data["identity_id"] == rid
        assert set(data) == {
            "identity_id", "pass", "lhs", "rhs", "residual",
            "converged_lhs", "converged_rhs", "reason",
        }


def collapse_scalars(rule):
    """Scalar values that collapse the outer sum to its k = 0 term."""
    return {name: 0.0 for name in rule.scalar_names}


class TestDegenerateCollapse:
    @pytest.mark.parametrize("rid", IDENTITY_IDS)
    def test_zero_scalars_collapse_to_equality(self, rid):
        rule = get_rule(rid)
        ps = ParameterSet(**DENSE)
        args = DENSE_ARGS
        if rid in ("T9c", "T10c"):
            # zero geometric scalar forces a zero first argument too
            args = ArgumentTriple(0.0, -0.02, 0.025)
        idx = None
        if rule.indexed_family is not None:
            idx = FamilyIndex(rule.indexed_family, 1)
        inst = IdentityInstance(rid, ps, args, idx=idx, scalars=collapse_scalars(rule))
        rep = check_identity(inst, policy=TIGHT, residual_tol=1e-13)
        assert rep.passed, rep
        assert rep.residual <= 1e-13


class TestExactInstances:
    def test_terminating_rational_t1c(self):
        ps = ParameterSet(
            c=(-3, Fraction(2, 7)), cp=(-1,), cpp=(-1,),
            e=(Fraction(9, 7),),
        )
        inst = IdentityInstance(
            "T1c", ps,
            ArgumentTriple(Fraction(1, 3), Fraction(-1, 4), Fraction(1, 5)),
            idx=FamilyIndex("c", 1),
            scalars={"t": Fraction(2, 7)},
        )
        rep = check_identity(inst)
        assert rep.passed
        assert rep.residual == 0
        assert rep.lhs_diag.terminated_exactly
        assert rep.rhs_diag.terminated_exactly

    def test_terminating_rational_t5c(self):
        ps = ParameterSet(
            c=(Fraction(3, 7), -1), cp=(-1,), cpp=(-1,),
            h=(Fraction(10, 7),),
        )
        inst = IdentityInstance(
            "T5c", ps,
            ArgumentTriple(Fraction(2, 9), Fraction(-1, 9), Fraction(1, 9)),
            idx=FamilyIndex("c", 1),
            scalars={"d": Fraction(1, 3), "r": Fraction(2, 3)},
        )
        rep = check_identity(inst)
        assert rep.passed
        assert rep.residual == 0


class TestPoleShortCircuit:
    def test_zero_weight_skips_inner_evaluation(self):
        # the indexed entry -2 kills every outer term past k = 2; those
        # dropped terms would otherwise hit the h pole at order 4
        ps = ParameterSet(
            c=(-2, -1), cp=(-1,), cpp=(-1,), h=(Fraction(-7, 2),),
        )
        inst = IdentityInstance(
            "T3c", ps,
            ArgumentTriple(Fraction(1, 5), Fraction(1, 7), Fraction(-1, 7)),
            idx=FamilyIndex("c", 1),
            scalars={"r": Fraction(1, 3)},
        )
        rep = check_identity(inst)
        assert rep.converged_lhs


class TestInstanceJson:
    @pytest.mark.parametrize("rid", ["T1a", "T2x2", "T5c", "T10c"])
    def test_round_trip(self, rid):
        inst = dense_instance(rid)
        data = instance_to_json(inst)
        back = instance_from_json(data, backend="float64")
        assert back == inst

    def test_rational_round_trip(self):
        ps = ParameterSet(c=(-3, Fraction(2, 7)), cp=(-1,), e=(Fraction(9, 7),))
        inst = IdentityInstance(
            "T3c", ps, ArgumentTriple(Fraction(1, 3), 0, 0),
            idx=FamilyIndex("c", 1), scalars={"r": Fraction(1, 3)},
        )
        back = instance_from_json(instance_to_json(inst), backend="rational")
        assert back == inst

    def test_unknown_id(self):
        with pytest.raises(InvalidInstanceError):
            instance_from_json(
                {"id": "T0", "params": {}, "args": [0, 0, 0]}, backend="float64"
            )


class TestCheckReportSemantics:
    def test_eval_exception_becomes_failed_report(self):
        # h = -1 poles the inner series on the very first shell
        ps = ParameterSet(**{**DENSE, "h": (-1.0,)})
        inst = IdentityInstance(
            "T1a", ps, DENSE_ARGS,
            idx=FamilyIndex("a", 1), scalars={"t": 0.11},
        )
        rep = check_identity(inst)
        assert isinstance(rep, CheckReport)
        assert not rep.passed
        assert "DenominatorPoleError" in rep.reason

    def test_not_converged_is_not_a_pass(self):
        inst = dense_instance("T1a")
        rep = check_identity(
            inst,
            policy=TruncationPolicy(tol=1e-300, max_total_degree=6, stall_window=2),
        )
        assert not rep.passed
        assert not (rep.converged_lhs and rep.converged_rhs)
