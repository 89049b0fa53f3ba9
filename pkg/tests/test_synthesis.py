import json
import random

import pytest
from hypothesis import given, strategies as st

from choicekit import (
    BOTTOM,
    TOP,
    DegreeAssignment,
    UnknownConnectiveError,
    UnobtainableDegreeError,
    builtin_registry,
    characteristic_formula,
    compile_formula,
    degree_witnesses,
    ground_to_degree,
    parse,
    reachable_degrees,
    synthesize,
)
from choicekit.kernel import INF, Atom, vars_of
from oracles import classical_holds, powerset, ref_deg
from strategies import LOGICS, logic_and_formula

R = builtin_registry


class TestReachable:
    def test_pl(self):
        for bound in (1, 2, 4):
            assert reachable_degrees(R("PL"), bound) == {1, INF}

    def test_qcl_prefix(self):
        assert {1, 2, 3, 4, INF} <= reachable_degrees(R("QCL"), 3)

    def test_sccl_prefix(self):
        assert {1, 2, 3, INF} <= reachable_degrees(R("SCCL"), 2)

    @pytest.mark.parametrize("logic", ["PL", *LOGICS])
    def test_monotone(self, logic):
        prev = frozenset()
        for bound in (1, 2, 3):
            cur = reachable_degrees(R(logic), bound)
            assert prev <= cur and {1, INF} <= cur
            prev = cur

    @pytest.mark.parametrize("logic", ["PL", *LOGICS])
    def test_witnesses_realize_their_degree(self, logic):
        reg = R(logic)
        for d, (g, j) in degree_witnesses(reg, 3).items():
            assert compile_formula(reg, g)(j) == d

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            reachable_degrees(R("QCL"), 0)


class TestGround:
    def test_example(self):
        reg = R("QCL")
        out = ground_to_degree(reg, parse(reg, "a |> b"), {"b"})
        assert out == parse(reg, "FALSE |> TRUE")
        for i in powerset({"a", "b", "__top"}):
            assert compile_formula(reg, out)(i) == 2

    def test_atoms(self):
        reg = R("PL")
        assert ground_to_degree(reg, Atom("a"), {"a"}) == TOP
        assert ground_to_degree(reg, Atom("a"), set()) == BOTTOM

    def test_unknown_connective(self):
        with pytest.raises(UnknownConnectiveError):
            ground_to_degree(R("PL"), parse(R("QCL"), "a |> b"), set())


@given(logic_and_formula(max_leaves=8), st.data())
def test_ground_constancy(rf, data):
    reg, g = rf
    j = data.draw(st.sets(st.sampled_from(sorted(vars_of(g)))))
    out = compile_formula(reg, ground_to_degree(reg, g, j))
    target = ref_deg(j, g)
    for i in powerset(vars_of(g) | {"__top", "fresh"}):
        assert out(i) == target


class TestCharacteristic:
    def test_examples(self):
        reg = R("PL")
        assert characteristic_formula({"a"}, {"a", "b"}) == parse(reg, "a & ~b")
        assert characteristic_formula(set(), {"a"}) == parse(reg, "~a")
        assert characteristic_formula({"a", "b"}, {"a", "b"}) == parse(reg, "a & b")
        assert characteristic_formula(set(), set()) == TOP

    def test_not_subset(self):
        with pytest.raises(ValueError):
            characteristic_formula({"c"}, {"a"})

    @given(st.sets(st.sampled_from("abcd")), st.sets(st.sampled_from("abcd")))
    def test_unique_model(self, j, extra):
        v = j | extra
        g = characteristic_formula(j, v)
        models = [i for i in powerset(v) if classical_holds(g, i)]
        assert models == [frozenset(j)]


class TestAssignment:
    def test_json_round_trip(self):
        data = {"variables": ["a", "b"], "table": {"": "inf", "a": 1, "b": 2, "a,b": 1}}
        a = DegreeAssignment.from_json(data)
        assert a({"b", "zz"}) == 2 and a(set()) is INF
        assert a.to_json() == data
        assert DegreeAssignment.from_json(json.dumps(data)) == a

    def test_must_be_total(self):
        with pytest.raises(ValueError):
            DegreeAssignment(("a",), {frozenset(): 1})
        with pytest.raises(ValueError):
            DegreeAssignment(("a",), {frozenset(): 1, frozenset("a"): 1, frozenset("b"): 1})

    def test_degrees_validated(self):
        with pytest.raises((ValueError, TypeError)):
            DegreeAssignment(("a",), {frozenset(): 0, frozenset("a"): 1})


def _check(reg, table, f, rng):
    cf = compile_formula(reg, f)
    v = set(table.variables)
    for i in powerset(v):
        assert cf(i) == table(i)
    for _ in range(3):
        sup = set(v) | {x for x in ("p", "q", "r") if rng.random() < 0.5}
        assert cf(sup) == table(sup)


class TestSynthesize:
    def test_pl_atom(self):
        reg = R("PL")
        t = DegreeAssignment(("a",), {frozenset(): INF, frozenset("a"): 1})
        f = synthesize(reg, t)
        cf = compile_formula(reg, f)
        assert cf(set()) is INF and cf({"a"}) == 1

    def test_qcl_two(self):
        reg = R("QCL")
        t = DegreeAssignment(("a",), {frozenset(): 2, frozenset("a"): 1})
        _check(reg, t, synthesize(reg, t), random.Random(1))

    @pytest.mark.parametrize("logic", ["PL", *LOGICS])
    def test_constant_one(self, logic):
        reg = R(logic)
        t = DegreeAssignment(("a", "b"), {s: 1 for s in powerset("ab")})
        cf = compile_formula(reg, synthesize(reg, t))
        assert all(cf(i) == 1 for i in powerset("ab"))

    def test_unobtainable(self):
        t = DegreeAssignment(("a",), {frozenset(): 2, frozenset("a"): 1})
        with pytest.raises(UnobtainableDegreeError, match="iteration bound"):
            synthesize(R("PL"), t)
        with pytest.raises(UnobtainableDegreeError):
            synthesize(R("QCL"), DegreeAssignment(("a",), {frozenset(): 99, frozenset("a"): 1}), iteration_bound=2)

    def test_explicit_witnesses(self):
        reg = R("QCL")
        w = {3: (parse(reg, "a |> b |> c"), frozenset("c")), INF: (BOTTOM, frozenset())}
        t = DegreeAssignment(("x",), {frozenset(): INF, frozenset("x"): 3})
        cf = compile_formula(reg, synthesize(reg, t, w))
        assert cf({"x"}) == 3 and cf(set()) is INF


@given(st.sampled_from(["PL", *LOGICS]), st.integers(0, 3), st.randoms(use_true_random=False))
def test_random_tables(logic, nv, rng):
    reg = R(logic)
    degrees = sorted(reachable_degrees(reg, 3), key=lambda d: (d is INF, d if d is not INF else 0))
    v = ("a", "b", "c")[:nv]
    t = DegreeAssignment(v, {s: rng.choice(degrees) for s in powerset(v)})
    _check(reg, t, synthesize(reg, t), rng)
