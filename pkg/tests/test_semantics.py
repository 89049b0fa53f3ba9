import pytest
from hypothesis import given, strategies as st

from choicekit import (
    BOTTOM,
    TOP,
    ConnectiveSpec,
    builtin_registry,
    compile_formula,
    degree,
    optionality,
    parse,
)
from choicekit.connectives import BoundViolationError
from choicekit.kernel import INF, Atom, Choice, Neg, size_of, vars_of
from oracles import classical_holds, powerset, ref_deg, ref_opt
from strategies import logic_and_formula

R = builtin_registry

# rows: {}, {a}, {b}, {a,b}; columns a&b, a|b, a|>b, a&>b, a@>b, a*>b
TABLE_ONE = {
    frozenset(): [INF, INF, INF, INF, INF, INF],
    frozenset("a"): [INF, 1, 1, 2, 2, 2],
    frozenset("b"): [INF, 1, 2, INF, 3, INF],
    frozenset("ab"): [1, 1, 1, 1, 1, 1],
}
COLUMNS = [
    ("PL", "a & b"),
    ("PL", "a | b"),
    ("QCL", "a |> b"),
    ("CCL", "a &> b"),
    ("LCL", "a @> b"),
    ("SCCL", "a *> b"),
]


@pytest.mark.parametrize("col", range(6))
@pytest.mark.parametrize("row", list(TABLE_ONE), ids=lambda r: "{" + ",".join(sorted(r)) + "}")
def test_two_variable_table(row, col):
    logic, text = COLUMNS[col]
    assert degree(R(logic), row, parse(R(logic), text)) == TABLE_ONE[row][col]


class TestOptionality:
    def test_left_nested_qcl(self):
        assert optionality(R("QCL"), parse(R("QCL"), "(a |> b) |> c")) == 3

    def test_lcl_chain(self):
        assert optionality(R("LCL"), parse(R("LCL"), "a @> (b @> c)")) == 7

    @pytest.mark.parametrize("logic", ["QCL", "CCL", "LCL", "SCCL"])
    def test_negation_and_classical(self, logic):
        tok = {"QCL": "|>", "CCL": "&>", "LCL": "@>", "SCCL": "*>"}[logic]
        assert optionality(R(logic), parse(R(logic), f"~(a {tok} b)")) == 1
        assert optionality(R(logic), parse(R(logic), "a & b")) == 1


class TestDegree:
    def test_examples(self):
        assert degree(R("QCL"), {"b"}, parse(R("QCL"), "a |> b")) == 2
        assert degree(R("CCL"), {"b"}, parse(R("CCL"), "a &> b")) is INF
        assert degree(R("LCL"), {"a", "c"}, parse(R("LCL"), "a @> (b @> c)")) == 3

    def test_sccl_grouping_matters(self):
        S = R("SCCL")
        ab = {"a", "b"}
        assert degree(S, ab, Choice("simple_conjunction", Atom("a"), parse(S, "b *> c"))) == 1
        assert degree(S, ab, parse(S, "(a *> b) *> c")) == 2

    @pytest.mark.parametrize("interp", [set(), {"a"}, {"__top"}, {"x", "y"}])
    def test_top_bottom(self, interp):
        for logic in ("PL", "QCL", "LCL"):
            assert degree(R(logic), interp, TOP) == 1
            assert degree(R(logic), interp, BOTTOM) is INF
        assert degree(R("PL"), set(), parse(R("PL"), "a | ~a")) == 1
        assert degree(R("PL"), {"a"}, parse(R("PL"), "a & ~a")) is INF

    def test_compiled_is_callable(self):
        cf = compile_formula(R("QCL"), parse(R("QCL"), "a |> b"))
        assert cf({"b"}) == cf.degree({"b"}) == 2
        assert cf.optionality == 2

    def test_long_chain_is_fast(self):
        reg = R("QCL")
        f = Atom("x0")
        for i in range(1, 3000):
            f = Choice("ordered_disjunction", Atom(f"x{i}"), f)
        cf = compile_formula(reg, f)
        assert cf.optionality == 3000
        assert cf({"x0"}) == 3000

    def test_user_spec_bound_checked_at_evaluation(self):
        bad = ConnectiveSpec("bad", "^>", lambda k, l: 1, lambda k, l, m, n: 3)
        reg = R("PL").extend("BAD", bad)
        f = parse(reg, "a ^> b")
        with pytest.raises(BoundViolationError):
            degree(reg, {"a"}, f)


@given(logic_and_formula())
def test_matches_reference(rf):
    reg, f = rf
    cf = compile_formula(reg, f)
    assert cf.optionality == ref_opt(f)
    for i in powerset(vars_of(f)):
        assert cf(i) == ref_deg(i, f)


@given(logic_and_formula())
def test_boundedness(rf):
    reg, f = rf
    cf = compile_formula(reg, f)
    for i in powerset(vars_of(f)):
        d = cf(i)
        assert d is INF or 1 <= d <= cf.optionality


@given(logic_and_formula(), st.sets(st.sampled_from(["a", "b", "c", "d", "e", "f"])))
def test_irrelevance(rf, interp):
    reg, f = rf
    cf = compile_formula(reg, f)
    assert cf(interp) == cf(frozenset(interp) & vars_of(f))


@given(logic_and_formula())
def test_size_bound(rf):
    reg, f = rf
    assert optionality(reg, f) < 2 ** (size_of(f) ** 2)


@given(logic_and_formula(), st.sets(st.sampled_from(["a", "b", "c", "d"])))
def test_negation_neutralizes(rf, interp):
    reg, f = rf
    assert degree(reg, interp, Neg(f)) in (1, INF)


@given(logic_and_formula().map(lambda rf: rf[1]).filter(lambda f: "Choice" not in repr(f)))
def test_classical_agreement(f):
    cf = compile_formula(R("PL"), f)
    for i in powerset(vars_of(f)):
        assert cf(i) == (1 if classical_holds(f, i) else INF)


@given(logic_and_formula())
def test_flat_program_matches_closures(rf):
    import choicekit.semantics as sem

    reg, f = rf
    closures = compile_formula(reg, f)
    saved = sem.CLOSURE_DEPTH
    sem.CLOSURE_DEPTH = 0
    try:
        flat = compile_formula(reg, f)
    finally:
        sem.CLOSURE_DEPTH = saved
    assert flat.optionality == closures.optionality
    for i in powerset(vars_of(f)):
        assert flat(i) == closures(i)
