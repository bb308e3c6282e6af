import pytest
from hypothesis import given, strategies as st

from k3chow import dsl
from k3chow.dsl import (BinOp, Call, DSLEvalError, DSLLexError, DSLNameError, DSLRebindError, DSLSyntaxError,
                        DSLTypeError, Let, ListLit, Name, Neg, Num, Pow, Print, Script, TupleLit, parse, render,
                        run_script)


def test_sym_chern_example():
    out = run_script("let V = bundle(rank=3, c=[0, c2, c3]); let S = sym(6, dual(V)); print chern(S, 3);")
    assert len(out) == 1 and out[0]


def test_wtop_example_leading_term():
    out = run_script("let N = wsum((2, sym(8, dual(W))), (3, sym(12, dual(W)))); print wtop(N);")
    assert out[0].endswith("+ 816293376*t^22")
    assert out[0].startswith("1791590400*c2^10*t^2")


def test_syntax_error_column():
    with pytest.raises(DSLSyntaxError) as e:
        parse("print sym(,V);")
    assert (e.value.line, e.value.col) == (1, 11)
    assert "NAME" in e.value.expected and "INT" in e.value.expected


def test_syntax_error_on_later_line():
    with pytest.raises(DSLSyntaxError) as e:
        parse("let a = 1;\nlet b = (a + ;")
    assert (e.value.line, e.value.col) == (2, 14)


def test_lexical_error():
    with pytest.raises(DSLLexError) as e:
        parse("let a = 3 $ 4;")
    assert e.value.col == 11


def test_unknown_identifier():
    with pytest.raises(DSLNameError):
        run_script("print foo + 1;")
    with pytest.raises(DSLNameError):
        run_script("print frobnicate(V);")


def test_arity_mismatch():
    with pytest.raises(DSLTypeError):
        run_script("print sym(V);")


def test_type_mismatch_is_caught_before_evaluation():
    # the first statement would be expensive; the check rejects the script up front
    with pytest.raises(DSLTypeError):
        run_script("let S = sym(40, V); print chern(S, 2) + V;")


def test_missing_keyword():
    with pytest.raises(DSLTypeError):
        run_script("print bundle(rank=2);")


def test_single_assignment():
    with pytest.raises(DSLRebindError):
        run_script("let a = 1; let a = 2;")


def test_error_classes_are_distinct():
    classes = {DSLLexError, DSLSyntaxError, DSLNameError, DSLTypeError, DSLRebindError, DSLEvalError}
    assert len({c.kind for c in classes}) == len(classes)


def test_evaluation_error():
    with pytest.raises(DSLEvalError):
        run_script("print bundle(rank=2, c=[0]);")
    with pytest.raises(DSLEvalError):
        run_script("print H / 0;")


def test_exact_rationals_and_push():
    assert run_script("print 1/2 + 1/3;") == ["5/6"]
    assert run_script("print push(z^2*tau);") == ["1"]
    assert run_script("print push(z^2, z);") == ["1"]


def test_hilbert_and_normal_form():
    out = run_script("print hilbert(3, [H^2, c2, c3, z, tau, t]); print normal_form(H^2 + c2, [H^2]);")
    assert out == ["1 + q + O(q^4)", "c2"]


def test_shadow_predefined_once():
    assert run_script("let V = bundle(rank=1, c=[H]); print rank(V);") == ["1"]


# -- round trip ----------------------------------------------------------

names = st.sampled_from(["a", "b", "H", "c2", "tau", "V", "foo_1"])
funcs = st.sampled_from(["sym", "dual", "chern", "wsum", "f"])


def exprs():
    leaves = st.one_of(st.integers(0, 10 ** 6).map(Num), names.map(Name))

    def extend(children):
        return st.one_of(
            children.map(Neg),
            st.tuples(st.sampled_from("+-*/"), children, children).map(lambda t: BinOp(*t)),
            st.tuples(children, st.integers(0, 30)).map(lambda t: Pow(*t)),
            st.tuples(funcs, st.lists(children, max_size=3).map(tuple),
                      st.lists(st.tuples(st.sampled_from(["rank", "c"]), children), max_size=2).map(tuple))
              .map(lambda t: Call(*t)),
            st.lists(children, min_size=2, max_size=3).map(lambda xs: TupleLit(tuple(xs))),
            st.lists(children, max_size=3).map(lambda xs: ListLit(tuple(xs))),
        )
    return st.recursive(leaves, extend, max_leaves=12)


statements = st.one_of(st.tuples(names, exprs()).map(lambda t: Let(*t)), exprs().map(Print))


@given(st.lists(statements, max_size=5).map(lambda xs: Script(tuple(xs))))
def test_parse_render_round_trip(script):
    text = render(script)
    assert parse(text) == script
    assert render(parse(text)) == text
