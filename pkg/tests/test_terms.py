import random

import pytest
from hypothesis import given, strategies as st

from htlg import generators
from htlg.terms import (EPS, ST, App, IllTyped, TermSyntaxError, Word, alpha_eq, annotate, arrow,
                        beta_step, equivalent, eta_step, linearity_violations, normal_form,
                        parse_term, show, string_canon, type_of)


def test_type_of_basic_terms():
    assert type_of(EPS) == ST
    assert type_of(parse_term(r"\z.z+sleeps")) == arrow(ST, ST)
    with pytest.raises(IllTyped):
        type_of(App(Word("a"), Word("b")))


def test_linearity_violations():
    assert linearity_violations(parse_term(r"\P.P everyone")) == []
    assert linearity_violations(parse_term(r"\x.x+x")) == [("x", 2)]
    assert linearity_violations(parse_term(r"\x.everyone")) == [("x", 0)]


def test_beta_step_and_normal_form():
    t = parse_term(r"(\P.P everyone)(\z.z+sleeps)")
    assert show(beta_step(t)) == r"(\z.z+sleeps) everyone"
    assert show(normal_form(t)) == "everyone+sleeps"
    assert show(beta_step(parse_term(r"(\z.z+sleeps) everyone"))) == "everyone+sleeps"
    assert beta_step(parse_term("everyone+sleeps")) is None
    assert show(normal_form(parse_term(r"(\x.x)(\y.y+eps)"))) == r"\y.y+eps"


def test_eta_step():
    f_env = {"f": arrow(ST, ST)}
    assert show(eta_step(parse_term(r"\x.f x", env=f_env))) == "f"
    assert eta_step(parse_term(r"\x.x+a")) is None
    g_env = {"g": arrow(ST, ST, ST)}
    t = parse_term(r"\x.(g a) x", env=g_env)
    reduced = eta_step(t)
    assert show(reduced) == "g a"
    assert type_of(reduced, g_env) == type_of(t, g_env)


def test_alpha_equality():
    assert alpha_eq(parse_term(r"\x.x+a"), parse_term(r"\y.y+a"))
    assert not alpha_eq(parse_term(r"\x.x+a"), parse_term(r"\x.a+x"))
    assert alpha_eq(parse_term("everyone+sleeps"), parse_term("everyone+sleeps"))


def test_string_canon_flattens_and_erases_eps():
    assert show(string_canon(parse_term("a+(b+eps)+(c+d)"))) == "a+b+c+d"
    assert not equivalent(parse_term("a+b"), parse_term("b+a"))


def test_annotate_infers_binder_types():
    t = annotate(parse_term(r"\Q.\P.\y.(P eps)+and+(Q y)"))
    assert type_of(t) == arrow(arrow(ST, ST), arrow(ST, ST), ST, ST)


def test_syntax_errors():
    with pytest.raises(TermSyntaxError):
        parse_term(r"\x.")
    with pytest.raises(TermSyntaxError):
        parse_term("(a+b")


seeds = st.integers(min_value=0, max_value=10 ** 6)


@given(seeds)
def test_show_parse_round_trip_on_proof_terms(seed):
    p = generators.random_nd_proof(random.Random(seed))
    j = p.conclusion
    t = j.term
    assert alpha_eq(parse_term(show(t, types=True), env=j.env()), t)


@given(seeds)
def test_normal_form_is_idempotent_and_type_preserving(seed):
    p = generators.random_nd_proof(random.Random(seed))
    env = p.conclusion.env()
    t = p.term
    n = normal_form(t)
    assert alpha_eq(normal_form(n), n)
    assert type_of(n, env) == type_of(t, env)
    assert equivalent(t, n)
    assert beta_step(n) is None
    assert not linearity_violations(n)
