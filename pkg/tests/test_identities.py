from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from novikov import _multilinear as ml
from novikov.algebra import LEFT_SYMMETRY, RIGHT_COMMUTATIVITY, is_novikov, multiply
from novikov.constructions import (
    binomial_mishchenko,
    example1,
    mishchenko,
    truncated_polynomial,
    truncated_witt,
)
from novikov.identities import (
    CATALOG,
    EnumerationGuardError,
    HypothesisViolation,
    Identity,
    IdentityError,
    check_identity,
    get_identity,
    is_lie_metabelian,
    is_multilinear,
    parse_identity,
)
from novikov.suite import perturb

from .strategies import algebras, elements

NOVIKOV_SAMPLES = [example1(), truncated_witt(5), mishchenko(2), mishchenko(3, "F5"), binomial_mishchenko(3, "F3")]


def body_dict(ident):
    return dict(ident.body)


def test_parse_f2_form():
    assert parse_identity("(x1*x2)*x3 - (x1*x3)*x2").body == get_identity("f2").body
    assert dict(get_identity("f2").body) == dict(RIGHT_COMMUTATIVITY)
    assert dict(get_identity("f1").body) == dict(LEFT_SYMMETRY)


def test_g1_expansion():
    g1 = parse_identity("[[x1,x2],[x3,x4]]")
    assert len(g1.body) == 8
    assert all(abs(c) == 1 for _, c in g1.body)
    assert g1.body == get_identity("g1").body


def test_renumbering_and_left_normed_products():
    a = parse_identity("x7*x3*x5")
    assert a.arity == 3 and a.variables == ("x3", "x5", "x7")
    assert a.body == ((((3, 1), 2), Fraction(1)),)
    b = parse_identity("x1*(x2*x3) = x1*(x2*x3)", require_multilinear=False)
    assert b.body == ()


def test_grammar_errors():
    with pytest.raises(IdentityError, match="not multilinear"):
        parse_identity("x1*(x1*x2)")
    for bad in ["x1*", "(x1,x2)", "[x1 x2]", "x1 + 2", "x1 $ x2", "x1 = = x2", "y1*x2"]:
        with pytest.raises(IdentityError):
            parse_identity(bad)
    with pytest.raises(IdentityError, match="at most"):
        parse_identity("x1*x2*x3*x4*x5*x6*x7*x8")
    with pytest.raises(IdentityError, match="unknown identity"):
        get_identity("f99")


def test_multilinearity_predicate():
    assert is_multilinear(get_identity("f4"))
    assert not is_multilinear(parse_identity("x1*x1", require_multilinear=False))
    assert is_multilinear(Identity("empty", 0, ()))


def test_rational_coefficients_flag_char_2():
    assert parse_identity("1/2*x1*x2 - 1/2*x2*x1").requires_char_not_2
    assert not parse_identity("1/3*x1*x2").requires_char_not_2
    assert {n for n, i in CATALOG.items() if i.requires_char_not_2} == {"f12", "f13", "f14"}


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_entries_are_coherent(name):
    ident = CATALOG[name]
    assert is_multilinear(ident)
    again = parse_identity(str(ident), name)
    assert again.body == ident.body


def test_examples():
    assert check_identity(truncated_witt(6), "f8").holds
    assert check_identity(example1(), "g2").holds
    bad = perturb(truncated_witt(5), 1, 1, 2, 1)
    v = check_identity(bad, "f2")
    assert not v.holds and v.witness == (1, 1, 2)


def test_lie_metabelian():
    assert is_lie_metabelian(example1()).holds
    assert is_lie_metabelian(truncated_polynomial(4)).holds
    for d in (1, 3, 5):
        v = is_lie_metabelian(mishchenko(d))
        assert not v.holds and v.value


def test_char_2_gate():
    B = binomial_mishchenko(3, "F2")
    for name in ("f12", "f13", "f14"):
        with pytest.raises(HypothesisViolation):
            check_identity(B, name)
    assert check_identity(B, "f3").holds


def test_guard_for_seven_variables():
    M = mishchenko(5)  # dim 9
    with pytest.raises(EnumerationGuardError):
        check_identity(M, "g5")
    # dim 8 is within the guard
    assert check_identity(mishchenko(4), "g5") == check_identity(mishchenko(4), "g5", workers=2)


@pytest.mark.slow
def test_guard_override():
    M = mishchenko(5)
    assert check_identity(M, "g5", force=True).holds == check_identity(M, "g5", force=True, workers=3).holds


@pytest.mark.parametrize("A", NOVIKOV_SAMPLES, ids=str)
def test_consequences_hold_on_novikov_samples(A):
    assert is_novikov(A).holds
    for name in ["f3", "f4", "f5", "f6", "f7", "f8", "f9", "f10", "f11", "jacobi"]:
        assert check_identity(A, name).holds, name
    if A.field.characteristic != 2:
        for name in ["f12", "f13", "f14"]:
            assert check_identity(A, name).holds, name


@given(algebras(max_dim=3))
@settings(max_examples=60, deadline=None)
def test_teichmuller_holds_in_every_algebra(A):
    assert check_identity(A, "f10").holds


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_basis_pass_implies_value_zero_everywhere(data):
    # multilinearity: a basis-level pass means the identity vanishes on all elements
    A = data.draw(st.sampled_from(NOVIKOV_SAMPLES + [perturb(truncated_witt(4), 1, 1, 2, 1)]))
    name = data.draw(st.sampled_from(["f2", "f4", "f6", "f8", "f11", "g1"]))
    ident = get_identity(name)
    xs = [data.draw(elements(A)) for _ in range(ident.arity)]
    value = ml.evaluate(ident.body, xs, lambda u, v: multiply(A, u, v), A.zero())
    if check_identity(A, ident).holds:
        assert value == 0


@pytest.mark.parametrize("workers", [1, 2, 4])
def test_identity_witness_stable(workers):
    A = mishchenko(6)
    assert check_identity(A, "g1", workers=workers) == check_identity(A, "g1")
