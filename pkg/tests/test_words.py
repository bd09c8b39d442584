from __future__ import annotations

import pytest
from generators import words
from hypothesis import given, settings
from hypothesis import strategies as st

from steinfill.errors import CurveNameError
from steinfill.families import chain_names, t2_word
from steinfill.surface import standard_model
from steinfill.words import (
    EMPTY,
    Indeterminate,
    OpaqueBlock,
    Power,
    Product,
    Refuted,
    Twist,
    Verified,
    certify_relation,
    commutator,
    evaluate,
    inverse,
    is_positive,
    power,
    reduce,
    twist_count,
    twists,
    word,
)

MODEL2 = standard_model(2)


def test_free_reduction_cancels():
    w = word(Twist("a"), Twist("b"), Twist("b", -1), Twist("a", -1))
    assert reduce(w) == EMPTY


def test_powers_of_leaves_expand():
    assert reduce(power(twists("a", "b"), 2)) == twists("a", "b", "a", "b")
    assert reduce(power(Twist("a"), -3)) == Product((Twist("a", -3),))


def test_trivial_commutators_vanish():
    assert reduce(commutator(twists("a"), EMPTY)) == EMPTY
    assert reduce(commutator(twists("a"), twists("a"))) == EMPTY


def test_opaque_letters_merge():
    c = OpaqueBlock("C")
    assert reduce(word(c, c, inverse(c))) == Product((c,))


@settings(max_examples=200)
@given(words)
def test_reduce_idempotent(w):
    assert reduce(reduce(w)) == reduce(w)


twist_only_words = st.recursive(
    st.builds(Twist, st.sampled_from(["c1", "c2", "b", "r", "a1", "delta"]), st.integers(-3, 3)),
    lambda ch: st.one_of(
        st.lists(ch, max_size=4).map(lambda xs: Product(tuple(xs))),
        st.builds(Power, st.lists(ch, max_size=3).map(lambda xs: Product(tuple(xs))), st.integers(-3, 3)),
        st.builds(commutator, ch, ch)),
    max_leaves=10)


@settings(max_examples=200)
@given(twist_only_words)
def test_inverse_is_inverse(w):
    assert evaluate(word(w, inverse(w)), MODEL2).is_identity()
    assert evaluate(reduce(w), MODEL2) == evaluate(w, MODEL2)


def test_inverse_of_leaf_word_reduces_to_empty():
    w = word(twists("a", "b"), power(twists("c", "a"), 2), Twist("b", -2))
    assert reduce(word(w, inverse(w))) == EMPTY


@given(words)
def test_twist_count_of_inverse_swaps_signs(w):
    a, b = twist_count(w), twist_count(inverse(w))
    assert (a.positive, a.negative) == (b.negative, b.positive)


def test_twist_count_commutator_balanced():
    c = twist_count(commutator(twists("a", "b"), Twist("c", 2)))
    assert c.positive == c.negative == 4


def test_is_positive():
    assert is_positive(word(OpaqueBlock("C"), twists("a")))
    assert not is_positive(Twist("a", -1))
    assert not is_positive(OpaqueBlock("X", "unknown-element"))
    assert is_positive(t2_word(2))
    assert not is_positive(inverse(t2_word(2)))


@pytest.mark.parametrize("g", [2, 3])
def test_twist_symplectic_image(g):
    model = standard_model(g)
    m = evaluate(Twist("c1"), model)
    assert m.preserves_form() and not m.is_identity()
    assert (evaluate(Twist("c1", 3), model) @ evaluate(Twist("c1", -3), model)).is_identity()


def test_boundary_twist_is_trivial_in_homology():
    assert evaluate(Twist("delta", 5), MODEL2).is_identity()


def test_braid_relation_verified():
    lhs = twists("c1", "c2", "c1")
    rhs = twists("c2", "c1", "c2")
    assert certify_relation(lhs, rhs, MODEL2) == Verified()


def test_false_relation_refuted_with_witness():
    v = certify_relation(twists("c1", "c2"), twists("c2", "c1"), MODEL2)
    assert isinstance(v, Refuted)
    assert v.lhs_image != v.rhs_image


def test_opaque_blocks_are_indeterminate():
    v = certify_relation(word(OpaqueBlock("C", params=(("m", 1),)), Twist("c1")), EMPTY, MODEL2)
    assert v == Indeterminate(("C(m=1)",))


def test_unknown_curve_raises():
    with pytest.raises(CurveNameError):
        evaluate(Twist("zz"), MODEL2)
    with pytest.raises(CurveNameError):
        certify_relation(word(OpaqueBlock("C"), Twist("zz")), EMPTY, MODEL2)


def test_t2_block_evaluates_through_definition():
    assert evaluate(t2_word(3), standard_model(3)).preserves_form()


@pytest.mark.parametrize("g", [2, 3])
def test_far_chain_curves_commute(g):
    model = standard_model(g)
    names = chain_names(g)
    a, b = names[0], names[-1]
    assert certify_relation(twists(a, b), twists(b, a), model) == Verified()
