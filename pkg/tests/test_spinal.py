from __future__ import annotations

import random

import pytest
from generators import make_book, random_book_and_tap
from hypothesis import given
from hypothesis import strategies as st

from steinfill.errors import DomainError, TopologyError
from steinfill.families import t_word
from steinfill.spinal import (
    CobordismAccount,
    FoldSpec,
    PaperComponent,
    SpinalOpenBook,
    SpineComponent,
    TapSpec,
    boundary_of_disk_fibration,
    change_framing,
    check_positive_coset_certificate,
    fold,
    framed,
    merge_monodromies,
    spinal_tap,
    split_monodromy,
    tap_inverse,
    total_monodromy,
)
from steinfill.surface import Surface, standard_model
from steinfill.words import EMPTY, OpaqueBlock, Product, Twist, Verified, commutator, twists


def test_book_validation():
    book = make_book(2, 2, 1, 0)
    assert book.is_simple and book.is_uniform and book.is_symmetric
    with pytest.raises(TopologyError):
        SpinalOpenBook(book.paper, book.spine, book.matching[:-1])
    bad_page = PaperComponent("P9", Surface(3, 2), EMPTY, ("x", "y"))
    with pytest.raises(TopologyError):
        SpinalOpenBook(book.paper + (bad_page,), book.spine, book.matching)


def test_merge_example():
    # two paper components over genus 1 vertebrae with two boundary circles
    book = make_book(2, 1, 1, 1, [["a"], ["b"]])
    spec = TapSpec((("S1", "S1:P1", "S1:P2"),), ("P1", "P2"))
    out, account = spinal_tap(book, spec)
    assert len(out.paper) == 1 and len(out.spine) == 1
    assert out.vertebra == Surface(1, 1)
    assert out.paper[0].monodromy.factors[0] == Twist("a")
    assert account == CobordismAccount(1, 2 - 2 * Surface(1, 1).euler_characteristic)


def test_split_example():
    book = make_book(1, 1, 2, 1, [["a", "b"]])
    spec = TapSpec((("S1", "S1:P1", "S1:P1"),), ("P1", "P1"), split_at=1)
    out, account = spinal_tap(book, spec)
    assert len(out.paper) == 2
    assert out.vertebra == Surface(0, 2)
    assert account.two_handles == 2 - 2 * Surface(2, 1).euler_characteristic


def test_planar_same_circle_rejected():
    book = make_book(1, 1, 1, 0)
    with pytest.raises(TopologyError):
        spinal_tap(book, TapSpec((("S1", "S1:P1", "S1:P1"),), ("P1", "P1")))


def test_tap_needs_arc_in_every_spine():
    book = make_book(2, 2, 0, 0)
    with pytest.raises(TopologyError):
        spinal_tap(book, TapSpec((("S1", "S1:P1", "S1:P2"),), ("P1", "P2")))


def test_monodromy_bookkeeping_round_trip():
    a, b = twists("a", "b"), twists("c")
    merged = merge_monodromies(a, b, "h")
    assert split_monodromy(merged, 2, "h") == (a, b)
    assert merge_monodromies(a, b, "id") == twists("a", "b", "c")


@given(st.integers(0, 2**32))
def test_tap_fold_round_trip_property(seed):
    rng = random.Random(seed)
    book, spec = random_book_and_tap(rng)
    out, account = spinal_tap(book, spec)
    assert fold(out, tap_inverse(book, spec)) == book
    delta = -1 if not spec.same_boundary else 1
    assert len(out.paper) - len(book.paper) == delta
    assert len(out.spine) == len(book.spine)
    assert out.vertebra.euler_characteristic == book.vertebra.euler_characteristic + 1
    f1 = book.paper_component(spec.page_pair[0]).page
    f2 = book.paper_component(spec.page_pair[1]).page
    assert account == CobordismAccount(1, 2 - f1.euler_characteristic - f2.euler_characteristic)


def test_tap_preserves_framings():
    book = make_book(2, 1, 0, 0)
    spine = tuple(SpineComponent(s.name, s.vertebra, s.boundary_labels, framing=-3) for s in book.spine)
    book = SpinalOpenBook(book.paper, spine, book.matching)
    out, _ = spinal_tap(book, TapSpec((("S1", "S1:P1", "S1:P2"),), ("P1", "P2")))
    assert out.spine[0].framing == -3


def test_disk_fibration_boundary():
    book = boundary_of_disk_fibration(t_word(), Surface(2, 1))
    assert len(book.paper) == 1 and len(book.spine) == 1
    assert book.vertebra == Surface(0, 1)
    with pytest.raises(DomainError):
        boundary_of_disk_fibration(Twist("a", -1), Surface(2, 1))


def test_fold_disk_boundary_to_annulus_boundary():
    book = boundary_of_disk_fibration(twists("c1", "c2", "c1"), Surface(2, 2))
    labels = (("B1", "Q:B1", "B1:Q"), ("B2", "Q:B2", "B2:Q"))
    out = fold(book, FoldSpec("split", ("P",), "id", 1, "Q", labels))
    assert len(out.paper) == 2 and out.vertebra == Surface(0, 2)
    assert out.is_simple
    assert out.paper_component("Q").monodromy == twists("c2", "c1")


def test_degenerate_fold_rejected():
    book = make_book(2, 1, 0, 1)
    with pytest.raises(TopologyError):
        fold(book, FoldSpec("join", ("P1", "P1")))
    with pytest.raises(DomainError):
        FoldSpec("twist", ("P1",))


def test_framing_change_keeps_book():
    book = make_book(1, 2, 1, 1)
    fb = framed(book)
    changed = change_framing(fb, 1, 0, 5)
    assert changed.underlying == book
    assert changed.framings[1][0] == 5 and changed != fb
    with pytest.raises(DomainError):
        change_framing(fb, 3, 0, 1)


def test_total_monodromy_order_and_pages():
    book = make_book(2, 1, 1, 0, [["a"], ["b"]])
    w = total_monodromy(book, [("P2", None), ("P1", "i")])
    assert w.factors[0] == Product((Twist("b"),))
    assert w.factors[1].factors[0] == OpaqueBlock("i", "unknown-element")
    with pytest.raises(TopologyError):
        total_monodromy(book, [("P1", None)])


def test_positive_coset_certificate():
    model = standard_model(2)
    phi = twists("c1", "c2")
    cert = (twists("c1", "c2"), [commutator(twists("c1"), twists("c3"))])
    assert check_positive_coset_certificate(phi, cert, 2, model) == Verified()
    with pytest.raises(DomainError):
        check_positive_coset_certificate(phi, cert, 1, model)
