from __future__ import annotations

import json

import pytest
from generators import make_book, random_reduced_words

from steinfill import serialize as ser
from steinfill.errors import DomainError
from steinfill.families import build_factorization, t2_word
from steinfill.lefschetz import family_fibration, family_invariants
from steinfill.plumbing import build_Y
from steinfill.spinal import TapSpec
from steinfill.words import OpaqueBlock, Power, Product, Twist


def test_big_integers_become_strings():
    big = 2**53
    assert ser.enc_int(2**53 - 1) == 2**53 - 1
    assert ser.enc_int(big) == str(big)
    assert ser.enc_int(-big) == str(-big)
    assert ser.dec_int(str(big)) == big
    node = ser.word_node(Twist("a", 2**60))
    assert node["exponent"] == str(2**60)
    assert ser.word_from_node(node) == Twist("a", 2**60)


def test_word_documents_round_trip():
    for w in random_reduced_words(100, seed=11):
        doc = json.loads(ser.dumps(ser.word_to_json(w)))
        assert ser.word_from_json(doc) == w
        assert ser.word_from_json({"schema": doc["schema"], "dsl": doc["dsl"]}) == w


def test_t2_regains_definition():
    doc = ser.word_to_json(Product((Power(Product((t2_word(2),)), 2),)))
    back = ser.word_from_json(doc)
    assert back.factors[0].base.factors[0].declared_twists == 10


def test_schema_is_checked():
    with pytest.raises(DomainError):
        ser.word_from_json({"schema": "steinfill/other/1", "dsl": "1"})


def test_book_round_trip():
    book = make_book(3, 2, 1, 2, [["a"], [], ["b", "c"]])
    assert ser.book_from_json(json.loads(ser.dumps(ser.book_to_json(book)))) == book


def test_tapspec_round_trip():
    spec = TapSpec((("S1", "S1:P1", "S1:P1"),), ("P1", "P1"), "id", 2, "Q", (("S1", "Q:S1", "S1:Q"),))
    assert ser.tapspec_from_json(ser.tapspec_to_json(spec)) == spec


def test_fibration_round_trip():
    f = family_fibration(2, 1, -1, 2)
    assert ser.fibration_from_json(ser.fibration_to_json(f)) == f


def test_other_documents():
    assert ser.report_to_json(family_invariants(2, 1, 0, 1))["c1_squared"] == 2
    fact = ser.factorization_to_json(build_factorization(2, 2, 0, 1))
    assert fact["vanishing_cycle_count"] == 100 and fact["anonymous_cycles"] == 10
    assert ser.plumbing_graph_from_json(ser.plumbing_graph_to_json(build_Y(2, 1, -2))) == build_Y(2, 1, -2)
    assert ser.word_node(OpaqueBlock("C", params=(("m", 3),)))["params"] == {"m": 3}


def test_dumps_is_deterministic():
    doc = ser.book_to_json(make_book(2, 2, 0, 1))
    assert ser.dumps(doc) == ser.dumps(json.loads(ser.dumps(doc)))
