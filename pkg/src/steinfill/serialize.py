"""JSON documents for words, factorizations, fibrations, books and plumbing graphs.

Every document carries a top-level ``"schema"`` field.  Integers whose magnitude
exceeds 2**53 - 1 are written as decimal strings so that JSON readers using
doubles do not lose precision; readers here accept either form.
"""

from __future__ import annotations

import json
from typing import Any

from .dsl import parse_word, print_word
from .errors import DomainError
from .families import Factorization
from .lefschetz import InvariantReport, LefschetzFibration, SectionRecord
from .plumbing import HomologyResult, PlumbingGraph
from .plumbing import from_json_dict as plumbing_from_json
from .plumbing import to_json_dict as plumbing_to_json
from .spinal import (
    CobordismAccount,
    FoldSpec,
    PaperComponent,
    SpinalOpenBook,
    SpineComponent,
    TapSpec,
)
from .surface import Surface, VanishingCycle
from .words import (
    Commutator,
    Indeterminate,
    OpaqueBlock,
    Power,
    Product,
    Refuted,
    Twist,
    TwistWord,
    Verdict,
    Verified,
)

SAFE_INT = 2**53 - 1
PREFIX = "steinfill"


def enc_int(x: int | None) -> int | str | None:
    if x is None:
        return None
    return x if -SAFE_INT <= x <= SAFE_INT else str(x)


def dec_int(x: int | str) -> int:
    if isinstance(x, bool):
        raise DomainError("boolean where an integer was expected")
    return int(x)


def dumps(doc: dict) -> str:
    """Deterministic JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _schema(kind: str) -> str:
    return f"{PREFIX}/{kind}/1"


def _expect(data: dict, kind: str) -> None:
    got = data.get("schema")
    if got != _schema(kind):
        raise DomainError(f"expected schema {_schema(kind)!r}, got {got!r}")


# -- words -------------------------------------------------------------------

def word_node(w: TwistWord) -> dict:
    if isinstance(w, Twist):
        return {"op": "twist", "curve": w.curve, "exponent": enc_int(w.exponent)}
    if isinstance(w, OpaqueBlock):
        node: dict[str, Any] = {"op": "opaque", "label": w.label, "kind": w.kind,
                                "params": {k: enc_int(v) if isinstance(v, int) else v
                                           for k, v in w.params}}
        if w.declared_twists is not None:
            node["declared_twists"] = enc_int(w.declared_twists)
        return node
    if isinstance(w, Product):
        return {"op": "product", "factors": [word_node(f) for f in w.factors]}
    if isinstance(w, Power):
        return {"op": "power", "base": word_node(w.base), "exponent": enc_int(w.exponent)}
    if isinstance(w, Commutator):
        return {"op": "commutator", "left": word_node(w.left), "right": word_node(w.right)}
    raise TypeError(f"not a twist word: {w!r}")


def word_from_node(node: dict) -> TwistWord:
    op = node.get("op")
    if op == "twist":
        return Twist(node["curve"], dec_int(node.get("exponent", 1)))
    if op == "opaque":
        params = tuple((k, dec_int(v) if isinstance(v, int) or str(v).lstrip("-").isdigit() else v)
                       for k, v in node.get("params", {}).items())
        block = OpaqueBlock(node["label"], node.get("kind", "commutator"), params)
        # known blocks regain their images through the DSL registry
        return parse_word(print_word(block)).factors[0]
    if op == "product":
        return Product(tuple(word_from_node(f) for f in node["factors"]))
    if op == "power":
        base = word_from_node(node["base"])
        return Power(base if isinstance(base, Product) else Product((base,)), dec_int(node["exponent"]))
    if op == "commutator":
        left, right = word_from_node(node["left"]), word_from_node(node["right"])
        return Commutator(left if isinstance(left, Product) else Product((left,)),
                          right if isinstance(right, Product) else Product((right,)))
    raise DomainError(f"unknown word node {op!r}")


def word_to_json(w: TwistWord) -> dict:
    return {"schema": _schema("twist-word"), "dsl": print_word(w), "tree": word_node(w)}


def word_from_json(data: dict) -> TwistWord:
    _expect(data, "twist-word")
    if "tree" in data:
        return word_from_node(data["tree"])
    return parse_word(data["dsl"])


def _word_field(value: Any) -> TwistWord:
    """Monodromies in book files may be DSL strings or tree nodes."""
    if isinstance(value, str):
        return parse_word(value)
    return word_from_node(value)


# -- surfaces, fibrations ----------------------------------------------------

def surface_to_json(s: Surface) -> dict:
    return {"genus": s.genus, "boundary": s.boundary_components, "marked": s.marked_points}


def surface_from_json(d: dict) -> Surface:
    return Surface(dec_int(d["genus"]), dec_int(d.get("boundary", 0)), dec_int(d.get("marked", 0)))


def _cycle(v: VanishingCycle) -> dict:
    return {"curve": v.curve, "separating_split": v.separating_split}


def factorization_to_json(f: Factorization) -> dict:
    return {
        "schema": _schema("factorization"),
        "genus": f.genus,
        "base_genus": f.base_genus,
        "section_self_intersection": enc_int(f.section_self_intersection),
        "m": enc_int(f.m),
        "boundary_twist_power": enc_int(f.boundary_twist_power),
        "word": print_word(f.word),
        "vanishing_cycle_count": enc_int(len(f.vanishing_cycles)),
        "anonymous_cycles": enc_int(sum(1 for v in f.vanishing_cycles if v.curve is None)),
        "commutator_blocks": [b.display for b in f.commutator_blocks],
    }


def fibration_to_json(f: LefschetzFibration, include_cycles: bool = True) -> dict:
    doc = {
        "schema": _schema("lefschetz-fibration"),
        "fiber_genus": f.fiber_genus,
        "fiber_boundary_components": f.fiber_boundary_components,
        "base_genus": f.base_genus,
        "base_boundary_components": f.base_boundary_components,
        "commutator_count": f.commutator_count,
        "critical_points": enc_int(f.critical_points),
        "sections": [{"label": s.label, "self_intersection": enc_int(s.self_intersection)}
                     for s in f.sections],
        "signature": enc_int(f.signature),
        "allowable": f.allowable,
    }
    if include_cycles:
        doc["vanishing_cycles"] = [_cycle(v) for v in f.vanishing_cycles]
    return doc


def fibration_from_json(d: dict) -> LefschetzFibration:
    _expect(d, "lefschetz-fibration")
    sig = d.get("signature")
    return LefschetzFibration(
        fiber_genus=dec_int(d["fiber_genus"]),
        base_genus=dec_int(d["base_genus"]),
        vanishing_cycles=tuple(VanishingCycle(v.get("curve"), v.get("separating_split"))
                               for v in d.get("vanishing_cycles", [])),
        fiber_boundary_components=dec_int(d.get("fiber_boundary_components", 0)),
        base_boundary_components=dec_int(d.get("base_boundary_components", 0)),
        commutator_count=dec_int(d.get("commutator_count", 0)),
        sections=tuple(SectionRecord(s["label"], dec_int(s["self_intersection"]))
                       for s in d.get("sections", [])),
        signature=None if sig is None else dec_int(sig),
    )


def report_to_json(r: InvariantReport) -> dict:
    return {
        "schema": _schema("invariant-report"),
        "M": enc_int(r.M),
        "euler": enc_int(r.euler),
        "signature": enc_int(r.signature),
        "c1_squared": enc_int(r.c1_squared),
        "c2": enc_int(r.c2),
        "hyperelliptic": r.hyperelliptic,
    }


# -- spinal open books -------------------------------------------------------

def book_to_json(b: SpinalOpenBook) -> dict:
    return {
        "schema": _schema("spinal-open-book"),
        "paper": [{"name": p.name, "page": surface_to_json(p.page),
                   "monodromy": print_word(p.monodromy),
                   "boundary_labels": list(p.boundary_labels)} for p in b.paper],
        "spine": [{"name": s.name, "vertebra": surface_to_json(s.vertebra),
                   "boundary_labels": list(s.boundary_labels),
                   "framing": enc_int(s.framing)} for s in b.spine],
        "matching": [list(pair) for pair in b.matching],
    }


def book_from_json(d: dict) -> SpinalOpenBook:
    _expect(d, "spinal-open-book")
    paper = tuple(PaperComponent(p["name"], surface_from_json(p["page"]),
                                 _word_field(p.get("monodromy", "1")),
                                 tuple(p["boundary_labels"])) for p in d["paper"])
    spine = tuple(SpineComponent(s["name"], surface_from_json(s["vertebra"]),
                                 tuple(s["boundary_labels"]),
                                 None if s.get("framing") is None else dec_int(s["framing"]))
                  for s in d["spine"])
    return SpinalOpenBook(paper, spine, tuple((a, b) for a, b in d["matching"]))


def tapspec_to_json(t: TapSpec) -> dict:
    doc: dict[str, Any] = {
        "schema": _schema("tap-spec"),
        "arcs": [list(a) for a in t.arcs],
        "page_pair": list(t.page_pair),
        "gluing": t.gluing,
        "split_at": t.split_at,
    }
    if t.new_paper is not None:
        doc["new_paper"] = t.new_paper
    if t.new_labels is not None:
        doc["new_labels"] = [list(x) for x in t.new_labels]
    return doc


def tapspec_from_json(d: dict) -> TapSpec:
    _expect(d, "tap-spec")
    labels = d.get("new_labels")
    return TapSpec(
        arcs=tuple(tuple(a) for a in d["arcs"]),
        page_pair=tuple(d["page_pair"]),
        gluing=d.get("gluing", "h"),
        split_at=dec_int(d.get("split_at", 0)),
        new_paper=d.get("new_paper"),
        new_labels=None if labels is None else tuple(tuple(x) for x in labels),
    )


def foldspec_to_json(f: FoldSpec) -> dict:
    doc: dict[str, Any] = {
        "schema": _schema("fold-spec"),
        "mode": f.mode,
        "paper": list(f.paper),
        "gluing": f.gluing,
        "split_at": f.split_at,
    }
    if f.new_paper is not None:
        doc["new_paper"] = f.new_paper
    if f.new_labels is not None:
        doc["new_labels"] = [list(x) for x in f.new_labels]
    return doc


def foldspec_from_json(d: dict) -> FoldSpec:
    _expect(d, "fold-spec")
    labels = d.get("new_labels")
    return FoldSpec(d["mode"], tuple(d["paper"]), d.get("gluing", "h"),
                    dec_int(d.get("split_at", 0)), d.get("new_paper"),
                    None if labels is None else tuple(tuple(x) for x in labels))


def account_to_json(a: CobordismAccount) -> dict:
    return {"schema": _schema("cobordism-account"), "one_handles": a.one_handles,
            "two_handles": a.two_handles}


# -- verdicts, plumbing ------------------------------------------------------

def verdict_to_json(v: Verdict) -> dict:
    doc: dict[str, Any] = {"schema": _schema("verdict")}
    if isinstance(v, Verified):
        doc["verdict"] = "verified"
    elif isinstance(v, Refuted):
        doc.update(verdict="refuted",
                   witness=[enc_int(x) for x in v.witness],
                   lhs_image=[enc_int(x) for x in v.lhs_image],
                   rhs_image=[enc_int(x) for x in v.rhs_image])
    elif isinstance(v, Indeterminate):
        doc.update(verdict="indeterminate", opaque=list(v.labels))
    else:
        raise TypeError(f"not a verdict: {v!r}")
    return doc


def plumbing_graph_to_json(p: PlumbingGraph) -> dict:
    return plumbing_to_json(p)


def plumbing_graph_from_json(d: dict) -> PlumbingGraph:
    _expect(d, "plumbing-graph")
    return plumbing_from_json(d)


def homology_to_json(h: HomologyResult) -> dict:
    return {"schema": _schema("homology"), "free_rank": h.free_rank,
            "torsion": [enc_int(t) for t in h.torsion]}
