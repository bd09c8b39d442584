"""Exact combinatorics of Lefschetz fibrations, spinal open books and plumbings."""

from __future__ import annotations

from .dsl import parse_word, print_word
from .errors import (
    CurveNameError,
    DimensionError,
    DomainError,
    IntegralityError,
    NotAllowableError,
    ParseError,
    SteinfillError,
    TopologyError,
)
from .families import Factorization, build_factorization, chain_word, t1_word, t2_word, t_word
from .lefschetz import (
    InvariantReport,
    LefschetzFibration,
    critical_count,
    endo_signature,
    euler_characteristic,
    excise_fiber_and_sections,
    family_fibration,
    family_invariants,
    fiber_sum,
    invariants,
)
from .plumbing import PlumbingGraph, build_generalized, build_Y, first_homology, smith_invariants
from .spinal import CobordismAccount, FoldSpec, SpinalOpenBook, TapSpec, fold, spinal_tap, tap_inverse
from .surface import CurveModel, HomologyClass, NamedCurve, Surface, standard_model
from .symplectic import SpMatrix
from .words import (
    Commutator,
    Indeterminate,
    OpaqueBlock,
    Power,
    Product,
    Refuted,
    Twist,
    Verified,
    certify_relation,
    evaluate,
    reduce,
    twist_count,
)

__version__ = "0.1.0"
