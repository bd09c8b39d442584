"""Relation templates and the monodromy factorizations of the families X_{g,h,n}(m).

All words live in the mapping class group of the genus g surface with one
boundary component, over the curves of :func:`steinfill.surface.standard_model`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError
from .surface import CurveModel, VanishingCycle, standard_model
from .words import (
    COMMUTATOR,
    EMPTY,
    UNKNOWN,
    OpaqueBlock,
    Power,
    Product,
    Twist,
    TwistWord,
    inverse,
    is_positive,
    power,
    twist_count,
    twists,
    walk,
    word,
)


def _check_genus(g: int) -> None:
    if g < 2:
        raise DomainError(f"fiber genus must be at least 2, got {g}")


def check_parameters(g: int, h: int, n: int, m: int) -> None:
    _check_genus(g)
    if h < 1:
        raise DomainError(f"base genus must be at least 1, got {h}")
    if n > 2 * h - 2:
        raise DomainError(
            f"section self-intersection n={n} exceeds the upper bound 2h-2={2 * h - 2}")
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")


def chain_names(g: int) -> list[str]:
    _check_genus(g)
    return [f"c{i}" for i in range(1, 2 * g - 1)] + ["b", "r"]


def chain_word(g: int) -> Product:
    """R = (t_c1 ... t_c{2g-2} t_b t_r)^(4g+2), the one-boundary chain relation word."""
    return Product((power(twists(*chain_names(g)), 4 * g + 2),))


def t_word() -> Product:
    """T = t_c2 t_c1 (t_c1 t_c2 t_c3)^2 t_c1 t_c2."""
    return word(Twist("c2"), Twist("c1"), power(twists("c1", "c2", "c3"), 2),
                Twist("c1"), Twist("c2"))


def t1_word() -> Product:
    """T_1 = t_r t_a1 t_b t_r (t_a1 t_r t_b)^2."""
    return word(Twist("r"), Twist("a1"), Twist("b"), Twist("r"), power(twists("a1", "r", "b"), 2))


def t2_relation(g: int) -> tuple[Product, Product]:
    """The two chain powers with T_2 (t_c1...t_c{2g-3})^(2g-2) = (t_c1...t_c{2g-2} t_b)^(2g)."""
    _check_genus(g)
    short = [f"c{i}" for i in range(1, 2 * g - 2)]
    long = [f"c{i}" for i in range(1, 2 * g - 1)] + ["b"]
    return Product((power(twists(*short), 2 * g - 2),)), Product((power(twists(*long), 2 * g),))


@lru_cache(maxsize=None)
def t2_word(g: int) -> OpaqueBlock:
    """T_2 as an opaque block of 8g-6 positive twists whose image comes from its relation."""
    known, rhs = t2_relation(g)
    return OpaqueBlock("T2", UNKNOWN, (("g", g),), declared_twists=8 * g - 6,
                       definition=word(rhs, inverse(known)))


def _repeat(w: TwistWord, k: int) -> tuple[TwistWord, ...]:
    """Factors of w^k, spliced in directly when k is 0 or 1."""
    if k == 0:
        return ()
    if k == 1:
        return w.factors if isinstance(w, Product) else (w,)
    return (power(w, k),)


def commutator_block(label: str, **params: int) -> OpaqueBlock:
    return OpaqueBlock(label, COMMUTATOR, tuple(params.items()))


@dataclass(frozen=True)
class RelationTemplate:
    name: str
    lhs: TwistWord
    rhs: TwistWord
    parameters: tuple[tuple[str, int], ...]
    provenance: str


def boundary_word(power_: int) -> Product:
    return Product((Twist("delta", power_),)) if power_ else EMPTY


def chain_relation(g: int) -> RelationTemplate:
    return RelationTemplate("chain", boundary_word(1), chain_word(g), (("g", g),),
                            "one-boundary chain relation")


def t2_defining_relation(g: int) -> RelationTemplate:
    known, rhs = t2_relation(g)
    return RelationTemplate("T2", word(t2_word(g), known), rhs, (("g", g),),
                            "defining relation of T_2")


def base_relation(g: int, h: int, m: int) -> RelationTemplate:
    """1 = C(m) T^m for h = 1, and t_delta^(2-2h) = C_1...C_{h-1} C(m) T_1^m T_2^m for h > 1."""
    check_parameters(g, h, 2 * h - 2, m)
    if h == 1:
        rhs = word(commutator_block("C", m=m), *_repeat(t_word(), m))
        return RelationTemplate("base-h1", EMPTY, rhs, (("g", g), ("h", h), ("m", m)),
                                "C(m) T^m relation")
    blocks = [commutator_block(f"C{i}") for i in range(1, h)]
    rhs = word(*blocks, commutator_block("C", m=m), *_repeat(t1_word(), m), *_repeat(t2_word(g), m))
    return RelationTemplate("base", boundary_word(2 - 2 * h), rhs,
                            (("g", g), ("h", h), ("m", m)), "C_i C(m) T_1^m T_2^m relation")


@dataclass(frozen=True)
class Factorization:
    """t_delta^boundary_twist_power = word in the genus g, one-boundary mapping class group."""

    genus: int
    base_genus: int
    section_self_intersection: int
    m: int
    boundary_twist_power: int
    word: Product
    vanishing_cycles: tuple[VanishingCycle, ...]
    commutator_blocks: tuple[OpaqueBlock, ...]
    model: CurveModel = field(repr=False, compare=False)

    @property
    def k(self) -> int:
        return 2 * self.base_genus - 2 - self.section_self_intersection

    @property
    def critical_points(self) -> int:
        return len(self.vanishing_cycles)

    @property
    def lhs(self) -> Product:
        return boundary_word(self.boundary_twist_power)

    def relation(self) -> RelationTemplate:
        return RelationTemplate(
            "factorization", self.lhs, self.word,
            (("g", self.genus), ("h", self.base_genus), ("n", self.section_self_intersection),
             ("m", self.m)),
            "boundary twist power times chain word padding")


def vanishing_cycles_of(w: TwistWord, model: CurveModel) -> list[VanishingCycle]:
    out: list[VanishingCycle] = []

    def visit(node: TwistWord, reps: int) -> None:
        if isinstance(node, Twist):
            if node.exponent < 0:
                raise DomainError("negative twist in a positive factorization")
            curve = model[node.curve]
            out.extend([VanishingCycle(node.curve, curve.separating_split)] * (node.exponent * reps))
        elif isinstance(node, OpaqueBlock):
            if node.kind == UNKNOWN and node.declared_twists:
                out.extend([VanishingCycle(None)] * (node.declared_twists * reps))
        elif isinstance(node, Product):
            for f in node.factors:
                visit(f, reps)
        elif isinstance(node, Power):
            for _ in range(node.exponent):
                visit(node.base, reps)
        # commutators contribute no critical points

    visit(w, 1)
    return out


def build_factorization(g: int, h: int, n: int, m: int) -> Factorization:
    """Monodromy factorization of X_{g,h,n}(m) with a section of square n.

    With k = 2h - 2 - n the word is C(m) T^m R^k (h = 1) or
    C_1...C_{h-1} C(m) T_1^m T_2^m R^k (h > 1), and the left side is
    t_delta^(2-2h+k) = t_delta^(-n).
    """
    check_parameters(g, h, n, m)
    model = standard_model(g)
    k = 2 * h - 2 - n
    base = base_relation(g, h, m)
    factors = list(base.rhs.factors)
    if k:
        factors.append(power(twists(*chain_names(g)), (4 * g + 2) * k))
    w = Product(tuple(factors))
    cycles = vanishing_cycles_of(w, model)
    blocks = tuple(node for node in walk(w)
                   if isinstance(node, OpaqueBlock) and node.kind == COMMUTATOR)
    fact = Factorization(g, h, n, m, 2 - 2 * h + k, w, tuple(cycles), blocks, model)
    assert fact.boundary_twist_power == -n
    assert twist_count(w).negative == 0 and is_positive(w)
    return fact
