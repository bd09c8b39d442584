"""Twist words: expression trees over Dehn twists, opaque blocks, powers and commutators.

Products compose functionally, so in ``Product((a, b))`` the factor ``b`` acts
first.  This matches how monodromy factorizations are written down.

Parsed and reduced words keep a uniform shape: the operand of a ``Power`` and
both sides of a ``Commutator`` are always ``Product`` nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Union

from .errors import CurveNameError
from .surface import CurveModel, HomologyClass
from .symplectic import SpMatrix

COMMUTATOR = "commutator"
UNKNOWN = "unknown-element"
OPAQUE_KINDS = (COMMUTATOR, UNKNOWN)


@dataclass(frozen=True)
class Twist:
    curve: str
    exponent: int = 1

    def __post_init__(self) -> None:
        if not self.curve:
            raise ValueError("twist needs a curve name")


@dataclass(frozen=True)
class OpaqueBlock:
    """A mapping class that is named but not written out as twists.

    ``definition``, when set, is a word with the same symplectic image; it lets
    blocks such as T_2 be evaluated although their positive word is unknown.
    ``declared_twists`` records how many positive twists the block stands for.
    """

    label: str
    kind: str = COMMUTATOR
    params: tuple[tuple[str, int | str], ...] = ()
    declared_twists: int | None = field(default=None, compare=False)
    definition: "TwistWord | None" = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in OPAQUE_KINDS:
            raise ValueError(f"unknown opaque kind {self.kind!r}")
        if isinstance(self.params, dict):
            object.__setattr__(self, "params", tuple(self.params.items()))
        object.__setattr__(self, "params", tuple(sorted(self.params)))

    @property
    def display(self) -> str:
        if not self.params:
            return self.label
        return f"{self.label}(" + ",".join(f"{k}={v}" for k, v in self.params) + ")"


@dataclass(frozen=True)
class Product:
    factors: tuple["TwistWord", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class Power:
    base: Product
    exponent: int


@dataclass(frozen=True)
class Commutator:
    left: Product
    right: Product


TwistWord = Union[Twist, OpaqueBlock, Product, Power, Commutator]

EMPTY = Product(())


def word(*factors: TwistWord) -> Product:
    return Product(tuple(factors))


def twists(*names: str) -> Product:
    return Product(tuple(Twist(n) for n in names))


def as_product(w: TwistWord) -> Product:
    return w if isinstance(w, Product) else Product((w,))


def power(w: TwistWord, k: int) -> Power:
    return Power(as_product(w), k)


def commutator(a: TwistWord, b: TwistWord) -> Commutator:
    return Commutator(as_product(a), as_product(b))


def inverse(w: TwistWord) -> TwistWord:
    if isinstance(w, Twist):
        return Twist(w.curve, -w.exponent)
    if isinstance(w, OpaqueBlock):
        return Power(Product((w,)), -1)
    if isinstance(w, Product):
        return Product(tuple(inverse(f) for f in reversed(w.factors)))
    if isinstance(w, Power):
        return Power(w.base, -w.exponent)
    if isinstance(w, Commutator):
        # [a, b]^{-1} = b a b^-1 a^-1 = [b, a]
        return Commutator(w.right, w.left)
    raise TypeError(f"not a twist word: {w!r}")


def walk(w: TwistWord) -> Iterator[TwistWord]:
    """Pre-order traversal of every node."""
    yield w
    if isinstance(w, Product):
        for f in w.factors:
            yield from walk(f)
    elif isinstance(w, Power):
        yield from walk(w.base)
    elif isinstance(w, Commutator):
        yield from walk(w.left)
        yield from walk(w.right)


def opaque_blocks(w: TwistWord) -> list[OpaqueBlock]:
    return [n for n in walk(w) if isinstance(n, OpaqueBlock)]


def curves_used(w: TwistWord) -> list[str]:
    seen: dict[str, None] = {}
    for n in walk(w):
        if isinstance(n, Twist):
            seen.setdefault(n.curve)
    return list(seen)


def is_leaf_only(w: TwistWord) -> bool:
    """True when the tree contains only twists, products and powers."""
    return all(isinstance(n, (Twist, Product, Power)) for n in walk(w))


# -- reduction ---------------------------------------------------------------

def _letter(w: TwistWord) -> tuple[object, int] | None:
    """View a node as a free-group letter (generator, exponent) when possible."""
    if isinstance(w, Twist):
        return ("t", w.curve), w.exponent
    if isinstance(w, OpaqueBlock):
        return ("o", w), 1
    if isinstance(w, Power) and len(w.base.factors) == 1 and isinstance(w.base.factors[0], OpaqueBlock):
        return ("o", w.base.factors[0]), w.exponent
    return None


def _from_letter(gen: tuple[str, object], exp: int) -> TwistWord:
    kind, val = gen
    if kind == "t":
        return Twist(val, exp)  # type: ignore[arg-type]
    if exp == 1:
        return val  # type: ignore[return-value]
    return Power(Product((val,)), exp)  # type: ignore[arg-type]


def _expand(w: TwistWord) -> list[TwistWord]:
    """Reduce ``w`` and return it as a flat list of factors."""
    if isinstance(w, Twist):
        return [w] if w.exponent else []
    if isinstance(w, OpaqueBlock):
        return [w]
    if isinstance(w, Product):
        out: list[TwistWord] = []
        for f in w.factors:
            out.extend(_expand(f))
        return out
    if isinstance(w, Power):
        if w.exponent == 0:
            return []
        base = _free_reduce(_expand(w.base))
        if not base:
            return []
        if w.exponent == 1:
            return base
        if len(base) == 1 and (lt := _letter(base[0])) is not None:
            return [_from_letter(lt[0], lt[1] * w.exponent)]
        if all(isinstance(f, Twist) for f in base):
            unit = base if w.exponent > 0 else _expand(inverse(Product(tuple(base))))
            return unit * abs(w.exponent)
        return [Power(Product(tuple(base)), w.exponent)]
    if isinstance(w, Commutator):
        left = _free_reduce(_expand(w.left))
        right = _free_reduce(_expand(w.right))
        if not left or not right or left == right:
            return []
        return [Commutator(Product(tuple(left)), Product(tuple(right)))]
    raise TypeError(f"not a twist word: {w!r}")


def _free_reduce(factors: list[TwistWord]) -> list[TwistWord]:
    stack: list[TwistWord] = []
    for f in factors:
        lt = _letter(f)
        if lt is not None and stack:
            top = _letter(stack[-1])
            if top is not None and top[0] == lt[0]:
                stack.pop()
                exp = top[1] + lt[1]
                if exp:
                    stack.append(_from_letter(lt[0], exp))
                continue
        stack.append(f)
    return stack


def reduce(w: TwistWord) -> Product:
    """Free normal form: flattened, merged, cancelled, leaf powers expanded."""
    return Product(tuple(_free_reduce(_expand(w))))


# -- counting ----------------------------------------------------------------

class TwistCount(NamedTuple):
    positive: int
    negative: int
    opaque: int

    def __add__(self, other):  # type: ignore[override]
        return TwistCount(*(a + b for a, b in zip(self, other)))

    def scaled(self, k: int) -> TwistCount:
        if k >= 0:
            return TwistCount(self.positive * k, self.negative * k, self.opaque * k)
        k = -k
        return TwistCount(self.negative * k, self.positive * k, self.opaque * k)


def twist_count(w: TwistWord) -> TwistCount:
    """Signed twist and opaque-block tallies with powers and commutators expanded."""
    if isinstance(w, Twist):
        e = w.exponent
        return TwistCount(max(e, 0), max(-e, 0), 0)
    if isinstance(w, OpaqueBlock):
        return TwistCount(0, 0, 1)
    if isinstance(w, Product):
        total = TwistCount(0, 0, 0)
        for f in w.factors:
            total = total + twist_count(f)
        return total
    if isinstance(w, Power):
        return twist_count(w.base).scaled(w.exponent)
    if isinstance(w, Commutator):
        a, b = twist_count(w.left), twist_count(w.right)
        return a + b + a.scaled(-1) + b.scaled(-1)
    raise TypeError(f"not a twist word: {w!r}")


def is_positive(w: TwistWord) -> bool:
    """No negative twists; opaque parts are commutators or declared positive blocks."""
    if twist_count(w).negative:
        return False

    def ok(node: TwistWord, sign: int) -> bool:
        if isinstance(node, OpaqueBlock):
            return node.kind == COMMUTATOR or (node.declared_twists is not None and sign > 0)
        if isinstance(node, Product):
            return all(ok(f, sign) for f in node.factors)
        if isinstance(node, Power):
            if node.exponent == 0:
                return True
            return ok(node.base, sign if node.exponent > 0 else -sign)
        return True  # twists are counted above; commutators may hold anything

    return ok(w, 1)


# -- evaluation --------------------------------------------------------------

@dataclass(frozen=True)
class Verified:
    pass


@dataclass(frozen=True)
class Refuted:
    witness: HomologyClass
    lhs_image: HomologyClass
    rhs_image: HomologyClass


@dataclass(frozen=True)
class Indeterminate:
    labels: tuple[str, ...]


Verdict = Union[Verified, Refuted, Indeterminate]


def unresolved_labels(w: TwistWord) -> tuple[str, ...]:
    """Display names of opaque blocks without a computable image, in order."""
    seen: dict[str, None] = {}

    def visit(node: TwistWord) -> None:
        if isinstance(node, OpaqueBlock):
            if node.definition is None:
                seen.setdefault(node.display)
            return
        if isinstance(node, Product):
            for f in node.factors:
                visit(f)
        elif isinstance(node, Power):
            visit(node.base)
        elif isinstance(node, Commutator):
            visit(node.left)
            visit(node.right)

    visit(w)
    return tuple(seen)


def evaluate(w: TwistWord, model: CurveModel) -> SpMatrix | Indeterminate:
    """Symplectic image of ``w``, or Indeterminate naming the opaque blocks hit."""
    labels = unresolved_labels(w)
    if labels:
        return Indeterminate(labels)
    cache: dict[str, SpMatrix] = {}
    dim = 2 * model.genus

    def ev(node: TwistWord) -> SpMatrix:
        if isinstance(node, Twist):
            if node.curve not in cache:
                if node.curve not in model:
                    raise CurveNameError(f"unknown curve {node.curve!r}")
                cache[node.curve] = SpMatrix.transvection(model[node.curve].homology)
            return cache[node.curve] ** node.exponent
        if isinstance(node, OpaqueBlock):
            assert node.definition is not None
            return ev(node.definition)
        if isinstance(node, Product):
            out = SpMatrix.identity(dim)
            for f in node.factors:
                out = out @ ev(f)
            return out
        if isinstance(node, Power):
            return ev(node.base) ** node.exponent
        if isinstance(node, Commutator):
            a, b = ev(node.left), ev(node.right)
            return a @ b @ a.inverse() @ b.inverse()
        raise TypeError(f"not a twist word: {node!r}")

    return ev(w)


def certify_relation(lhs: TwistWord, rhs: TwistWord, model: CurveModel) -> Verdict:
    """Compare the symplectic images of two words.

    Verified only means the relation survives in Sp(2g, Z); it is a necessary
    condition for equality in the mapping class group, not a sufficient one.
    """
    labels = unresolved_labels(lhs) + tuple(
        x for x in unresolved_labels(rhs) if x not in unresolved_labels(lhs))
    if labels:
        # still resolve curve names so typos are not hidden behind opaque blocks
        for name in curves_used(lhs) + curves_used(rhs):
            if name not in model:
                raise CurveNameError(f"unknown curve {name!r}")
        return Indeterminate(labels)
    a = evaluate(lhs, model)
    b = evaluate(rhs, model)
    assert isinstance(a, SpMatrix) and isinstance(b, SpMatrix)
    for j in range(a.dim):
        ca, cb = a.column(j), b.column(j)
        if ca != cb:
            return Refuted(HomologyClass.basis(model.genus, j), ca, cb)
    return Verified()
