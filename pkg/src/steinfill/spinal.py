"""Abstract spinal open books, the spinal tap and its inverse fold.

Only symmetric, uniform and simple books are represented: every page is the same
surface, every vertebra is the same surface, and each spine component meets each
paper component along exactly one interface torus.  Interface tori are recorded
as pairs (paper boundary label, spine boundary label).

Gluing maps are never concrete.  A gluing ``h`` is carried as an opaque word
letter; merging two paper components conjugates the second monodromy by it, and
the label ``"id"`` stands for the identity gluing.  Contact structures are not
represented: two framings of the same book support isotopic contact structures,
so changing a framing leaves the underlying book untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import DomainError, TopologyError
from .surface import CurveModel, Surface
from .words import (
    UNKNOWN,
    Commutator,
    OpaqueBlock,
    Power,
    Product,
    TwistWord,
    Verdict,
    certify_relation,
    is_positive,
)

IDENTITY_GLUING = "id"


@dataclass(frozen=True)
class PaperComponent:
    name: str
    page: Surface
    monodromy: TwistWord
    boundary_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary_labels", tuple(sorted(self.boundary_labels)))


@dataclass(frozen=True)
class SpineComponent:
    name: str
    vertebra: Surface
    boundary_labels: tuple[str, ...]
    framing: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary_labels", tuple(sorted(self.boundary_labels)))


@dataclass(frozen=True)
class SpinalOpenBook:
    paper: tuple[PaperComponent, ...]
    spine: tuple[SpineComponent, ...]
    matching: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "paper", tuple(sorted(self.paper, key=lambda p: p.name)))
        object.__setattr__(self, "spine", tuple(sorted(self.spine, key=lambda s: s.name)))
        object.__setattr__(self, "matching", tuple(sorted((a, b) for a, b in self.matching)))
        self._validate()

    def _validate(self) -> None:
        if not self.paper or not self.spine:
            raise TopologyError("a spinal open book needs paper and spine")
        names = [c.name for c in self.paper] + [c.name for c in self.spine]
        if len(set(names)) != len(names):
            raise TopologyError("component names must be distinct")
        paper_labels = [lab for p in self.paper for lab in p.boundary_labels]
        spine_labels = [lab for s in self.spine for lab in s.boundary_labels]
        if len(set(paper_labels)) != len(paper_labels) or len(set(spine_labels)) != len(spine_labels):
            raise TopologyError("boundary labels repeat")
        for p in self.paper:
            if p.page.boundary_components != len(p.boundary_labels) or p.page.boundary_components == 0:
                raise TopologyError(f"page of {p.name} has the wrong number of boundary circles")
        for s in self.spine:
            if s.vertebra.boundary_components != len(s.boundary_labels) or not s.boundary_labels:
                raise TopologyError(f"vertebra of {s.name} has the wrong number of boundary circles")
        left = [a for a, _ in self.matching]
        right = [b for _, b in self.matching]
        if sorted(left) != sorted(paper_labels) or sorted(right) != sorted(spine_labels):
            raise TopologyError("matching is not a bijection of boundary labels")
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise TopologyError("matching is not a bijection of boundary labels")
        if len({p.page for p in self.paper}) != 1:
            raise TopologyError("book is not symmetric: pages differ")
        if len({s.vertebra for s in self.spine}) != 1:
            raise TopologyError("book is not uniform: vertebrae differ")
        owner_p = {lab: p.name for p in self.paper for lab in p.boundary_labels}
        owner_s = {lab: s.name for s in self.spine for lab in s.boundary_labels}
        tori = [(owner_p[a], owner_s[b]) for a, b in self.matching]
        if len(set(tori)) != len(tori) or len(tori) != len(self.paper) * len(self.spine):
            raise TopologyError("book is not simple: each paper/spine pair must share one torus")

    # lookups

    @property
    def page(self) -> Surface:
        return self.paper[0].page

    @property
    def vertebra(self) -> Surface:
        return self.spine[0].vertebra

    def paper_component(self, name: str) -> PaperComponent:
        for p in self.paper:
            if p.name == name:
                return p
        raise TopologyError(f"no paper component {name!r}")

    def spine_component(self, name: str) -> SpineComponent:
        for s in self.spine:
            if s.name == name:
                return s
        raise TopologyError(f"no spine component {name!r}")

    def partner(self, label: str) -> str:
        for a, b in self.matching:
            if a == label:
                return b
            if b == label:
                return a
        raise TopologyError(f"unknown boundary label {label!r}")

    def interface(self, paper: str, spine: str) -> tuple[str, str]:
        """The (paper label, spine label) pair of the torus between two components."""
        plabels = set(self.paper_component(paper).boundary_labels)
        slabels = set(self.spine_component(spine).boundary_labels)
        for a, b in self.matching:
            if a in plabels and b in slabels:
                return a, b
        raise TopologyError(f"{paper} and {spine} are not adjacent")  # pragma: no cover

    def paper_of_spine_label(self, label: str) -> str:
        plabel = self.partner(label)
        for p in self.paper:
            if plabel in p.boundary_labels:
                return p.name
        raise TopologyError(f"label {label!r} is not on the spine")  # pragma: no cover

    @property
    def total_vertebra_euler(self) -> int:
        return sum(s.vertebra.euler_characteristic for s in self.spine)

    @property
    def is_symmetric(self) -> bool:
        return len({p.page for p in self.paper}) == 1

    @property
    def is_uniform(self) -> bool:
        return len({s.vertebra for s in self.spine}) == 1

    @property
    def is_simple(self) -> bool:
        return len(self.matching) == len(self.paper) * len(self.spine)


@dataclass(frozen=True)
class CobordismAccount:
    """Weinstein handles of the Stein cobordism realised by one tap."""

    one_handles: int
    two_handles: int

    def __post_init__(self) -> None:
        if self.one_handles < 0 or self.two_handles < 0:
            raise DomainError("handle counts are non-negative")


@dataclass(frozen=True)
class TapSpec:
    """Where to tap a book.

    ``arcs`` gives, for every spine component, the two vertebra boundary labels
    joined by the arc (the same label twice for an arc returning to its circle).
    ``page_pair`` names the paper components holding the fibers F_1 and F_2.
    A same-circle tap splits a paper component: ``split_at`` is the number of
    leading monodromy factors kept by the old component, and ``new_paper`` /
    ``new_labels`` name the component and interface labels it creates, given as
    (spine name, paper label, spine label) triples.
    """

    arcs: tuple[tuple[str, str, str], ...]
    page_pair: tuple[str, str]
    gluing: str = "h"
    split_at: int = 0
    new_paper: str | None = None
    new_labels: tuple[tuple[str, str, str], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple(sorted(tuple(a) for a in self.arcs)))
        object.__setattr__(self, "page_pair", tuple(self.page_pair))
        if self.new_labels is not None:
            object.__setattr__(self, "new_labels", tuple(sorted(tuple(t) for t in self.new_labels)))

    @property
    def same_boundary(self) -> bool:
        return self.page_pair[0] == self.page_pair[1]


@dataclass(frozen=True)
class FoldSpec:
    """Inverse tap data.

    ``mode == "split"`` undoes a tap that merged two paper components and
    ``mode == "join"`` undoes a tap that split one; the remaining fields play the
    same roles as in :class:`TapSpec`.
    """

    mode: str
    paper: tuple[str, ...]
    gluing: str = "h"
    split_at: int = 0
    new_paper: str | None = None
    new_labels: tuple[tuple[str, str, str], ...] | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("split", "join"):
            raise DomainError(f"unknown fold mode {self.mode!r}")
        object.__setattr__(self, "paper", tuple(self.paper))
        if self.new_labels is not None:
            object.__setattr__(self, "new_labels", tuple(sorted(tuple(t) for t in self.new_labels)))


# -- monodromy bookkeeping ---------------------------------------------------

def _factors(w: TwistWord) -> list[TwistWord]:
    if isinstance(w, Product):
        out: list[TwistWord] = []
        for f in w.factors:
            out.extend(_factors(f))
        return out
    return [w]


def _gluing_letters(label: str) -> tuple[TwistWord, TwistWord] | None:
    if label == IDENTITY_GLUING:
        return None
    h = OpaqueBlock(label, UNKNOWN)
    return h, Power(Product((h,)), -1)


def merge_monodromies(first: TwistWord, second: TwistWord, gluing: str) -> Product:
    """Monodromy of two mapping tori concatenated along h: first . h^-1 second h.

    If ``second`` is already conjugated by h (as produced by a split) the
    conjugation is undone instead of stacked.
    """
    a, b = _factors(first), _factors(second)
    letters = _gluing_letters(gluing)
    if letters is None:
        return Product(tuple(a + b))
    h, h_inv = letters
    if len(b) >= 2 and b[0] == h and b[-1] == h_inv:
        return Product(tuple(a + b[1:-1]))
    return Product(tuple(a + [h_inv] + b + [h]))


def split_monodromy(w: TwistWord, at: int, gluing: str) -> tuple[Product, Product]:
    """Inverse of :func:`merge_monodromies` cutting after ``at`` leading factors."""
    fs = _factors(w)
    if not 0 <= at <= len(fs):
        raise TopologyError(f"split position {at} outside 0..{len(fs)}")
    a, b = fs[:at], fs[at:]
    letters = _gluing_letters(gluing)
    if letters is None:
        return Product(tuple(a)), Product(tuple(b))
    h, h_inv = letters
    if len(b) >= 2 and b[0] == h_inv and b[-1] == h:
        return Product(tuple(a)), Product(tuple(b[1:-1]))
    return Product(tuple(a)), Product(tuple([h] + b + [h_inv]))


# -- the rewrites ------------------------------------------------------------

def _merge(book: SpinalOpenBook, keep: str, drop: str, gluing: str,
           genus_shift: int) -> SpinalOpenBook:
    """Merge paper component ``drop`` into ``keep``; drop's interface tori vanish."""
    if keep == drop:
        raise TopologyError("cannot merge a paper component with itself")
    p, q = book.paper_component(keep), book.paper_component(drop)
    if p.page != q.page:
        raise TopologyError("mismatched page topologies")
    dropped_paper = set(q.boundary_labels)
    dropped_spine = {book.partner(lab) for lab in dropped_paper}
    spines = []
    for s in book.spine:
        v = s.vertebra
        if v.genus + genus_shift < 0:
            raise TopologyError("vertebra genus would become negative")
        spines.append(replace(
            s,
            vertebra=Surface(v.genus + genus_shift, v.boundary_components - 1),
            boundary_labels=tuple(lab for lab in s.boundary_labels if lab not in dropped_spine)))
    merged = replace(p, monodromy=merge_monodromies(p.monodromy, q.monodromy, gluing))
    papers = [merged if c.name == keep else c for c in book.paper if c.name != drop]
    matching = [(a, b) for a, b in book.matching if a not in dropped_paper]
    return SpinalOpenBook(tuple(papers), tuple(spines), tuple(matching))


def _default_new_labels(book: SpinalOpenBook, new: str) -> tuple[tuple[str, str, str], ...]:
    return tuple((s.name, f"{new}:{s.name}", f"{s.name}:{new}") for s in book.spine)


def _split(book: SpinalOpenBook, name: str, at: int, gluing: str, new: str | None,
           labels: Sequence[tuple[str, str, str]] | None, genus_shift: int) -> SpinalOpenBook:
    p = book.paper_component(name)
    new = new or f"{name}'"
    labels = tuple(labels) if labels is not None else _default_new_labels(book, new)
    if sorted(t[0] for t in labels) != sorted(s.name for s in book.spine):
        raise TopologyError("new interface labels must name every spine component once")
    taken = {lab for c in book.paper for lab in c.boundary_labels}
    taken |= {lab for c in book.spine for lab in c.boundary_labels}
    fresh = [t[1] for t in labels] + [t[2] for t in labels]
    if len(set(fresh)) != len(fresh) or taken & set(fresh):
        raise TopologyError("new interface labels collide")
    if any(c.name == new for c in book.paper + book.spine):  # type: ignore[operator]
        raise TopologyError(f"component name {new!r} already used")
    kept, moved = split_monodromy(p.monodromy, at, gluing)
    by_spine = {t[0]: t for t in labels}
    spines = []
    for s in book.spine:
        v = s.vertebra
        if v.genus + genus_shift < 0:
            raise TopologyError(
                "same-circle arc on a planar vertebra separates it; the result is not simple")
        spines.append(replace(
            s,
            vertebra=Surface(v.genus + genus_shift, v.boundary_components + 1),
            boundary_labels=s.boundary_labels + (by_spine[s.name][2],)))
    papers = [replace(c, monodromy=kept) if c.name == name else c for c in book.paper]
    papers.append(PaperComponent(new, p.page, moved, tuple(t[1] for t in labels)))
    matching = list(book.matching) + [(t[1], t[2]) for t in labels]
    return SpinalOpenBook(tuple(papers), tuple(spines), tuple(matching))


def _check_tap(book: SpinalOpenBook, spec: TapSpec) -> None:
    if {a[0] for a in spec.arcs} != {s.name for s in book.spine} or len(spec.arcs) != len(book.spine):
        raise TopologyError("tap needs exactly one arc in every spine component")
    p1, p2 = spec.page_pair
    book.paper_component(p1)
    book.paper_component(p2)
    for spine, u, v in spec.arcs:
        labels = book.spine_component(spine).boundary_labels
        if u not in labels or v not in labels:
            raise TopologyError(f"arc endpoints {u}, {v} are not on {spine}")
        if (u == v) != spec.same_boundary:
            raise TopologyError("arc endpoints disagree with the chosen fibers")
        ends = {book.paper_of_spine_label(u), book.paper_of_spine_label(v)}
        if ends != {p1, p2}:
            raise TopologyError(f"arc in {spine} does not bound fibers of {p1} and {p2}")


def tap_account(book: SpinalOpenBook, spec: TapSpec) -> CobordismAccount:
    """One 1-handle and b_1(S) 2-handles, S the closed tap surface F_1 u -F_2."""
    f1 = book.paper_component(spec.page_pair[0]).page
    f2 = book.paper_component(spec.page_pair[1]).page
    chi = f1.euler_characteristic + f2.euler_characteristic
    return CobordismAccount(1, 2 - chi)


def spinal_tap(book: SpinalOpenBook, spec: TapSpec) -> tuple[SpinalOpenBook, CobordismAccount]:
    """Cut every vertebra along its arc and refold the paper.

    An arc between two different boundary circles merges the two adjacent paper
    components; an arc returning to the same circle splits one.  Either way each
    vertebra gains one in Euler characteristic.
    """
    _check_tap(book, spec)
    p1, p2 = spec.page_pair
    if spec.same_boundary:
        out = _split(book, p1, spec.split_at, spec.gluing, spec.new_paper, spec.new_labels, -1)
    else:
        ordered = {a[0]: a for a in spec.arcs}
        for spine, u, v in ordered.values():
            if book.paper_of_spine_label(u) != p1:
                raise TopologyError(f"first arc endpoint in {spine} must lie on {p1}")
        out = _merge(book, p1, p2, spec.gluing, 0)
    return out, tap_account(book, spec)


def tap_inverse(book: SpinalOpenBook, spec: TapSpec) -> FoldSpec:
    """Fold data that undoes ``spinal_tap(book, spec)``."""
    _check_tap(book, spec)
    p1, p2 = spec.page_pair
    if spec.same_boundary:
        new = spec.new_paper or f"{p1}'"
        return FoldSpec("join", (p1, new), spec.gluing)
    q = book.paper_component(p2)
    labels = []
    for spine, _u, v in spec.arcs:
        labels.append((spine, book.partner(v), v))
    assert {t[1] for t in labels} == set(q.boundary_labels)
    at = len(_factors(book.paper_component(p1).monodromy))
    return FoldSpec("split", (p1,), spec.gluing, at, p2, tuple(labels))


def fold(book: SpinalOpenBook, spec: FoldSpec) -> SpinalOpenBook:
    """Glue vertebrae back along an arc, the inverse of a tap.

    ``split`` cuts one paper component in two and adds a vertebra boundary
    circle; ``join`` merges two paper components and closes a vertebra circle up
    into a handle.
    """
    if spec.mode == "join":
        if len(spec.paper) != 2 or spec.paper[0] == spec.paper[1]:
            raise TopologyError("join needs two distinct paper components")
        return _merge(book, spec.paper[0], spec.paper[1], spec.gluing, +1)
    if len(spec.paper) != 1:
        raise TopologyError("split names a single paper component")
    return _split(book, spec.paper[0], spec.split_at, spec.gluing, spec.new_paper,
                  spec.new_labels, 0)


def boundary_of_disk_fibration(word: TwistWord, page: Surface) -> SpinalOpenBook:
    """The ordinary open book on the boundary of a fibration over the disk."""
    if page.is_closed:
        raise DomainError("page must have boundary")
    if not is_positive(word):
        raise DomainError("monodromy of a Lefschetz fibration is a positive word")
    k = page.boundary_components
    paper = PaperComponent("P", page, word, tuple(f"P:B{i}" for i in range(1, k + 1)))
    spine = tuple(SpineComponent(f"B{i}", Surface(0, 1), (f"B{i}:P",)) for i in range(1, k + 1))
    matching = tuple((f"P:B{i}", f"B{i}:P") for i in range(1, k + 1))
    return SpinalOpenBook((paper,), spine, matching)


# -- framings ----------------------------------------------------------------

@dataclass(frozen=True)
class FramedSpinalOpenBook:
    """A book with a chosen section of the spine.

    ``framings[i]`` is the degree vector of the section over a basis of H_1 of
    the i-th vertebra; ``interface_slopes`` maps each interface torus to the
    dividing slope (-p, q).
    """

    underlying: SpinalOpenBook
    framings: tuple[tuple[int, ...], ...]
    interface_slopes: tuple[tuple[tuple[str, str], tuple[int, int]], ...] = field(default=())

    def __post_init__(self) -> None:
        book = self.underlying
        if len(self.framings) != len(book.spine):
            raise DomainError("one framing vector per spine component")
        for s, vec in zip(book.spine, self.framings):
            if len(vec) != s.vertebra.first_betti:
                raise DomainError(f"framing of {s.name} needs {s.vertebra.first_betti} degrees")
        slopes = dict(self.interface_slopes) if self.interface_slopes else {
            pair: (-1, 2) for pair in book.matching}
        if set(slopes) != set(book.matching):
            raise DomainError("one dividing slope per interface torus")
        for pair, (a, b) in slopes.items():
            if not (a < 0 and b > 0):
                raise DomainError(f"dividing slope {(a, b)} at {pair} must be (-p, q) with p, q > 0")
        object.__setattr__(self, "framings", tuple(tuple(v) for v in self.framings))
        object.__setattr__(self, "interface_slopes", tuple(sorted(slopes.items())))


def framed(book: SpinalOpenBook) -> FramedSpinalOpenBook:
    """The book with the zero section and default (-1, 2) slopes."""
    return FramedSpinalOpenBook(book, tuple((0,) * s.vertebra.first_betti for s in book.spine))


def change_framing(fb: FramedSpinalOpenBook, spine_index: int, basis_direction: int,
                   delta: int) -> FramedSpinalOpenBook:
    """Spin the spine section: shift one degree by ``delta``; the book itself is unchanged."""
    if not 0 <= spine_index < len(fb.framings):
        raise DomainError(f"spine index {spine_index} out of range")
    vec = list(fb.framings[spine_index])
    if not 0 <= basis_direction < len(vec):
        raise DomainError(f"basis direction {basis_direction} out of range")
    vec[basis_direction] += delta
    framings = list(fb.framings)
    framings[spine_index] = tuple(vec)
    return replace(fb, framings=tuple(framings))


# -- total monodromy ---------------------------------------------------------

def conjugate(w: TwistWord, label: str | None) -> TwistWord:
    """i . w . i^-1 for an identification named ``label`` (None or "id" for identity)."""
    if label is None or label == IDENTITY_GLUING:
        return w
    i = OpaqueBlock(label, UNKNOWN)
    return Product((i, w, Power(Product((i,)), -1)))


def total_monodromy(book: SpinalOpenBook, identifications: Sequence[tuple[str, str | None]],
                    page: Surface | None = None) -> Product:
    """phi_1^{i_1} ... phi_n^{i_n} over a common page, in the order given."""
    names = [n for n, _ in identifications]
    if sorted(names) != sorted(p.name for p in book.paper):
        raise TopologyError("need exactly one identification per paper component")
    target = page or book.page
    factors = []
    for name, label in identifications:
        comp = book.paper_component(name)
        if comp.page != target:
            raise TopologyError(f"page of {name} is {comp.page}, not {target}")
        factors.append(conjugate(comp.monodromy, label))
    return Product(tuple(factors))


def check_positive_coset_certificate(
    phi: TwistWord,
    candidate: tuple[TwistWord, Iterable[TwistWord]],
    h: int,
    model: CurveModel,
) -> Verdict:
    """Check a claimed factorization phi = (positive twists) (commutators) homologically.

    The certificate must use fewer than ``h`` commutators.  Nothing is searched.
    """
    twists_part, comms = candidate
    comms = list(comms)
    if len(comms) >= h:
        raise DomainError(f"certificate uses {len(comms)} commutators, need fewer than {h}")
    if not is_positive(twists_part):
        raise DomainError("twist part of the certificate is not positive")
    for c in comms:
        if not (isinstance(c, Commutator) or (isinstance(c, OpaqueBlock) and c.kind == "commutator")):
            raise DomainError("commutator list holds a non-commutator")
    return certify_relation(phi, Product((twists_part, *comms)), model)

