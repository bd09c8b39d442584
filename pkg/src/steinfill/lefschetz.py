"""Lefschetz fibration records, their numerical invariants, fiber sums and excision."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError, IntegralityError, NotAllowableError
from .families import (
    Factorization,
    build_factorization,
    chain_word,
    check_parameters,
    vanishing_cycles_of,
)
from .surface import Surface, VanishingCycle, standard_model
from .words import EMPTY, Product, TwistWord


@dataclass(frozen=True)
class SectionRecord:
    label: str
    self_intersection: int


@dataclass(frozen=True)
class LefschetzFibration:
    fiber_genus: int
    base_genus: int
    vanishing_cycles: tuple[VanishingCycle, ...] = ()
    fiber_boundary_components: int = 0
    base_boundary_components: int = 0
    commutator_count: int = 0
    sections: tuple[SectionRecord, ...] = ()
    signature: int | None = None
    monodromy: TwistWord = field(default=EMPTY, compare=False, repr=False)

    @property
    def fiber(self) -> Surface:
        return Surface(self.fiber_genus, self.fiber_boundary_components)

    @property
    def base(self) -> Surface:
        return Surface(self.base_genus, self.base_boundary_components)

    @property
    def critical_points(self) -> int:
        return len(self.vanishing_cycles)

    @property
    def nonseparating_count(self) -> int:
        return sum(1 for v in self.vanishing_cycles if not v.is_separating)

    def separating_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for v in self.vanishing_cycles:
            if v.separating_split is not None:
                counts[v.separating_split] = counts.get(v.separating_split, 0) + 1
        return counts

    @property
    def allowable(self) -> bool:
        return (self.fiber_boundary_components > 0 and self.base_boundary_components > 0
                and not any(v.is_separating for v in self.vanishing_cycles))

    def section(self, label: str) -> SectionRecord:
        for s in self.sections:
            if s.label == label:
                return s
        raise DomainError(f"no section labelled {label!r}")


@dataclass(frozen=True)
class InvariantReport:
    M: int
    euler: int
    signature: int | None = None
    c1_squared: int | None = None
    c2: int | None = None
    hyperelliptic: bool = False

    def __post_init__(self) -> None:
        if self.signature is not None:
            assert self.c1_squared == 2 * self.euler + 3 * self.signature
            assert self.c2 == self.euler


def critical_count(g: int, h: int, n: int, m: int) -> int:
    """Number M(m) of critical points of X_{g,h,n}(m)."""
    check_parameters(g, h, n, m)
    chain = 8 * g * g + 4 * g
    if h == 1:
        return 10 * m - chain * n
    return (8 * g + 4) * m + chain * (2 * h - 2 - n)


def euler_characteristic(f: LefschetzFibration) -> int:
    """e(X) = e(F) e(B) + number of critical points (valid for bounded F or B as well)."""
    return f.fiber.euler_characteristic * f.base.euler_characteristic + f.critical_points


def endo_signature(g: int, N: int, s: Mapping[int, int] | None = None) -> int:
    """Endo's signature of a hyperelliptic genus g fibration.

    ``N`` counts non-separating vanishing cycles and ``s[j]`` the separating ones
    that cut off genus j.  Computed exactly; a fractional value means the counts
    cannot come from a hyperelliptic fibration.
    """
    if g < 1:
        raise DomainError(f"genus must be positive, got {g}")
    if N < 0:
        raise DomainError("N must be non-negative")
    total = Fraction(-(g + 1), 2 * g + 1) * N
    for j, sj in (s or {}).items():
        if not 1 <= j <= g // 2:
            raise DomainError(f"separating split j={j} outside 1..{g // 2}")
        if sj < 0:
            raise DomainError("separating counts must be non-negative")
        total += (Fraction(4 * j * (g - j), 2 * g + 1) - 1) * sj
    if total.denominator != 1:
        raise IntegralityError(f"signature {total} is not an integer for g={g}, N={N}, s={dict(s or {})}")
    return int(total)


def genus2_family_signature(h: int, n: int, m: int) -> int:
    if h == 1:
        return -6 * m + 24 * n
    return -12 * m - 24 * (2 * h - 2 - n)


def family_fibration(g: int, h: int, n: int, m: int) -> LefschetzFibration:
    """The fibration X_{g,h,n}(m) with its distinguished section S of square n."""
    return from_factorization(build_factorization(g, h, n, m))


def from_factorization(fact: Factorization, section_label: str = "S") -> LefschetzFibration:
    g = fact.genus
    sig = None
    if g == 2:
        sig = endo_signature(2, len(fact.vanishing_cycles))
    return LefschetzFibration(
        fiber_genus=g,
        base_genus=fact.base_genus,
        vanishing_cycles=fact.vanishing_cycles,
        commutator_count=len(fact.commutator_blocks),
        sections=(SectionRecord(section_label, fact.section_self_intersection),),
        signature=sig,
        monodromy=fact.word,
    )


def sphere_chain_fibration(g: int, section_label: str = "S") -> LefschetzFibration:
    """Genus g fibration over the sphere from the chain relation t_delta = R.

    The single boundary twist on the left gives a section of square -1.
    """
    w = chain_word(g)
    cycles = vanishing_cycles_of(w, standard_model(g))
    return LefschetzFibration(
        fiber_genus=g, base_genus=0,
        vanishing_cycles=tuple(cycles),
        sections=(SectionRecord(section_label, -1),),
        signature=endo_signature(g, len(cycles)) if g == 2 else None,
        monodromy=w,
    )


def with_pushoffs(f: LefschetzFibration, label: str, count: int) -> LefschetzFibration:
    """Replace a square-zero section by ``count`` disjoint parallel copies."""
    s = f.section(label)
    if s.self_intersection != 0:
        raise DomainError("only square-zero sections have disjoint push-offs")
    if count < 1:
        raise DomainError("need at least one copy")
    copies = [SectionRecord(label if i == 0 else f"{label}.{i + 1}", 0) for i in range(count)]
    others = tuple(x for x in f.sections if x.label != label)
    return replace(f, sections=others + tuple(copies))


def family_invariants(g: int, h: int, n: int, m: int) -> InvariantReport:
    M = critical_count(g, h, n, m)
    e = 4 * (g - 1) * (h - 1) + M
    if g != 2:
        return InvariantReport(M, e)
    sig = genus2_family_signature(h, n, m)
    if sig != endo_signature(2, M):
        raise AssertionError(f"closed form {sig} disagrees with Endo's formula")
    return InvariantReport(M, e, sig, 2 * e + 3 * sig, e, hyperelliptic=True)


def invariants(f: LefschetzFibration) -> InvariantReport:
    e = euler_characteristic(f)
    sig = f.signature
    if sig is None:
        return InvariantReport(f.critical_points, e, hyperelliptic=f.fiber_genus == 2)
    return InvariantReport(f.critical_points, e, sig, 2 * e + 3 * sig, e,
                           hyperelliptic=f.fiber_genus == 2)


# -- excision ----------------------------------------------------------------

def excised_euler_identity(euler: int, g: int, h: int) -> int:
    """e(X-check) from e(X) = e(X-check) + 3 - 2(g+h) (one fiber, one section)."""
    return euler - 3 + 2 * (g + h)


def excised_euler_oracle(euler: int, g: int, h: int, fibers: int = 1, sections: int = 1) -> int:
    """e(X-check) = e(X) - e(F_1 u ... u S_1 u ...); fibers and sections meet once per pair."""
    removed = fibers * (2 - 2 * g) + sections * (2 - 2 * h) - fibers * sections
    return euler - removed


def excise_fiber_and_sections(
    f: LefschetzFibration, section_labels: Sequence[str], fibers: int = 1,
):
    """Remove fibered neighbourhoods of regular fibers and the named sections.

    Returns the allowable fibration on the complement and the spinal open book it
    induces on the boundary.  Each removed section becomes a spine component over
    the punctured base, framed by the section's self-intersection; each removed
    fiber becomes a paper component.  The factorization word is carried by the
    first paper component and the others get the empty word.
    """
    from .spinal import PaperComponent, SpinalOpenBook, SpineComponent

    if f.fiber_boundary_components or f.base_boundary_components:
        raise DomainError("excision starts from a closed fiber over a closed base")
    if not section_labels:
        raise DomainError("at least one section must be excised")
    if len(set(section_labels)) != len(section_labels):
        raise DomainError("section labels repeat")
    if fibers < 1:
        raise DomainError("at least one fiber must be excised")
    if any(v.is_separating for v in f.vanishing_cycles):
        raise NotAllowableError("separating vanishing cycle: the complement is not allowable")
    chosen = [f.section(label) for label in section_labels]
    l = len(chosen)
    remaining = tuple(s for s in f.sections if s.label not in section_labels)
    check = replace(
        f,
        fiber_boundary_components=l,
        base_boundary_components=fibers,
        sections=remaining,
    )
    page = Surface(f.fiber_genus, l)
    vertebra = Surface(f.base_genus, fibers)
    papers = []
    for i in range(fibers):
        name = f"P{i + 1}"
        papers.append(PaperComponent(
            name, page, f.monodromy if i == 0 else EMPTY,
            tuple(f"{name}:{s.label}" for s in chosen)))
    spines = []
    matching = []
    for s in chosen:
        name = f"S:{s.label}"
        spines.append(SpineComponent(
            name, vertebra, tuple(f"{name}:P{i + 1}" for i in range(fibers)),
            framing=s.self_intersection))
        for i in range(fibers):
            matching.append((f"P{i + 1}:{s.label}", f"{name}:P{i + 1}"))
    book = SpinalOpenBook(tuple(papers), tuple(spines), tuple(matching))
    if not check.allowable:  # pragma: no cover - guaranteed by the checks above
        raise NotAllowableError("excised fibration is not allowable")
    return check, book


def fiber_sum(
    f1: LefschetzFibration,
    f2: LefschetzFibration,
    section_pairing: Sequence[tuple[str, str]],
) -> LefschetzFibration:
    """Fiber sum of f1 (closed base) with f2 over the sphere, patching paired sections.

    Paired sections merge with self-intersections added; unpaired sections do not
    survive.  The signature is additive when both are known.
    """
    if f1.fiber_genus != f2.fiber_genus:
        raise DomainError(f"fiber genera differ: {f1.fiber_genus} vs {f2.fiber_genus}")
    if f2.base_genus != 0 or f2.base_boundary_components:
        raise DomainError("second summand must be fibered over the sphere")
    if f1.base_boundary_components or f1.fiber_boundary_components or f2.fiber_boundary_components:
        raise DomainError("fiber sum needs closed fibers over closed bases")
    if not f2.vanishing_cycles:
        raise DomainError("second summand has no critical points (trivial bundle)")
    firsts = [a for a, _ in section_pairing]
    seconds = [b for _, b in section_pairing]
    if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
        raise DomainError("section pairing is not one-to-one")
    merged = []
    for a, b in section_pairing:
        try:
            sa, sb = f1.section(a), f2.section(b)
        except DomainError as exc:
            raise DomainError(f"unmatched section label: {exc}") from None
        merged.append(SectionRecord(a, sa.self_intersection + sb.self_intersection))
    sig = None
    if f1.signature is not None and f2.signature is not None:
        sig = f1.signature + f2.signature
    return LefschetzFibration(
        fiber_genus=f1.fiber_genus,
        base_genus=f1.base_genus + f2.base_genus,
        vanishing_cycles=f1.vanishing_cycles + f2.vanishing_cycles,
        commutator_count=f1.commutator_count + f2.commutator_count,
        sections=tuple(merged),
        signature=sig,
        monodromy=Product((f1.monodromy, f2.monodromy)),
    )
