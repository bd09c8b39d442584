"""Model surfaces, their named curves and the symplectic action of Dehn twists.

Homology classes live in H_1 of a genus g surface written in the fixed basis
x_1, y_1, ..., x_g, y_g with <x_i, y_i> = +1.  A positive Dehn twist about a
curve c acts by the transvection v -> v + <v, c> c.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class Surface:
    """Compact oriented surface of given genus, boundary count and marked points."""

    genus: int
    boundary_components: int = 0
    marked_points: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0 or self.boundary_components < 0 or self.marked_points < 0:
            raise DomainError(f"surface counts must be non-negative: {self}")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_components

    @property
    def is_closed(self) -> bool:
        return self.boundary_components == 0

    @property
    def first_betti(self) -> int:
        """Rank of H_1 (with boundary circles contributing when present)."""
        if self.boundary_components == 0:
            return 2 * self.genus
        return 2 * self.genus + self.boundary_components - 1

    def __str__(self) -> str:
        s = f"Σ_{self.genus}"
        if self.boundary_components:
            s += f"^{self.boundary_components}"
        if self.marked_points:
            s += f"[{self.marked_points}]"
        return s


@dataclass(frozen=True)
class HomologyClass:
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) % 2:
            raise DimensionError("homology vectors have even length 2g")
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @classmethod
    def zero(cls, genus: int) -> HomologyClass:
        return cls((0,) * (2 * genus))

    @classmethod
    def basis(cls, genus: int, index: int) -> HomologyClass:
        v = [0] * (2 * genus)
        v[index] = 1
        return cls(tuple(v))

    @classmethod
    def x(cls, i: int, genus: int) -> HomologyClass:
        return cls.basis(genus, 2 * (i - 1))

    @classmethod
    def y(cls, i: int, genus: int) -> HomologyClass:
        return cls.basis(genus, 2 * (i - 1) + 1)

    @property
    def genus(self) -> int:
        return len(self.coefficients) // 2

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def _check(self, other: HomologyClass) -> None:
        if len(self.coefficients) != len(other.coefficients):
            raise DimensionError(
                f"length mismatch: {len(self.coefficients)} vs {len(other.coefficients)}"
            )

    def __add__(self, other: HomologyClass) -> HomologyClass:
        self._check(other)
        return HomologyClass(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: HomologyClass) -> HomologyClass:
        self._check(other)
        return HomologyClass(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> HomologyClass:
        return HomologyClass(tuple(-a for a in self.coefficients))

    def __rmul__(self, k: int) -> HomologyClass:
        return HomologyClass(tuple(k * a for a in self.coefficients))

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __str__(self) -> str:
        terms = []
        for idx, c in enumerate(self.coefficients):
            if not c:
                continue
            name = ("x" if idx % 2 == 0 else "y") + str(idx // 2 + 1)
            coef = "" if c == 1 else "-" if c == -1 else f"{c}"
            terms.append(f"{coef}{name}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _coeffs(v: HomologyClass | Sequence[int]) -> tuple[int, ...]:
    return v.coefficients if isinstance(v, HomologyClass) else tuple(v)


def intersection(u: HomologyClass | Sequence[int], v: HomologyClass | Sequence[int]) -> int:
    """Algebraic intersection <u, v> with <x_i, y_i> = +1."""
    a, b = _coeffs(u), _coeffs(v)
    if len(a) != len(b) or len(a) % 2:
        raise DimensionError(f"cannot pair vectors of lengths {len(a)} and {len(b)}")
    total = 0
    for i in range(0, len(a), 2):
        total += a[i] * b[i + 1] - a[i + 1] * b[i]
    return total


@dataclass(frozen=True)
class NamedCurve:
    """A simple closed curve known only through its homology class and metadata.

    ``separating_split`` is the genus of the smaller side of a separating curve.
    Boundary-parallel curves are null-homologous without being separating in the
    sense that matters for vanishing cycles, so they carry no split.
    """

    name: str
    homology: HomologyClass
    separating_split: int | None = None
    boundary_parallel: bool = False

    def __post_init__(self) -> None:
        g = self.homology.genus
        if self.homology.is_zero:
            if self.boundary_parallel:
                if self.separating_split is not None:
                    raise DomainError(f"{self.name}: boundary-parallel curve has no split")
                return
            if self.separating_split is None:
                raise DomainError(f"{self.name}: null-homologous curve needs a separating split")
            j = min(self.separating_split, g - self.separating_split)
            if not 1 <= j <= g // 2:
                raise DomainError(f"{self.name}: split {self.separating_split} invalid at genus {g}")
            object.__setattr__(self, "separating_split", j)
        else:
            if self.separating_split is not None or self.boundary_parallel:
                raise DomainError(f"{self.name}: homologically essential curve cannot separate")

    @property
    def is_separating(self) -> bool:
        return self.separating_split is not None

    @property
    def is_nonseparating(self) -> bool:
        return not self.homology.is_zero


@dataclass(frozen=True)
class VanishingCycle:
    """A vanishing cycle of a fibration; ``curve`` is None for declared-but-unknown curves."""

    curve: str | None = None
    separating_split: int | None = None

    @property
    def is_separating(self) -> bool:
        return self.separating_split is not None


def transvection(c: NamedCurve | HomologyClass, v: HomologyClass) -> HomologyClass:
    """Image of ``v`` under the positive Dehn twist about ``c``."""
    cls = c.homology if isinstance(c, NamedCurve) else c
    k = intersection(v, cls)
    return v + k * cls if k else v


def inverse_transvection(c: NamedCurve | HomologyClass, v: HomologyClass) -> HomologyClass:
    cls = c.homology if isinstance(c, NamedCurve) else c
    k = intersection(v, cls)
    return v - k * cls if k else v


@dataclass(frozen=True)
class CurveModel:
    surface: Surface
    curves: Mapping[str, NamedCurve] = field(default_factory=dict)
    chain: tuple[str, ...] = ()

    @property
    def genus(self) -> int:
        return self.surface.genus

    def __getitem__(self, name: str) -> NamedCurve:
        return self.curves[name]

    def __contains__(self, name: object) -> bool:
        return name in self.curves

    def with_curves(self, extra: Iterable[NamedCurve]) -> CurveModel:
        curves = dict(self.curves)
        for c in extra:
            if c.homology.genus != self.genus:
                raise DimensionError(f"curve {c.name} lives on the wrong genus")
            curves[c.name] = c
        return CurveModel(self.surface, curves, self.chain)


def standard_model(g: int, a1: HomologyClass | None = None) -> CurveModel:
    """Curves c_1..c_{2g-2}, b, r, a_1 and delta on the genus g surface with one boundary.

    The chain (c_1, ..., c_{2g-2}, b, r) gets x_1, y_1 - y_2, x_2, ..., x_g, y_g, so
    consecutive chain curves meet once and the rest are disjoint.  ``b`` and ``r``
    are also reachable as c_{2g-1} and c_{2g}.
    """
    if g < 2:
        raise DomainError(f"standard model needs genus >= 2, got {g}")
    X = lambda i: HomologyClass.x(i, g)  # noqa: E731
    Y = lambda i: HomologyClass.y(i, g)  # noqa: E731
    classes: list[HomologyClass] = []
    for i in range(1, g + 1):
        classes.append(X(i))
        classes.append(Y(i) - Y(i + 1) if i < g else Y(g))
    names = [f"c{i}" for i in range(1, 2 * g - 1)] + ["b", "r"]
    curves: dict[str, NamedCurve] = {}
    for name, cls in zip(names, classes):
        curves[name] = NamedCurve(name, cls)
    curves[f"c{2 * g - 1}"] = NamedCurve(f"c{2 * g - 1}", classes[-2])
    curves[f"c{2 * g}"] = NamedCurve(f"c{2 * g}", classes[-1])
    a1_class = X(g) + Y(g) if a1 is None else a1
    if a1_class.genus != g:
        raise DimensionError("a1 class has the wrong length")
    curves["a1"] = NamedCurve("a1", a1_class)
    curves["delta"] = NamedCurve("delta", HomologyClass.zero(g), boundary_parallel=True)
    return CurveModel(Surface(g, 1), curves, tuple(names))
