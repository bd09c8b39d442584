"""Exact integer symplectic matrices.

Matrices are stored as tuples of rows of Python ints, so entries never overflow.
The form is J = diag(S, ..., S) with S = [[0, 1], [-1, 0]], i.e. <u, v> = u^T J v.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionError, DomainError
from .surface import HomologyClass, intersection

Rows = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def form_matrix(dim: int) -> Rows:
    if dim % 2:
        raise DimensionError("symplectic form needs even dimension")
    rows = [[0] * dim for _ in range(dim)]
    for i in range(0, dim, 2):
        rows[i][i + 1] = 1
        rows[i + 1][i] = -1
    return tuple(tuple(r) for r in rows)


def _matmul(a: Rows, b: Rows) -> Rows:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _transpose(a: Rows) -> Rows:
    return tuple(zip(*a))


@dataclass(frozen=True)
class SpMatrix:
    """A 2g x 2g integer matrix M with M^T J M = J, checked on construction."""

    rows: Rows

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        if n % 2 or any(len(r) != n for r in rows):
            raise DimensionError(f"expected an even square matrix, got {n} rows")
        object.__setattr__(self, "rows", rows)
        J = form_matrix(n)
        if _matmul(_matmul(_transpose(rows), J), rows) != J:
            raise DomainError("matrix does not preserve the symplectic form")

    @classmethod
    def _trusted(cls, rows: Rows) -> SpMatrix:
        # skips the form check; only for products/inverses of checked matrices
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        return obj

    @classmethod
    def identity(cls, dim: int) -> SpMatrix:
        return cls._trusted(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def transvection(cls, c: HomologyClass) -> SpMatrix:
        """Matrix of v -> v + <v, c> c."""
        cs = c.coefficients
        n = len(cs)
        # <v, c> = sum_j v_j (J c)_j
        jc = [0] * n
        for i in range(0, n, 2):
            jc[i] = cs[i + 1]
            jc[i + 1] = -cs[i]
        return cls(tuple(tuple(int(i == j) + cs[i] * jc[j] for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: SpMatrix) -> SpMatrix:
        if self.dim != other.dim:
            raise DimensionError(f"cannot compose {self.dim} and {other.dim} dimensional maps")
        out = SpMatrix._trusted(_matmul(self.rows, other.rows))
        return out.checked()

    def checked(self) -> SpMatrix:
        J = form_matrix(self.dim)
        if _matmul(_matmul(_transpose(self.rows), J), self.rows) != J:
            raise DomainError("product left the symplectic group")
        return self

    def inverse(self) -> SpMatrix:
        # M^{-1} = J^{-1} M^T J = -J M^T J
        J = form_matrix(self.dim)
        m = _matmul(_matmul(J, _transpose(self.rows)), J)
        return SpMatrix._trusted(tuple(tuple(-x for x in r) for r in m))

    def __pow__(self, k: int) -> SpMatrix:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = SpMatrix.identity(self.dim)
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def apply(self, v: HomologyClass) -> HomologyClass:
        if len(v) != self.dim:
            raise DimensionError("vector length does not match matrix")
        return HomologyClass(tuple(sum(a * b for a, b in zip(r, v.coefficients)) for r in self.rows))

    def column(self, j: int) -> HomologyClass:
        return HomologyClass(tuple(r[j] for r in self.rows))

    def is_identity(self) -> bool:
        return self == SpMatrix.identity(self.dim)

    def preserves_form(self) -> bool:
        n = self.dim
        return all(
            intersection(self.column(i), self.column(j)) == intersection(
                HomologyClass.basis(n // 2, i), HomologyClass.basis(n // 2, j))
            for i in range(n) for j in range(n)
        )

    def __str__(self) -> str:
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)
