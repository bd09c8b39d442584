"""Plumbing graphs of circle bundles over surfaces and the first homology they present.

H_1 of the plumbed 3-manifold is taken from the standard presentation: each
vertex of genus g contributes 2g free generators, and the fiber classes are
presented by the linking matrix.  So H_1 = Z^(sum 2g) + coker(linking matrix).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .families import check_parameters

Matrix = list[list[int]]


@dataclass(frozen=True)
class Vertex:
    genus: int
    euler: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise DomainError("vertex genus must be non-negative")


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(
            v if isinstance(v, Vertex) else Vertex(*v) for v in self.vertices))
        n = len(self.vertices)
        if n == 0:
            raise DomainError("plumbing graph needs a vertex")
        edges = []
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise DomainError(f"bad edge ({a}, {b})")
            edges.append((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(edges))
        seen, stack = {0}, [0]
        adj: dict[int, list[int]] = {i: [] for i in range(n)}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != n:
            raise DomainError("plumbing graph must be connected")

    @property
    def framings(self) -> list[int]:
        return [v.euler for v in self.vertices]

    def permuted(self, order: Sequence[int]) -> PlumbingGraph:
        """Same graph with vertex ``order[i]`` moved to position i."""
        pos = {old: new for new, old in enumerate(order)}
        return PlumbingGraph(tuple(self.vertices[i] for i in order),
                             tuple((pos[a], pos[b]) for a, b in self.edges))


@dataclass(frozen=True)
class HomologyResult:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def build_Y(g: int, h: int, n: int) -> PlumbingGraph:
    """Y_{g,h,n}: an euler-number-0 bundle over Σ_g plumbed once with an n bundle over Σ_h."""
    check_parameters(g, h, n, 0)
    return PlumbingGraph((Vertex(g, 0), Vertex(h, n)), ((0, 1),))


def build_generalized(k: int, l: int, g: int, h: int, framings: Sequence[int]) -> PlumbingGraph:
    """k top vertices (g, 0) each plumbed once to each of l bottom vertices (h, r_i)."""
    if k < 1 or l < 1:
        raise DomainError("need at least one top and one bottom vertex")
    if len(framings) != l:
        raise DomainError(f"expected {l} framings, got {len(framings)}")
    if g < 0 or h < 0:
        raise DomainError("genera must be non-negative")
    vertices = [Vertex(g, 0)] * k + [Vertex(h, r) for r in framings]
    edges = [(i, k + j) for i in range(k) for j in range(l)]
    return PlumbingGraph(tuple(vertices), tuple(edges))


def linking_matrix(p: PlumbingGraph) -> Matrix:
    n = len(p.vertices)
    mat = [[0] * n for _ in range(n)]
    for i, v in enumerate(p.vertices):
        mat[i][i] = v.euler
    for a, b in p.edges:
        mat[a][b] += 1
        mat[b][a] += 1
    return mat


def smith_invariants(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Non-zero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best, pivot = abs(a[i][j]), (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, i, j = min(cands)
                if j == t:
                    a[t], a[i] = a[i], a[t]
                else:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def first_homology(p: PlumbingGraph) -> HomologyResult:
    mat = linking_matrix(p)
    factors = smith_invariants(mat)
    corank = len(mat) - len(factors)
    free = sum(2 * v.genus for v in p.vertices) + corank
    return HomologyResult(free, tuple(d for d in factors if d > 1))


def to_json_dict(p: PlumbingGraph) -> dict:
    return {
        "schema": "steinfill/plumbing-graph/1",
        "vertices": [{"genus": v.genus, "euler": v.euler} for v in p.vertices],
        "edges": [list(e) for e in p.edges],
        "framings": p.framings,
    }


def from_json_dict(data: dict) -> PlumbingGraph:
    return PlumbingGraph(
        tuple(Vertex(int(v["genus"]), int(v["euler"])) for v in data["vertices"]),
        tuple((int(a), int(b)) for a, b in data["edges"]),
    )
