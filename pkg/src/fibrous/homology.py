"""Independent Euler characteristic oracles.

Simplicial complexes are checked two ways: the alternating face count, and
the alternating sum of Betti numbers obtained from integer boundary
matrices in Smith normal form. CW complexes are checked by cell counts.

All arithmetic uses Python integers, so nothing here can overflow or round.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import ComplexError, SchemaError

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract simplicial complex, closed under taking faces.

    Build instances with :func:`close_and_validate`. ``faces[k]`` is the
    sorted tuple of k-simplices, each a sorted vertex tuple.
    """

    maximal_simplices: tuple[Simplex, ...]
    faces: tuple[tuple[Simplex, ...], ...] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.faces) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(fs) for fs in self.faces)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.faces[0])

    @cached_property
    def _index(self) -> tuple[dict[Simplex, int], ...]:
        return tuple({s: i for i, s in enumerate(fs)} for fs in self.faces)

    def index_of(self, simplex: Simplex) -> int:
        return self._index[len(simplex) - 1][simplex]

    def to_json(self) -> dict:
        return {"maximal_simplices": [list(s) for s in self.maximal_simplices]}


@dataclass(frozen=True)
class CwSkeleton:
    """Cell counts alpha_0..alpha_n of a finite CW complex."""

    cell_counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(self.cell_counts)
        object.__setattr__(self, "cell_counts", counts)
        if not counts:
            raise ComplexError("a CW skeleton needs at least one cell count")
        for c in counts:
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise ComplexError(f"cell counts must be non-negative integers, got {c!r}")
        if counts[-1] == 0:
            raise ComplexError("the top-dimensional cell count must be positive")

    @property
    def dimension(self) -> int:
        return len(self.cell_counts) - 1

    def to_json(self) -> dict:
        return {"cell_counts": list(self.cell_counts)}


Realization = Union[SimplicialComplex, CwSkeleton]


def close_and_validate(maximal: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward-close a collection of simplices into a complex."""
    simplices = []
    for raw in maximal:
        verts = list(raw)
        if not verts:
            raise ComplexError("a simplex needs at least one vertex")
        for v in verts:
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ComplexError(f"vertex labels must be non-negative integers, got {v!r}")
        if len(set(verts)) != len(verts):
            raise ComplexError(f"duplicate vertex in simplex {verts}")
        simplices.append(tuple(sorted(verts)))
    if not simplices:
        raise ComplexError("a complex needs at least one simplex")

    top = max(len(s) for s in simplices)
    layers: list[set[Simplex]] = [set() for _ in range(top)]
    for s in set(simplices):
        for k in range(1, len(s) + 1):
            layers[k - 1].update(combinations(s, k))

    given = set(simplices)
    maximal_set = [
        s for s in given
        if not any(len(t) > len(s) and set(s) <= set(t) for t in given)
    ]
    return SimplicialComplex(
        maximal_simplices=tuple(sorted(maximal_set, key=lambda s: (len(s), s))),
        faces=tuple(tuple(sorted(layer)) for layer in layers),
    )


def disjoint_union(*complexes: SimplicialComplex) -> SimplicialComplex:
    """Disjoint union, relabelling each summand's vertices past the previous ones."""
    maximal: list[Simplex] = []
    offset = 0
    for c in complexes:
        relabel = {v: offset + i for i, v in enumerate(c.vertices)}
        maximal.extend(tuple(relabel[v] for v in s) for s in c.maximal_simplices)
        offset += len(relabel)
    return close_and_validate(maximal)


def cell_counts(r: Realization) -> tuple[int, ...]:
    """Cell counts of a realization; simplices count as cells."""
    if isinstance(r, SimplicialComplex):
        return r.f_vector
    return r.cell_counts


def chi_by_faces(c: SimplicialComplex) -> int:
    return sum((-1) ** k * f for k, f in enumerate(c.f_vector))


def chi_by_cells(k: CwSkeleton) -> int:
    return sum((-1) ** i * a for i, a in enumerate(k.cell_counts))


# -- integer linear algebra ---------------------------------------------------


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")
        for r in entries:
            for x in r:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise TypeError(f"matrix entries must be int, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = [
            [sum(a * other.entries[k][j] for k, a in enumerate(row) if a) for j in range(other.cols)]
            for row in self.entries
        ]
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def smith_normal_form(m: IntegerMatrix) -> SnfResult:
    """Invariant factors d_1 | d_2 | ... | d_r of an integer matrix.

    Each stage moves the smallest nonzero entry of the remaining block to the
    pivot, clears its row and column by division with remainder, and repeats
    until the pivot divides every other entry of the block.
    """
    a = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    factors = []

    for t in range(min(nrows, ncols)):
        pos = _smallest_nonzero(a, t, range(t, nrows), range(t, ncols))
        if pos is None:
            break
        _move_to_pivot(a, t, pos)
        while True:
            dirty = False
            piv = a[t][t]
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // piv
                    row_i, row_t = a[i], a[t]
                    for j in range(t, ncols):
                        row_i[j] -= q * row_t[j]
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // piv
                    for i in range(t, nrows):
                        a[i][j] -= q * a[i][t]
                    dirty = dirty or a[t][j] != 0
            if dirty:
                cross = [(t, j) for j in range(t, ncols)] + [(i, t) for i in range(t + 1, nrows)]
                best = min((p for p in cross if a[p[0]][p[1]]), key=lambda p: abs(a[p[0]][p[1]]))
                _move_to_pivot(a, t, best)
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            # fold the offending row into the pivot row; the next pass leaves a smaller remainder
            for j in range(t, ncols):
                a[t][j] += a[bad][j]
        factors.append(abs(a[t][t]))
    return SnfResult(tuple(factors))


def _smallest_nonzero(a, t, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            x = a[i][j]
            if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def _move_to_pivot(a, t, pos):
    i, j = pos
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


# -- homology -----------------------------------------------------------------


def boundary_matrix(c: SimplicialComplex, k: int) -> IntegerMatrix:
    """Boundary operator from k-chains to (k-1)-chains.

    Omitting the vertex at position i of a sorted simplex contributes sign (-1)^i.
    """
    if not 1 <= k <= c.dimension:
        raise ComplexError(f"boundary degree {k} outside 1..{c.dimension}")
    rows = [[0] * len(c.faces[k]) for _ in c.faces[k - 1]]
    for col, s in enumerate(c.faces[k]):
        for i in range(len(s)):
            rows[c.index_of(s[:i] + s[i + 1:])][col] = -1 if i % 2 else 1
    return IntegerMatrix(len(c.faces[k - 1]), len(c.faces[k]), rows)


@dataclass(frozen=True)
class Homology:
    """Integral homology ranks and torsion; ``torsion[k]`` lists factors of H_k."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    @property
    def chi(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))


def homology(c: SimplicialComplex) -> Homology:
    dim = c.dimension
    snfs = [None] + [smith_normal_form(boundary_matrix(c, k)) for k in range(1, dim + 1)] + [None]
    ranks = [s.rank if s else 0 for s in snfs]
    betti = tuple(c.f_vector[k] - ranks[k] - ranks[k + 1] for k in range(dim + 1))
    torsion = tuple(snfs[k + 1].torsion if snfs[k + 1] else () for k in range(dim + 1))
    return Homology(betti, torsion)


def betti_numbers(c: SimplicialComplex) -> list[int]:
    return list(homology(c).betti)


def chi_by_betti(c: SimplicialComplex) -> int:
    return homology(c).chi


# -- file formats -------------------------------------------------------------


def complex_from_json(obj) -> SimplicialComplex:
    """Read ``{"maximal_simplices": [[int, ...], ...]}``."""
    if not isinstance(obj, dict) or "maximal_simplices" not in obj:
        raise SchemaError('expected an object with key "maximal_simplices"')
    simplices = obj["maximal_simplices"]
    if not isinstance(simplices, list) or not all(isinstance(s, list) for s in simplices):
        raise SchemaError('"maximal_simplices" must be a list of integer lists')
    for s in simplices:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in s):
            raise SchemaError('"maximal_simplices" must be a list of integer lists')
    return close_and_validate(simplices)


def skeleton_from_json(obj) -> CwSkeleton:
    """Read ``{"cell_counts": [int, ...]}``."""
    if not isinstance(obj, dict) or "cell_counts" not in obj:
        raise SchemaError('expected an object with key "cell_counts"')
    counts = obj["cell_counts"]
    if not isinstance(counts, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in counts
    ):
        raise SchemaError('"cell_counts" must be a list of integers')
    return CwSkeleton(tuple(counts))
