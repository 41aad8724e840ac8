"""Space terms: finite spaces, disjoint sums, multiples, catalog references
and fibrous decompositions.

Terms are immutable trees compared structurally. Attaching maps are not
stored; a decomposition records its fibers only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .errors import TermError

# Value of the associated level function on a fiber: the integer ``i`` for a
# transitional fiber X_i, the open interval ``(j - 1, j)`` for a running Y_j.
Level = Union[int, tuple[int, int]]


def _check_count(value, what: str, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TermError(f"{what} must be an integer, got {value!r}")
    if value < minimum:
        raise TermError(f"{what} must be >= {minimum}, got {value}")


@dataclass(frozen=True)
class Finite:
    """Discrete space with ``points`` points; ``Finite(0)`` is empty."""

    points: int

    def __post_init__(self):
        _check_count(self.points, "point count", 0)


@dataclass(frozen=True)
class Sum:
    """Disjoint topological sum of ``parts``, in order."""

    parts: tuple["SpaceTerm", ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise TermError("a sum needs at least one part")
        for part in self.parts:
            _check_term(part)


@dataclass(frozen=True)
class Multiple:
    """``count`` disjoint copies of ``base``."""

    count: int
    base: "SpaceTerm"

    def __post_init__(self):
        _check_count(self.count, "multiple count", 1)
        _check_term(self.base)


@dataclass(frozen=True)
class CatalogRef:
    name: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise TermError(f"catalog name must be a non-empty string, got {self.name!r}")
        object.__setattr__(self, "params", tuple(self.params))
        for p in self.params:
            _check_count(p, "catalog parameter", 0)


@dataclass(frozen=True)
class Decomp:
    """Fibrous decomposition X0(Y1)X1...(Yn)Xn.

    ``transitional`` holds X0..Xn, ``running`` holds Y1..Yn.
    """

    transitional: tuple["SpaceTerm", ...]
    running: tuple["SpaceTerm", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "transitional", tuple(self.transitional))
        object.__setattr__(self, "running", tuple(self.running))
        if len(self.transitional) != len(self.running) + 1:
            raise TermError(
                f"a decomposition of length {len(self.running)} needs "
                f"{len(self.running) + 1} transitional fibers, got {len(self.transitional)}"
            )
        for fiber in self.transitional + self.running:
            _check_term(fiber)

    @classmethod
    def of(cls, *fibers: "SpaceTerm") -> "Decomp":
        """Build from the alternating sequence X0, Y1, X1, ..., Yn, Xn."""
        if len(fibers) % 2 == 0:
            raise TermError("alternating fiber sequence must have odd length")
        return cls(fibers[0::2], fibers[1::2])

    @property
    def length(self) -> int:
        return len(self.running)

    def fibers(self) -> Iterator[tuple[int, Level, "SpaceTerm"]]:
        """Yield ``(sign, level, fiber)`` in the order X0, Y1, X1, ..., Yn, Xn."""
        yield 1, 0, self.transitional[0]
        for j, (y, x) in enumerate(zip(self.running, self.transitional[1:]), start=1):
            yield -1, (j - 1, j), y
            yield 1, j, x


FibrousDecomposition = Decomp

SpaceTerm = Union[Finite, Sum, Multiple, CatalogRef, Decomp]
TERM_TYPES = (Finite, Sum, Multiple, CatalogRef, Decomp)


def _check_term(value) -> None:
    if not isinstance(value, TERM_TYPES):
        raise TermError(f"expected a space term, got {type(value).__name__}")


def point(n: int = 1) -> Finite:
    return Finite(n)


def subterms(term: SpaceTerm) -> Iterator[SpaceTerm]:
    """Pre-order walk over ``term`` and all nested terms."""
    stack = [term]
    while stack:
        t = stack.pop()
        yield t
        if isinstance(t, Sum):
            stack.extend(reversed(t.parts))
        elif isinstance(t, Multiple):
            stack.append(t.base)
        elif isinstance(t, Decomp):
            stack.extend(reversed([f for _, _, f in t.fibers()]))
