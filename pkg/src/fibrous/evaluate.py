"""Inductive Euler characteristic of space terms.

For a fibrous decomposition X0(Y1)X1...(Yn)Xn the characteristic is the
alternating sum chi(X0) - chi(Y1) + chi(X1) - ... - chi(Yn) + chi(Xn), where
each fiber is evaluated the same way. Finite spaces count their points.
Every step is recorded in a :class:`ChiDerivation` tree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

from .catalog import BUILTIN, Catalog
from .errors import ExpansionDepthError
from .terms import CatalogRef, Decomp, Finite, Level, Multiple, SpaceTerm, Sum

DEFAULT_MAX_DEPTH = 128


class Rule(str, enum.Enum):
    FINITE_COUNT = "finite-count"
    SUM_ADDITIVITY = "sum-additivity"
    MULTIPLE = "multiple"
    CATALOG_EXPANSION = "catalog-expansion"
    ALTERNATING_SUM = "alternating-sum"


@dataclass(frozen=True)
class ChiDerivation:
    """One evaluation step.

    ``children`` pairs a sign with a sub-derivation. For alternating sums,
    ``levels`` gives the level of each child fiber: ``i`` for X_i and
    ``(j - 1, j)`` for Y_j.
    """

    term: SpaceTerm
    chi: int
    rule: Rule
    children: tuple[tuple[int, "ChiDerivation"], ...] = ()
    levels: Optional[tuple[Level, ...]] = None

    def is_locally_sound(self) -> bool:
        if self.rule is Rule.FINITE_COUNT:
            return not self.children and self.chi == self.term.points
        if any(sign not in (1, -1) for sign, _ in self.children):
            return False
        if self.rule is Rule.ALTERNATING_SUM:
            signs = [s for s, _ in self.children]
            if signs != [1 if i % 2 == 0 else -1 for i in range(len(signs))]:
                return False
        return self.chi == sum(sign * child.chi for sign, child in self.children)

    def walk(self) -> Iterator["ChiDerivation"]:
        """Every node in the tree, shared subtrees visited once."""
        seen = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            yield node
            stack.extend(child for _, child in reversed(node.children))

    def is_sound(self) -> bool:
        return all(node.is_locally_sound() for node in self.walk())


class Evaluator:
    """Evaluates terms against one catalog, memoizing catalog expansions.

    Instances are cheap; make a new one per evaluation so memo tables do not
    outlive the catalog they describe.
    """

    def __init__(self, catalog: Catalog = BUILTIN, max_depth: int = DEFAULT_MAX_DEPTH):
        self.catalog = catalog
        self.max_depth = max_depth
        self._chi: dict[CatalogRef, ChiDerivation] = {}
        self._rank: dict[CatalogRef, int] = {}
        self._expanded: dict[CatalogRef, SpaceTerm] = {}

    def _resolve(self, ref: CatalogRef, depth: int) -> SpaceTerm:
        if depth >= self.max_depth:
            raise ExpansionDepthError(
                f"catalog expansion of {ref.name}{list(ref.params)} exceeded depth {self.max_depth}"
            )
        return self.catalog.resolve(ref)

    def chi(self, term: SpaceTerm, depth: int = 0) -> ChiDerivation:
        if isinstance(term, Finite):
            return ChiDerivation(term, term.points, Rule.FINITE_COUNT)
        if isinstance(term, Sum):
            kids = tuple((1, self.chi(p, depth)) for p in term.parts)
            return ChiDerivation(term, sum(k.chi for _, k in kids), Rule.SUM_ADDITIVITY, kids)
        if isinstance(term, Multiple):
            base = self.chi(term.base, depth)
            return ChiDerivation(term, term.count * base.chi, Rule.MULTIPLE, ((1, base),) * term.count)
        if isinstance(term, CatalogRef):
            if term not in self._chi:
                inner = self.chi(self._resolve(term, depth), depth + 1)
                self._chi[term] = ChiDerivation(term, inner.chi, Rule.CATALOG_EXPANSION, ((1, inner),))
            return self._chi[term]
        if isinstance(term, Decomp):
            kids, levels = [], []
            for sign, level, fiber in term.fibers():
                kids.append((sign, self.chi(fiber, depth)))
                levels.append(level)
            total = sum(sign * k.chi for sign, k in kids)
            return ChiDerivation(term, total, Rule.ALTERNATING_SUM, tuple(kids), tuple(levels))
        raise TypeError(f"not a space term: {term!r}")

    def rank(self, term: SpaceTerm, depth: int = 0) -> int:
        if isinstance(term, Finite):
            return 0
        if isinstance(term, Sum):
            return max(self.rank(p, depth) for p in term.parts)
        if isinstance(term, Multiple):
            return self.rank(term.base, depth)
        if isinstance(term, CatalogRef):
            if term not in self._rank:
                self._rank[term] = self.rank(self._resolve(term, depth), depth + 1)
            return self._rank[term]
        if isinstance(term, Decomp):
            if term.length == 0:
                return self.rank(term.transitional[0], depth)
            return 1 + max(self.rank(f, depth) for _, _, f in term.fibers())
        raise TypeError(f"not a space term: {term!r}")

    def expand(self, term: SpaceTerm, depth: int = 0) -> SpaceTerm:
        if isinstance(term, Finite):
            return term
        if isinstance(term, Sum):
            return Sum(tuple(self.expand(p, depth) for p in term.parts))
        if isinstance(term, Multiple):
            return Multiple(term.count, self.expand(term.base, depth))
        if isinstance(term, CatalogRef):
            if term not in self._expanded:
                self._expanded[term] = self.expand(self._resolve(term, depth), depth + 1)
            return self._expanded[term]
        if isinstance(term, Decomp):
            return Decomp(
                tuple(self.expand(x, depth) for x in term.transitional),
                tuple(self.expand(y, depth) for y in term.running),
            )
        raise TypeError(f"not a space term: {term!r}")


def chi(term: SpaceTerm, catalog: Catalog = BUILTIN, max_depth: int = DEFAULT_MAX_DEPTH) -> ChiDerivation:
    """Derivation of the Euler characteristic of ``term``; the value is ``.chi``."""
    return Evaluator(catalog, max_depth).chi(term)


def fibrous_rank(term: SpaceTerm, catalog: Catalog = BUILTIN, max_depth: int = DEFAULT_MAX_DEPTH) -> int:
    """The m for which the term's decomposition tree shows it m-fibrous.

    Finite spaces are 0; a decomposition of length >= 1 is one more than its
    deepest fiber. Sums and multiples take the largest rank among their parts.
    """
    return Evaluator(catalog, max_depth).rank(term)


def expand(term: SpaceTerm, catalog: Catalog = BUILTIN, max_depth: int = DEFAULT_MAX_DEPTH) -> SpaceTerm:
    """Replace every catalog reference by its canonical decomposition, recursively."""
    return Evaluator(catalog, max_depth).expand(term)
