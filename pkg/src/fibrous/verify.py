"""Cross-checks of derived characteristics against the homology oracles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .catalog import BUILTIN, Catalog, CatalogEntry
from .evaluate import Evaluator
from .homology import (
    CwSkeleton,
    Realization,
    SimplicialComplex,
    cell_counts,
    chi_by_betti,
    chi_by_cells,
    chi_by_faces,
    close_and_validate,
    disjoint_union,
)
from .terms import CatalogRef, Finite, Multiple, SpaceTerm, Sum


@dataclass(frozen=True)
class OracleResult:
    route: str  # "faces", "betti" or "cells"
    chi: int


def realize(term: SpaceTerm, catalog: Catalog = BUILTIN) -> Optional[Realization]:
    """Concrete complex for a term built from points, catalog spaces and sums.

    Decompositions have no realization because attaching maps are not
    recorded. Sums mixing simplicial and CW parts fall back to cell counts.
    """
    if isinstance(term, Finite):
        return close_and_validate([[i] for i in range(term.points)]) if term.points else None
    if isinstance(term, CatalogRef):
        return catalog.realize(term.name, term.params)
    if isinstance(term, Multiple):
        parts = [term.base] * term.count
    elif isinstance(term, Sum):
        parts = list(term.parts)
    else:
        return None
    pieces = [realize(p, catalog) for p in parts]
    if any(r is None for r in pieces):
        return None
    if all(isinstance(r, SimplicialComplex) for r in pieces):
        return disjoint_union(*pieces)
    width = max(len(cell_counts(r)) for r in pieces)
    totals = [0] * width
    for r in pieces:
        for i, c in enumerate(cell_counts(r)):
            totals[i] += c
    return CwSkeleton(tuple(totals))


def oracle_chis(r: Realization) -> list[OracleResult]:
    if isinstance(r, SimplicialComplex):
        return [OracleResult("faces", chi_by_faces(r)), OracleResult("betti", chi_by_betti(r))]
    return [OracleResult("cells", chi_by_cells(r))]


@dataclass(frozen=True)
class VerificationRow:
    params: tuple[int, ...]
    notation: str
    chi: int
    expected: Optional[int]
    alternatives: tuple[int, ...] = ()
    oracles: tuple[OracleResult, ...] = ()
    sound: bool = True

    @property
    def passed(self) -> bool:
        values = {self.chi, *self.alternatives, *(o.chi for o in self.oracles)}
        if self.expected is not None:
            values.add(self.expected)
        return self.sound and len(values) == 1

    def to_json(self) -> dict:
        return {
            "params": list(self.params),
            "space": self.notation,
            "chi": self.chi,
            "expected": self.expected,
            "alternatives": list(self.alternatives),
            "oracles": [{"route": o.route, "chi": o.chi} for o in self.oracles],
            "pass": self.passed,
        }


def verify_params(catalog: Catalog, name: str, params: Sequence[int]) -> VerificationRow:
    entry = catalog[name]
    params = entry.check(params)
    derivation = Evaluator(catalog).chi(CatalogRef(name, params))
    alts = tuple(Evaluator(catalog).chi(t).chi for t in entry.alternatives(params))
    realization = entry.realize(params)
    oracles = tuple(oracle_chis(realization)) if realization is not None else ()
    return VerificationRow(
        params=params,
        notation=entry.notation(params),
        chi=derivation.chi,
        expected=entry.expected(params),
        alternatives=alts,
        oracles=oracles,
        sound=derivation.is_sound(),
    )


def param_sweep(entry: CatalogEntry, maximum: int = 8, minimum: int = 0) -> list[tuple[int, ...]]:
    """Parameter tuples in ``minimum..maximum`` that lie in the entry's domain.

    Variadic entries get every vector of length 1 to 3 with entries in
    ``minimum..min(maximum, 2)``.
    """
    if entry.variadic:
        lo = max(minimum, entry.params[0].minimum)
        values = range(lo, min(maximum, 2) + 1)
        return [v for n in (1, 2, 3) for v in product(values, repeat=n)]
    param = entry.params[0]
    lo = max(minimum, param.minimum)
    hi = maximum if param.maximum is None else min(maximum, param.maximum)
    return [(n,) for n in range(lo, hi + 1)]


def verify_entry(
    catalog: Catalog, name: str, tuples: Iterable[Sequence[int]]
) -> list[VerificationRow]:
    return [verify_params(catalog, name, ps) for ps in tuples]
