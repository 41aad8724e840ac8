"""Named spaces with canonical fibrous decompositions.

Every entry builds its decomposition from smaller catalog references, so
evaluation recurses until it reaches finite spaces. Entries may also carry
a concrete realization (a simplicial complex or CW cell counts) that the
homology oracle can check independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .errors import ArityError, DomainError, UnknownNameError
from .homology import CwSkeleton, Realization, SimplicialComplex, close_and_validate
from .terms import CatalogRef, Decomp, Finite, Multiple, SpaceTerm, subterms

STYLES = ("^", "_", "call")


@dataclass(frozen=True)
class Param:
    name: str
    minimum: int = 0
    maximum: Optional[int] = None

    def contains(self, value: int) -> bool:
        return value >= self.minimum and (self.maximum is None or value <= self.maximum)

    def describe(self) -> str:
        if self.maximum is None:
            return f"{self.name} >= {self.minimum}"
        return f"{self.minimum} <= {self.name} <= {self.maximum}"


@dataclass(frozen=True)
class CatalogEntry:
    """A named space.

    ``style`` fixes the DSL notation: ``"^"`` for ``S^2``, ``"_"`` for
    ``M_3``, ``"call"`` for ``rosette(4)``. A variadic entry takes one or
    more parameters, each checked against ``params[0]``.
    """

    name: str
    style: str
    params: tuple[Param, ...]
    builder: Callable[..., SpaceTerm]
    alt_builders: tuple[Callable[..., SpaceTerm], ...] = ()
    realization: Optional[Callable[..., Optional[Realization]]] = None
    expected_chi: Optional[Callable[..., int]] = None
    variadic: bool = False
    decomposition: str = ""
    chi_formula: str = ""
    description: str = ""

    def __post_init__(self):
        if self.style not in STYLES:
            raise ValueError(f"unknown notation style {self.style!r}")
        if self.style != "call" and (self.variadic or len(self.params) != 1):
            raise ValueError(f"{self.name}: '^' and '_' notation take exactly one parameter")

    def check(self, params: Sequence[int]) -> tuple[int, ...]:
        params = tuple(params)
        if self.variadic:
            if not params:
                raise ArityError(f"{self.name} takes at least one parameter")
            checks = [self.params[0]] * len(params)
        else:
            if len(params) != len(self.params):
                raise ArityError(
                    f"{self.name} takes {len(self.params)} parameter(s), got {len(params)}"
                )
            checks = self.params
        for param, value in zip(checks, params):
            if isinstance(value, bool) or not isinstance(value, int) or not param.contains(value):
                raise DomainError(
                    f"{self.notation(params)} is outside the domain {self.domain()}"
                )
        return params

    def domain(self) -> str:
        if self.variadic:
            p = self.params[0]
            return f"{p.name}0, ..., {p.name}n >= {p.minimum}"
        return ", ".join(p.describe() for p in self.params)

    def notation(self, params: Sequence[int] | None = None) -> str:
        args = [str(p) for p in params] if params is not None else [p.name for p in self.params]
        if self.style == "call":
            if params is None and self.variadic:
                args = ["a0", "...", "an"]
            return f"{self.name}({','.join(args)})"
        return f"{self.name}{self.style}{args[0]}"

    def build(self, params: Sequence[int]) -> SpaceTerm:
        return self.builder(*self.check(params))

    def alternatives(self, params: Sequence[int]) -> list[SpaceTerm]:
        params = self.check(params)
        return [b(*params) for b in self.alt_builders]

    def realize(self, params: Sequence[int]) -> Optional[Realization]:
        params = self.check(params)
        return self.realization(*params) if self.realization else None

    def expected(self, params: Sequence[int]) -> Optional[int]:
        params = self.check(params)
        return self.expected_chi(*params) if self.expected_chi else None


@dataclass(frozen=True)
class Catalog(Mapping[str, CatalogEntry]):
    """Immutable name -> entry registry; iteration follows registration order."""

    entries: tuple[CatalogEntry, ...]
    _by_name: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        by_name = {}
        for e in self.entries:
            if e.name in by_name:
                raise ValueError(f"duplicate catalog entry {e.name!r}")
            by_name[e.name] = e
        object.__setattr__(self, "_by_name", by_name)

    def __getitem__(self, name: str) -> CatalogEntry:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownNameError(f"unknown space name {name!r}") from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._by_name)

    def __len__(self) -> int:
        return len(self._by_name)

    def __hash__(self) -> int:
        return id(self)

    def lookup(self, name: str, params: Sequence[int] = ()) -> SpaceTerm:
        """Canonical decomposition of ``name`` at ``params``."""
        return self[name].build(params)

    def realize(self, name: str, params: Sequence[int] = ()) -> Optional[Realization]:
        return self[name].realize(params)

    def resolve(self, ref: CatalogRef) -> SpaceTerm:
        return self.lookup(ref.name, ref.params)


def lookup(catalog: Catalog, name: str, params: Sequence[int] = ()) -> SpaceTerm:
    return catalog.lookup(name, params)


def expansion_depth(catalog: Catalog, name: str, params: Sequence[int]) -> int:
    """Nesting depth of catalog references below an entry.

    Zero when the canonical decomposition mentions no catalog reference.
    """
    memo: dict[tuple, int] = {}

    def depth(n: str, ps: tuple[int, ...]) -> int:
        key = (n, ps)
        if key not in memo:
            refs = [t for t in subterms(catalog.lookup(n, ps)) if isinstance(t, CatalogRef)]
            memo[key] = 1 + max((depth(r.name, r.params) for r in refs), default=-1)
        return memo[key]

    return depth(name, tuple(params))


# -- canonical decompositions -------------------------------------------------

P = Finite(1)


def _ref(name: str, *params: int) -> CatalogRef:
    return CatalogRef(name, params)


def sphere(n: int) -> SpaceTerm:
    if n == 0:
        return Finite(2)
    return Decomp.of(P, _ref("S", n - 1), P)


def _wedge_step(name: str, k: int) -> SpaceTerm:
    # one more circle: X0(2p)p
    if k == 0:
        return P
    return Decomp.of(_ref(name, k - 1), Finite(2), P)


def rosette(k: int) -> SpaceTerm:
    return _wedge_step("rosette", k)


def chain(k: int) -> SpaceTerm:
    return _wedge_step("chain", k)


def orientable_surface(g: int) -> SpaceTerm:
    circle = _ref("S", 1)
    return Decomp.of(
        P, circle, _ref("chain", g + 1), Multiple(g + 1, circle), _ref("chain", g + 1), circle, P
    )


def orientable_surface_from_word(g: int) -> SpaceTerm:
    return Decomp.of(P, _ref("S", 1), _ref("rosette", 2 * g))


def nonorientable_surface(h: int) -> SpaceTerm:
    circle = _ref("S", 1)
    if h == 1:
        return Decomp.of(circle, circle, P)
    if h == 2:
        return Decomp.of(circle, circle, circle)
    return Decomp.of(
        circle, circle, _ref("chain", h - 1), Multiple(h - 1, circle), Multiple(h - 1, circle)
    )


def nonorientable_surface_from_word(h: int) -> SpaceTerm:
    return Decomp.of(P, _ref("S", 1), _ref("rosette", h))


def projective_space(n: int) -> SpaceTerm:
    if n == 0:
        return P
    return Decomp.of(P, _ref("S", n - 1), _ref("RP", n - 1))


def dunce_hat(n: int) -> SpaceTerm:
    if n == 0:
        return P
    return Decomp.of(P, _ref("S", n - 1), _ref("D", n - 1))


def torus(n: int) -> SpaceTerm:
    if n == 1:
        return sphere(1)
    if n == 2:
        return orientable_surface(1)
    t2 = _ref("T", 2)
    return Decomp.of(t2, Multiple(2, t2), t2)


def cw_complex(*counts: int) -> SpaceTerm:
    """Centres of the top cells, their boundary spheres, then the lower skeleton."""
    *lower, top = counts
    if not lower:
        return Finite(top)
    if top == 0:
        # no top cells: the complex is its own lower skeleton
        return _ref("cw", *lower)
    return Decomp.of(Finite(top), Multiple(top, _ref("S", len(lower) - 1)), _ref("cw", *lower))


# -- realizations -------------------------------------------------------------


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex on vertices 0..n+1, a triangulated S^n."""
    return close_and_validate(combinations(range(n + 2), n + 1))


def circle_wedge(k: int, touching: bool) -> SimplicialComplex:
    """k triangle boundaries joined at a common vertex, or each to the next."""
    if k == 0:
        return close_and_validate([[0]])
    edges = []
    for i in range(k):
        a, b, c = (2 * i, 2 * i + 1, 2 * i + 2) if touching else (0, 2 * i + 1, 2 * i + 2)
        edges += [[a, b], [b, c], [a, c]]
    return close_and_validate(edges)


# Six-vertex projective plane: the antipodal quotient of the icosahedron.
RP2_TRIANGLES = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
)


def projective_plane() -> SimplicialComplex:
    return close_and_validate(RP2_TRIANGLES)


def seven_vertex_torus() -> SimplicialComplex:
    tris = []
    for i in range(7):
        tris.append([i, (i + 1) % 7, (i + 3) % 7])
        tris.append([i, (i + 2) % 7, (i + 3) % 7])
    return close_and_validate(tris)


def _projective_realization(n: int) -> Realization:
    if n == 2:
        return projective_plane()
    return CwSkeleton((1,) * (n + 1))


def _dunce_realization(n: int) -> Optional[Realization]:
    return CwSkeleton((1,) * (n + 1)) if n <= 2 else None


def _surface_realization(h: int) -> Realization:
    return projective_plane() if h == 1 else CwSkeleton((1, h, 1))


def _torus_realization(n: int) -> Realization:
    if n == 1:
        return simplex_boundary(1)
    if n == 2:
        return seven_vertex_torus()
    return CwSkeleton((1, 3, 3, 1))


def _cw_realization(*counts: int) -> Optional[CwSkeleton]:
    counts = list(counts)
    while counts and counts[-1] == 0:
        counts.pop()
    return CwSkeleton(tuple(counts)) if counts else None


def _parity(even: int, odd: int) -> Callable[[int], int]:
    return lambda n: even if n % 2 == 0 else odd


def builtin_catalog() -> Catalog:
    return Catalog((
        CatalogEntry(
            "S", "^", (Param("n"),), sphere,
            realization=simplex_boundary,
            expected_chi=_parity(2, 0),
            decomposition="S^n = p(S^(n-1))p, S^0 = 2p",
            chi_formula="2 if n even, 0 if n odd",
            description="n-sphere",
        ),
        CatalogEntry(
            "rosette", "call", (Param("k"),), rosette,
            realization=lambda k: circle_wedge(k, touching=False),
            expected_chi=lambda k: 1 - k,
            decomposition="rosette(k) = rosette(k-1)(2p)p, rosette(0) = p",
            chi_formula="1-k",
            description="rosette of k circles",
        ),
        CatalogEntry(
            "chain", "call", (Param("k"),), chain,
            realization=lambda k: circle_wedge(k, touching=True),
            expected_chi=lambda k: 1 - k,
            decomposition="chain(k) = chain(k-1)(2p)p, chain(0) = p",
            chi_formula="1-k",
            description="sequence of k touching circles",
        ),
        CatalogEntry(
            "M", "_", (Param("g"),), orientable_surface,
            alt_builders=(orientable_surface_from_word,),
            realization=lambda g: CwSkeleton((1, 2 * g, 1)),
            expected_chi=lambda g: 2 - 2 * g,
            decomposition="M_g = p(S^1)chain(g+1)((g+1)*S^1)chain(g+1)(S^1)p; alt p(S^1)rosette(2g)",
            chi_formula="2-2g",
            description="orientable surface of genus g",
        ),
        CatalogEntry(
            "N", "_", (Param("h", 1),), nonorientable_surface,
            alt_builders=(nonorientable_surface_from_word,),
            realization=_surface_realization,
            expected_chi=lambda h: 2 - h,
            decomposition=(
                "N_h = S^1(S^1)chain(h-1)((h-1)*S^1)(h-1)*S^1 for h >= 3, "
                "N_1 = S^1(S^1)p, N_2 = S^1(S^1)S^1; alt p(S^1)rosette(h)"
            ),
            chi_formula="2-h",
            description="non-orientable surface with h crosscaps",
        ),
        CatalogEntry(
            "RP", "^", (Param("n"),), projective_space,
            realization=_projective_realization,
            expected_chi=_parity(1, 0),
            decomposition="RP^n = p(S^(n-1))RP^(n-1), RP^0 = p",
            chi_formula="1 if n even, 0 if n odd",
            description="real projective n-space",
        ),
        CatalogEntry(
            "D", "^", (Param("n"),), dunce_hat,
            realization=_dunce_realization,
            expected_chi=_parity(1, 0),
            decomposition="D^n = p(S^(n-1))D^(n-1), D^0 = p",
            chi_formula="1 if n even, 0 if n odd",
            description="n-dimensional dunce hat",
        ),
        CatalogEntry(
            "T", "^", (Param("n", 1, 3),), torus,
            realization=_torus_realization,
            expected_chi=lambda n: 0,
            decomposition="T^1 = S^1, T^2 = M_1, T^3 = T^2(2*T^2)T^2",
            chi_formula="0",
            description="n-dimensional torus",
        ),
        CatalogEntry(
            "cw", "call", (Param("a"),), cw_complex,
            realization=_cw_realization,
            expected_chi=lambda *a: sum((-1) ** i * x for i, x in enumerate(a)),
            variadic=True,
            decomposition="cw(a0,...,an) = an*p(an*S^(n-1))cw(a0,...,a(n-1)), cw(a0) = a0 p",
            chi_formula="a0 - a1 + ... + (-1)^n an",
            description="finite CW complex with ai cells in dimension i",
        ),
    ))


BUILTIN = builtin_catalog()
