"""Passing between finite Boolean algebras and their UV duals.

``uv_dual`` turns an algebra into the space of its proper filters, ``hat``
sends an element to the filters containing it, ``epsilon`` goes back from a
space to the dual of its CORO algebra.  ``dual_hom`` and ``dual_map`` act on
morphisms by preimage.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import faults
from .balg import (BAHom, FiniteBA, enumerate_proper_filters, is_homomorphism,
                   is_injective, is_surjective)
from .bits import from_ids, sort_family
from .errors import (CounterexampleError, DegenerateBA, NotAHomomorphism,
                     NotAUVMap)
from .iso import find_isomorphism
from .order import Poset, join_le, neg_le
from .uvspace import (LITERAL_OPENS_MAX_POINTS, FiniteSpace, Report, SpaceMap,
                      coro, coro_algebra, is_homeomorphism, is_spectral,
                      is_surjective_map, is_uv_embedding, is_uv_map,
                      is_uv_space)


@dataclass(frozen=True, eq=False)
class DualSpace:
    space: FiniteSpace
    algebra: FiniteBA
    point_meaning: tuple  # point id -> proper filter (frozenset of elements)

    def point_of(self, F) -> int:
        return self._index()[frozenset(F)]

    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {F: i for i, F in enumerate(self.point_meaning)}
            object.__setattr__(self, "_idx", idx)
        return idx


def _filter_label(A: FiniteBA, F) -> str:
    least = A.top
    for a in F:
        least &= a
    return "↑" + A.element_name(least)


@faults.register_cache
@lru_cache(maxsize=64)
def _uv_dual(A: FiniteBA, check: bool) -> DualSpace:
    filters = enumerate_proper_filters(A)
    n = len(filters)
    up = [from_ids(j for j in range(n) if filters[i] <= filters[j]) for i in range(n)]
    space = FiniteSpace(Poset([_filter_label(A, F) for F in filters], up), name=f"UV({A.name})")
    D = DualSpace(space, A, tuple(filters))

    # mutual oracle: the filters are the principal ones, ordered like (A∖{0}, ≥)
    least = []
    for F in filters:
        m = A.top
        for a in F:
            m &= a
        least.append(m)
    if sorted(least) != list(A.nonzero()) or any(F != A.up(m) for F, m in zip(filters, least)):
        raise CounterexampleError("filters of a finite algebra are principal",
                                  {"algebra_atoms": A.k})
    for i in range(n):
        for j in range(n):
            if space.order.leq(i, j) != A.leq(least[j], least[i]):
                raise CounterexampleError("dual order is reversed algebra order",
                                          {"i": space.labels[i], "j": space.labels[j]})
    if check:
        if n <= LITERAL_OPENS_MAX_POINTS:
            rep = is_spectral(space)
            if not rep:
                raise CounterexampleError("dual space is spectral", rep.as_dict())
        rep = is_uv_space(space)
        if not rep:
            raise CounterexampleError("dual space is a UV-space",
                                      {"algebra_atoms": A.k, **rep.as_dict()})
    return D


def uv_dual(A: FiniteBA, check: bool = True) -> DualSpace:
    """Proper filters of ``A`` ordered by inclusion, with the upset topology."""
    if A.is_degenerate:
        raise DegenerateBA("the one-element algebra has no proper filter")
    return _uv_dual(A, check)


def hat(D: DualSpace, a: int) -> int:
    D.algebra.check(a)
    return from_ids(i for i, F in enumerate(D.point_meaning) if a in F)


@dataclass
class Representation:
    algebra: FiniteBA
    dual: DualSpace
    image: tuple  # element -> CORO set

    def as_dict(self) -> dict:
        X = self.dual.space
        A = self.algebra
        return {A.element_name(a): X.names(U) for a, U in enumerate(self.image)}


def check_representation(A: FiniteBA) -> Representation:
    """Verify that ``a ↦ hat(a)`` is an isomorphism onto CORO of the dual.

    Raises :class:`CounterexampleError` naming the failing equation.
    """
    D = uv_dual(A)
    X = D.space
    P = X.order
    hats = [hat(D, a) for a in A.elements()]
    name = A.element_name

    def fail(equation, **w):
        raise CounterexampleError("representation", {"equation": equation, **w})

    family = coro(X) if X.n <= LITERAL_OPENS_MAX_POINTS else None
    if family is not None and sort_family(hats) != family:
        extra = sorted(set(family) - set(hats))
        fail("image is CORO", missing=[X.names(U) for U in extra],
             algebra_atoms=A.k)
    if len(set(hats)) != A.size:
        fail("injective", algebra_atoms=A.k)
    for a in A.elements():
        na = neg_le(P, hats[a])
        if hats[A.neg(a)] != na:
            fail("hat(-a) = ¬hat(a)", a=name(a), expected=X.names(hats[A.neg(a)]), got=X.names(na))
        for b in A.elements():
            if A.leq(a, b) != (hats[a] & ~hats[b] == 0):
                fail("a <= b iff hat(a) ⊆ hat(b)", a=name(a), b=name(b))
            if hats[a & b] != hats[a] & hats[b]:
                fail("hat(a∧b) = hat(a) ∩ hat(b)", a=name(a), b=name(b))
            j = join_le(P, hats[a], hats[b])
            if hats[a | b] != j:
                fail("hat(a∨b) = int(cl(hat(a) ∪ hat(b)))", a=name(a), b=name(b),
                     expected=X.names(hats[a | b]), got=X.names(j))
    return Representation(A, D, tuple(hats))


def epsilon(X: FiniteSpace) -> SpaceMap:
    """``x ↦ CORO(x)`` into the dual of the CORO algebra; a homeomorphism."""
    A = coro_algebra(X)  # raises NotUVSpace
    D = uv_dual(A)
    table = []
    for x in range(X.n):
        F = frozenset(e for e in A.elements() if A.origin[e] >> x & 1)
        table.append(D.point_of(F))
    f = SpaceMap(X, D.space, table)
    if not is_homeomorphism(f):
        raise CounterexampleError("epsilon is a homeomorphism", {"map": f.as_names()})
    return f


def dual_hom(h: BAHom) -> SpaceMap:
    """Preimage map from filters of the codomain to filters of the domain."""
    if not is_homomorphism(h):
        raise NotAHomomorphism(repr(h))
    DA, DB = uv_dual(h.dom), uv_dual(h.cod)
    table = []
    for F in DB.point_meaning:
        pre = frozenset(a for a in h.dom.elements() if h.table[a] in F)
        table.append(DA.point_of(pre))
    f = SpaceMap(DB.space, DA.space, table)
    if not is_uv_map(f):
        raise CounterexampleError("dual of a homomorphism is a UV-map", {"hom": list(h.table)})
    return f


def dual_map(f: SpaceMap) -> BAHom:
    """Preimage of CORO sets, as a homomorphism CORO(cod) -> CORO(dom)."""
    if not is_uv_map(f):
        raise NotAUVMap(repr(f))
    AY, AX = coro_algebra(f.cod), coro_algebra(f.dom)
    where = {U: e for e, U in enumerate(AX.origin)}
    table = []
    for e in AY.elements():
        pre = f.preimage(AY.origin[e])
        if pre not in where:
            raise CounterexampleError("preimage of CORO is CORO", {"set": f.cod.names(AY.origin[e])})
        table.append(where[pre])
    h = BAHom(AY, AX, table)
    if not is_homomorphism(h):
        raise CounterexampleError("dual of a UV-map is a homomorphism", {"map": f.as_names()})
    return h


def check_squares(h: BAHom) -> bool:
    """Preimage along ``h₊`` of ``hat(a)`` is ``hat(h(a))`` for every ``a``."""
    DA, DB = uv_dual(h.dom), uv_dual(h.cod)
    hp = dual_hom(h)
    for a in h.dom.elements():
        if hp.preimage(hat(DA, a)) != hat(DB, h.table[a]):
            raise CounterexampleError("algebra-side square commutes",
                                      {"hom": list(h.table), "a": h.dom.element_name(a)})
    return True


def check_squares_space(f: SpaceMap) -> bool:
    """``epsilon_Y ∘ f = (f⁺)₊ ∘ epsilon_X`` pointwise."""
    fp = dual_map(f)
    fpp = dual_hom(fp)
    ex, ey = epsilon(f.dom), epsilon(f.cod)
    for x in range(f.dom.n):
        if ey.table[f.table[x]] != fpp.table[ex.table[x]]:
            raise CounterexampleError("space-side square commutes",
                                      {"map": f.as_names(), "x": f.dom.labels[x]})
    return True


def check_injective_surjective_duality(h: BAHom) -> Report:
    rep = Report()
    f = dual_hom(h)
    if is_injective(h):
        rep.record("injective hom gives surjective dual", is_surjective_map(f))
    if is_surjective(h):
        rep.record("surjective hom gives UV-embedding", is_uv_embedding(f))
    fp = dual_map(f)
    if is_surjective_map(f):
        rep.record("surjective UV-map gives injective dual", is_injective(fp))
    if is_uv_embedding(f):
        rep.record("UV-embedding gives surjective dual", is_surjective(fp))
    return rep


def find_homeomorphism(X: FiniteSpace, Y: FiniteSpace) -> SpaceMap | None:
    phi = find_isomorphism(X.order, Y.order)
    return None if phi is None else SpaceMap(X, Y, phi)


def is_homeomorphic(X: FiniteSpace, Y: FiniteSpace) -> bool:
    return find_homeomorphism(X, Y) is not None
