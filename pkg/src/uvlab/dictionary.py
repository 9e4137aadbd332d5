"""Row-by-row translations between algebra notions and space notions.

Each ``*_row`` function computes both sides independently, checks the
claimed correspondence and returns a :class:`DictReport`.  Failures raise
:class:`CounterexampleError`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .balg import (FiniteBA, enumerate_ideals, enumerate_proper_filters,
                   is_filter, is_ideal, is_normal_ideal, lower_bounds,
                   product_ba, product_parts, relativize)
from .bits import from_ids, iter_bits, popcount, sort_family
from .duality import DualSpace, hat, uv_dual
from .errors import (CounterexampleError, ImproperFilter, NotAnIdeal,
                     NotUVSpace, TrivialSplit)
from .order import Poset, cl_le, int_le, is_ro_upset, neg_le, ro_algebra
from .uvspace import (FiniteSpace, SpaceMap, _require_coro, coro, coro_algebra,
                      expand, is_complete_uv, is_homeomorphism, is_uv_space,
                      isolated_points, meet_point, oro, restrict, ro,
                      space_from_generators, star, subspace)


@dataclass
class DictReport:
    row: str
    left: int
    right: int
    witness: dict = field(default_factory=dict)
    passed: bool = True

    def as_dict(self) -> dict:
        return {"row": self.row, "left": self.left, "right": self.right,
                "witness": self.witness, "passed": self.passed}


def _fail(row, **witness):
    raise CounterexampleError(row, witness)


def _require_uv(X: FiniteSpace):
    if not is_uv_space(X):
        raise NotUVSpace(repr(X))


def eta(D: DualSpace, F) -> int:
    """Intersection of the hats of a proper filter: the principal upset of F."""
    A = D.algebra
    F = frozenset(F)
    if 0 in F:
        raise ImproperFilter(sorted(F))
    if not is_filter(A, F):
        raise ValueError(f"{sorted(F)} is not a filter")
    U = D.space.full
    for a in F:
        U &= hat(D, a)
    if U != D.space.order.up[D.point_of(F)]:
        _fail("eta(F) is the principal upset of F", F=[A.element_name(a) for a in sorted(F)])
    return U


def zeta(D: DualSpace, I) -> int:
    """Union of the hats of an ideal; an open regular-open upset."""
    A = D.algebra
    I = frozenset(I)
    if not is_ideal(A, I):
        raise NotAnIdeal(sorted(I))
    U = 0
    for a in I:
        U |= hat(D, a)
    P = D.space.order
    if not is_ro_upset(P, U):
        _fail("zeta(I) is in ORO", I=[A.element_name(a) for a in sorted(I)])
    back = frozenset(a for a in A.elements() if hat(D, a) & ~U == 0)
    if back != I:
        _fail("zeta is inverted by U -> {a | hat(a) ⊆ U}", I=[A.element_name(a) for a in sorted(I)])
    return U


def eta_row(D: DualSpace) -> DictReport:
    A, P = D.algebra, D.space.order
    filters = enumerate_proper_filters(A)
    images = [eta(D, F) for F in filters]
    if sorted(images) != sorted(P.up):
        _fail("eta onto principal upsets", atoms=A.k)
    for (F, U), (G, V) in combinations(zip(filters, images), 2):
        if (F <= G) != (V & ~U == 0) or (G <= F) != (U & ~V == 0):
            _fail("eta reverses order", atoms=A.k)
    return DictReport("eta", len(filters), P.n, {})


def zeta_row(D: DualSpace) -> DictReport:
    A, X = D.algebra, D.space
    ideals = enumerate_ideals(A)
    images = [zeta(D, I) for I in ideals]
    if sort_family(images) != oro(X) or len(set(images)) != len(ideals):
        _fail("zeta is a bijection onto ORO", atoms=A.k)
    for (I, U), (J, V) in combinations(zip(ideals, images), 2):
        if (I <= J) != (U & ~V == 0) or (J <= I) != (V & ~U == 0):
            _fail("zeta preserves order", atoms=A.k)
    return DictReport("zeta", len(ideals), len(oro(X)), {})


def principal_rows(D: DualSpace) -> DictReport:
    """↑a and ↓a both land on hat(a), covering CORO exactly."""
    A, X = D.algebra, D.space
    fam = coro(X)
    up_images, down_images = [], []
    for a in A.nonzero():
        up_images.append(eta(D, A.up(a)))
    for a in A.elements():
        down_images.append(zeta(D, A.down(a)))
        if down_images[-1] != hat(D, a):
            _fail("principal ideal ↓a goes to hat(a)", a=A.element_name(a))
    if sort_family(down_images) != fam:
        _fail("principal ideals onto CORO", atoms=A.k)
    if sorted(up_images) != sorted(X.order.up):
        _fail("principal filters onto principal upsets", atoms=A.k)
    return DictReport("principal", A.size, len(fam), {})


def maximal_rows(D: DualSpace) -> DictReport:
    A, X = D.algebra, D.space
    P = X.order
    filters = enumerate_proper_filters(A)
    max_filters = [F for F in filters if not any(F < G for G in filters)]
    ideals = [I for I in enumerate_ideals(A) if A.top not in I]
    max_ideals = [I for I in ideals if not any(I < J for J in ideals)]
    maxima = list(iter_bits(P.maximal))
    witness = {}
    f_images = sorted(eta(D, F) for F in max_filters)
    if f_images != sorted(1 << x for x in maxima):
        _fail("maximal filters ↔ singletons of maximal points", atoms=A.k)
    i_images = sorted(zeta(D, I) for I in max_ideals)
    if i_images != sorted(X.full & ~P.down[x] for x in maxima):
        _fail("maximal ideals ↔ complements of ⇓x", atoms=A.k)
    for F in max_filters:
        witness[_filter_name(A, F)] = X.names(eta(D, F))
    if not (len(max_filters) == len(maxima) == len(max_ideals) == A.k):
        _fail("maximal censuses equal the atom count", atoms=A.k)
    return DictReport("maximal", len(max_filters) + len(max_ideals), 2 * len(maxima), witness)


def _filter_name(A: FiniteBA, F) -> str:
    least = A.top
    for a in F:
        least &= a
    return "↑" + A.element_name(least)


def _element_of(A: FiniteBA, U: int) -> int:
    for e, V in enumerate(A.origin):
        if V == U:
            return e
    raise KeyError(U)


def relativization_row(X: FiniteSpace, U: int) -> DictReport:
    _require_uv(X)
    _require_coro(X, U)
    A = coro_algebra(X)
    R = relativize(A, _element_of(A, U))
    Y = subspace(X, U)
    B = coro_algebra(Y)
    # relativized element b (≤ U) ↦ its set, re-indexed into the subspace
    table = [_element_of(B, restrict(U, A.origin[R.origin[e]])) for e in R.elements()]
    if sorted(table) != list(B.elements()):
        _fail("relativization is a bijection", U=X.names(U))
    for a in R.elements():
        if table[R.neg(a)] != B.neg(table[a]):
            _fail("relative complement", U=X.names(U))
        for b in R.elements():
            if table[a & b] != table[a] & table[b]:
                _fail("relative meet", U=X.names(U))
    return DictReport("relativization", R.size, B.size, {"U": X.names(U)})


def meet_join_formulas(X: FiniteSpace, family) -> DictReport:
    """BA meet/join of a CORO family against int(⋂) and int(cl(⋃))."""
    _require_uv(X)
    P = X.order
    A = coro_algebra(X)
    elems = []
    for U in family:
        _require_coro(X, U)
        elems.append(_element_of(A, U))
    m, j = A.top, 0
    inter, union = X.full, 0
    for e, U in zip(elems, family):
        m &= e
        j |= e
        inter &= U
        union |= U
    meet_set = int_le(P, inter)
    join_set = int_le(P, cl_le(P, union))
    if A.origin[m] != meet_set:
        _fail("meet is int of intersection", family=[X.names(U) for U in family])
    if A.origin[j] != join_set:
        _fail("join is int cl of union", family=[X.names(U) for U in family])
    if not is_complete_uv(X):
        _fail("finite UV-space is complete")
    return DictReport("meet-join", len(family), len(family),
                      {"meet": X.names(meet_set), "join": X.names(join_set)})


def atoms_row(X: FiniteSpace) -> DictReport:
    _require_uv(X)
    P = X.order
    A = coro_algebra(X)
    iso = isolated_points(X)
    atom_sets = [A.origin[a] for a in A.atoms()]
    if sorted(atom_sets) != sorted(1 << x for x in iter_bits(iso)):
        _fail("atoms ↔ isolated points", isolated=X.names(iso))
    atomic = all(any(a & e == a for a in A.atoms()) for e in A.nonzero())
    dense_int = int_le(P, cl_le(P, iso)) == X.full
    dense = cl_le(P, iso) == X.full
    if not (atomic == dense_int == dense):
        _fail("atomic ⇔ int(cl X_iso) = X ⇔ cl X_iso = X",
              atomic=atomic, int_cl=dense_int, cl=dense)
    return DictReport("atoms", A.k, popcount(iso),
                      {"isolated": X.names(iso), "atomic": atomic})


def sum_tags(X: FiniteSpace, Y: FiniteSpace) -> list[tuple]:
    """Carrier of the UV-sum: ("L", x), ("R", y), then ("P", x, y)."""
    tags = [("L", x) for x in range(X.n)] + [("R", y) for y in range(Y.n)]
    tags += [("P", x, y) for x in range(X.n) for y in range(Y.n)]
    return tags


def _sum_labels(X, Y, tags):
    clash = set(X.labels) & set(Y.labels)
    lx = [f"L.{l}" if clash else l for l in X.labels]
    ly = [f"R.{l}" if clash else l for l in Y.labels]
    out = []
    for t in tags:
        if t[0] == "L":
            out.append(lx[t[1]])
        elif t[0] == "R":
            out.append(ly[t[1]])
        else:
            out.append(f"⟨{lx[t[1]]},{ly[t[2]]}⟩")
    return out


def sum_order(X: FiniteSpace, Y: FiniteSpace) -> Poset:
    """The five-clause order on the sum carrier."""
    tags = sum_tags(X, Y)
    PX, PY = X.order, Y.order

    def leq(s, t):
        if s[0] == "L":
            return t[0] == "L" and PX.leq(s[1], t[1])
        if s[0] == "R":
            return t[0] == "R" and PY.leq(s[1], t[1])
        if t[0] == "L":
            return PX.leq(s[1], t[1])
        if t[0] == "R":
            return PY.leq(s[2], t[1])
        return PX.leq(s[1], t[1]) and PY.leq(s[2], t[2])

    up = [from_ids(j for j, t in enumerate(tags) if leq(s, t)) for s in tags]
    return Poset(_sum_labels(X, Y, tags), up)


def uv_sum(X: FiniteSpace, Y: FiniteSpace) -> FiniteSpace:
    _require_uv(X)
    _require_uv(Y)
    tags = sum_tags(X, Y)
    gens = []
    for U in coro(X):
        for V in coro(Y):
            gens.append(from_ids(i for i, t in enumerate(tags)
                                 if (t[0] == "L" and U >> t[1] & 1)
                                 or (t[0] == "R" and V >> t[1] & 1)
                                 or (t[0] == "P" and U >> t[1] & 1 and V >> t[2] & 1)))
    S = space_from_generators(_sum_labels(X, Y, tags), gens, name="sum")
    if S.order.up != sum_order(X, Y).up:
        _fail("sum specialization order is the five-clause order", left=X.n, right=Y.n)
    return S


def check_sum_product(A: FiniteBA, B: FiniteBA) -> DictReport:
    DA, DB = uv_dual(A), uv_dual(B)
    S = uv_sum(DA.space, DB.space)
    C = product_ba(A, B)
    DC = uv_dual(C)
    tags = sum_tags(DA.space, DB.space)
    where = {t: i for i, t in enumerate(tags)}
    table = []
    for F in DC.point_meaning:
        FA = frozenset(product_parts(A, B, e)[0] for e in F)
        FB = frozenset(product_parts(A, B, e)[1] for e in F)
        if 0 in FB:
            table.append(where[("L", DA.point_of(FA))])
        elif 0 in FA:
            table.append(where[("R", DB.point_of(FB))])
        else:
            table.append(where[("P", DA.point_of(FA), DB.point_of(FB))])
    h = SpaceMap(DC.space, S, table)
    if not is_homeomorphism(h):
        _fail("UV(A×B) ≅ UV(A) ⊙ UV(B)", left=A.k, right=B.k)
    return DictReport("sum-product", DC.space.n, S.n, h.as_names())


def split_by_coro(X: FiniteSpace, U: int) -> SpaceMap:
    """Homeomorphism from subspace(U) ⊙ subspace(¬U) onto ``X``."""
    _require_uv(X)
    _require_coro(X, U)
    N = neg_le(X.order, U)
    if U == 0 or N == 0:
        raise TrivialSplit("U or ¬U is empty")
    SU, SN = subspace(X, U), subspace(X, N)
    S = uv_sum(SU, SN)
    table = []
    for t in sum_tags(SU, SN):
        if t[0] == "L":
            table.append(next(iter_bits(expand(U, 1 << t[1]))))
        elif t[0] == "R":
            table.append(next(iter_bits(expand(N, 1 << t[1]))))
        else:
            x = next(iter_bits(expand(U, 1 << t[1])))
            y = next(iter_bits(expand(N, 1 << t[2])))
            table.append(meet_point(X, x, y, check=False))
    f = SpaceMap(S, X, table)
    if not is_homeomorphism(f):
        _fail("X ≅ U ⊙ ¬U", U=X.names(U))
    return f


def canonical_extension(X: FiniteSpace) -> FiniteBA:
    """All regular open upsets of the specialization order."""
    _require_uv(X)
    B = ro_algebra(X.order)
    if B.k != coro_algebra(X).k:
        _fail("canonical extension of a finite algebra is itself", points=X.n)
    return B


def macneille(X: FiniteSpace) -> DictReport:
    _require_uv(X)
    A = coro_algebra(X)
    normal = [I for I in enumerate_ideals(A) if is_normal_ideal(A, I)]

    def r(I):
        out = 0
        for c in I:
            out |= A.origin[c]
        return out

    def i(V):
        S = star(X, V)
        return lower_bounds(A, [A.neg(b) for b in A.elements() if A.origin[b] & ~S == 0])

    regular = ro(X)
    images = [r(I) for I in normal]
    for I, V in zip(normal, images):
        if i(V) != I:
            _fail("i ∘ r = id", ideal=[A.element_name(c) for c in sorted(I)])
    for V in regular:
        if r(i(V)) != V:
            _fail("r ∘ i = id", V=X.names(V))
    if sort_family(images) != regular:
        _fail("image of r is RO(X)", points=X.n)
    return DictReport("macneille", len(normal), len(regular), {})


def all_rows(A: FiniteBA) -> list[DictReport]:
    """Every row, exhaustively over the dual of ``A``."""
    D = uv_dual(A)
    X = D.space
    reports = [eta_row(D), zeta_row(D), principal_rows(D), maximal_rows(D), atoms_row(X)]
    fam = coro(X)
    for U in fam:
        if U:
            reports.append(relativization_row(X, U))
    count = 0
    for size in range(len(fam) + 1):
        for family in combinations(fam, size):
            meet_join_formulas(X, list(family))
            count += 1
    reports.append(DictReport("meet-join-families", count, count, {}))
    ext = canonical_extension(X)
    reports.append(DictReport("canonical-extension", A.k, ext.k, {}))
    reports.append(macneille(X))
    return reports
