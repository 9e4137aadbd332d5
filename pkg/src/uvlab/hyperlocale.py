"""Two other roads to the same spaces.

The hyperspace road starts from a finite discrete (Stone) space and takes its
nonempty closed subsets with the topology generated by the boxes
``□U = {C | C ⊆ U}``.  The localic road takes the lattice of all filters of an
algebra, whose complemented elements recover the algebra, and builds the
upper Vietoris space on the non-top elements with the opens
``■x = {y | x ∨ y = 1}``.
"""
from __future__ import annotations

from . import limits
from .balg import (FiniteBA, ba_from_tables, enumerate_proper_filters,
                   filter_generated, is_filter, powerset_ba)
from .bits import from_ids, iter_bits, popcount
from .duality import find_homeomorphism, hat, uv_dual
from .errors import (AxiomViolation, CounterexampleError, EmptySpace,
                     NotBoolean, NotStone, NotStoneLocale, SizeLimit)
from .order import Poset, all_upsets, antichain
from .uvspace import (FiniteSpace, Report, SpaceMap, check_alexandroff,
                      generated_topology, is_homeomorphism, is_uv_space,
                      space_from_generators)


class FiniteLattice:
    """A bounded lattice given by its order; meet and join tables are
    computed as greatest lower / least upper bounds.  Optional tables passed in
    are checked against those bounds."""

    def __init__(self, order: Poset, meet=None, join=None, meaning=None):
        self.order = order
        n = order.n
        self.n = n
        self.meaning = tuple(meaning) if meaning is not None else None
        glb = [[self._extreme(order.down[a] & order.down[b], order.down) for b in range(n)]
               for a in range(n)]
        lub = [[self._extreme(order.up[a] & order.up[b], order.up) for b in range(n)]
               for a in range(n)]
        if any(v is None for row in glb + lub for v in row):
            raise ValueError("order is not a lattice")
        if meet is not None and [list(r) for r in meet] != glb:
            raise CounterexampleError("meet table is the greatest lower bound", {})
        if join is not None and [list(r) for r in join] != lub:
            raise CounterexampleError("join table is the least upper bound", {})
        self.meet_table = glb
        self.join_table = lub
        self.bottom = self._extreme(order.full, order.up)
        self.top = self._extreme(order.full, order.down)

    @staticmethod
    def _extreme(common: int, rows):
        # the member of ``common`` whose row covers all of ``common``
        for g in iter_bits(common):
            if rows[g] & common == common:
                return g
        return None

    @property
    def labels(self):
        return self.order.labels

    def meet(self, a, b):
        return self.meet_table[a][b]

    def join(self, a, b):
        return self.join_table[a][b]

    def join_all(self, items):
        out = self.bottom
        for a in items:
            out = self.join(out, a)
        return out

    def complements(self, a) -> list[int]:
        return [b for b in range(self.n)
                if self.meet(a, b) == self.bottom and self.join(a, b) == self.top]

    def is_distributive(self) -> bool:
        r = range(self.n)
        return all(self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                   for a in r for b in r for c in r)

    def __repr__(self):
        return f"FiniteLattice({self.n} elements)"


def lattice_from_pairs(pairs, elements=None) -> FiniteLattice:
    from .order import validate_poset
    return FiniteLattice(validate_poset(pairs, elements))


def diamond_m3() -> FiniteLattice:
    return lattice_from_pairs([("0", "a"), ("0", "b"), ("0", "c"),
                               ("a", "1"), ("b", "1"), ("c", "1")])


def is_stone_locale(L: FiniteLattice) -> Report:
    rep = Report()
    # finite: complete, and every cover of the top has a finite subcover
    rep.record("complete", True)
    rep.record("compact", True)
    # the join-infinite distributive law reduces to the binary one for finite L
    rep.record("frame", L.is_distributive())
    comp = [a for a in range(L.n) if L.complements(a)]
    zero_dim = all(L.join_all(c for c in comp if L.order.leq(c, a)) == a for a in range(L.n))
    rep.record("zero-dimensional", zero_dim)
    return rep


def discrete_space(n: int) -> FiniteSpace:
    if n < 1:
        raise EmptySpace("a discrete space needs at least one point")
    return FiniteSpace(antichain(n), name=f"D{n}")


def _is_discrete(X: FiniteSpace) -> bool:
    return all(X.order.up[x] == 1 << x for x in range(X.n))


def _subset_label(X: FiniteSpace, C: int) -> str:
    return "{" + ",".join(X.names(C)) + "}"


def hyperspace_points(X: FiniteSpace) -> list[int]:
    """Nonempty subsets, ordered by size then lexicographically."""
    return sorted(range(1, 1 << X.n), key=lambda C: (popcount(C), list(iter_bits(C))))


def box(points, U: int) -> int:
    """Mask over hyperspace points of those contained in ``U``."""
    return from_ids(t for t, C in enumerate(points) if C & ~U == 0)


def uv_hyperspace(X: FiniteSpace) -> FiniteSpace:
    if not _is_discrete(X):
        raise NotStone("finite Stone spaces are discrete")
    if X.n > limits.MAX_ATOMS:
        raise SizeLimit(f"hyperspace of {X.n} points")
    points = hyperspace_points(X)
    gens = [box(points, U) for U in range(1 << X.n)]
    H = space_from_generators([_subset_label(X, C) for C in points], gens, name=f"UV-hyper({X.n})")
    if H.n <= 31 and not check_alexandroff(H):
        raise CounterexampleError("box topology is the upset topology", {"points": X.n})
    return H


def hyperspace_homeomorphism(X: FiniteSpace) -> SpaceMap:
    """Send a closed set to the clopens containing it and verify this is a
    homeomorphism onto the dual of the clopen algebra."""
    H = uv_hyperspace(X)
    A = FiniteBA(X.n, labels=X.labels, name=f"Clop({X.n})")
    D = uv_dual(A)
    points = hyperspace_points(X)
    table = []
    for C in points:
        F = frozenset(U for U in A.elements() if C & ~U == 0)
        table.append(D.point_of(F))
    f = SpaceMap(H, D.space, table)
    if len(set(table)) != H.n or f.image() != D.space.full:
        raise CounterexampleError("closed sets ↔ proper filters", {"points": X.n})
    for U in A.elements():
        bu = box(points, U)
        if f.preimage(hat(D, U)) != bu:
            raise CounterexampleError("preimage of hat(U) is □U", {"U": X.names(U)})
        if f.image(bu) != hat(D, U):
            raise CounterexampleError("image of □U is hat(U)", {"U": X.names(U)})
    if not is_homeomorphism(f):
        raise CounterexampleError("hyperspace homeomorphism", {"points": X.n})
    return f


def filt_locale(A: FiniteBA) -> FiniteLattice:
    """All filters of ``A`` (the improper one last) under inclusion."""
    if A.is_degenerate:
        raise NotStoneLocale("degenerate algebra")
    filters = enumerate_proper_filters(A) + [frozenset(A.elements())]
    pos = {F: i for i, F in enumerate(filters)}
    n = len(filters)
    up = [from_ids(j for j in range(n) if filters[i] <= filters[j]) for i in range(n)]
    labels = ["⊤" if i == n - 1 else "↑" + A.element_name(min(F, key=popcount))
              for i, F in enumerate(filters)]
    meet, join = [], []
    for F in filters:
        mrow, jrow = [], []
        for G in filters:
            common = F & G
            if not is_filter(A, common):
                raise CounterexampleError("intersection of filters is a filter", {})
            mrow.append(pos[common])
            gen = filter_generated(A, F | G)
            jrow.append(n - 1 if gen is None else pos[gen])
        meet.append(mrow)
        join.append(jrow)
    L = FiniteLattice(Poset(labels, up), meet, join, meaning=filters)
    rep = is_stone_locale(L)
    if not rep:
        raise CounterexampleError("filter lattice is a Stone locale", rep.as_dict())
    return L


def complemented_elements(L: FiniteLattice) -> FiniteBA:
    """Z(L) as a Boolean algebra; ``origin`` maps to lattice element ids."""
    Z = [a for a in range(L.n) if L.complements(a)]
    pos = {a: t for t, a in enumerate(Z)}
    try:
        meet = [[pos[L.meet(a, b)] for b in Z] for a in Z]
        join = [[pos[L.join(a, b)] for b in Z] for a in Z]
    except KeyError:
        raise NotBoolean("complemented elements are not closed under meet and join") from None
    neg = [pos[L.complements(a)[0]] for a in Z]
    try:
        B, renaming = ba_from_tables(len(Z), meet, join, neg, pos[L.bottom], pos[L.top])
    except AxiomViolation as exc:
        raise NotBoolean(f"complemented elements fail {exc.axiom}") from None
    return FiniteBA(B.k, origin=[Z[t] for t in B.origin], name="Z(L)")


def upper_vietoris_of_locale(L: FiniteLattice) -> FiniteSpace:
    if not is_stone_locale(L):
        raise NotStoneLocale(repr(L))
    pts = [a for a in range(L.n) if a != L.top]
    gens = [from_ids(t for t, y in enumerate(pts) if L.join(x, y) == L.top) for x in range(L.n)]
    return space_from_generators([L.labels[a] for a in pts], gens, name="UV(L)")


def check_same_topologies(A: FiniteBA) -> bool:
    L = filt_locale(A)
    pts = [a for a in range(L.n) if a != L.top]
    n = len(pts)
    meaning = L.meaning
    boxes = {x: from_ids(t for t, y in enumerate(pts) if L.join(x, y) == L.top) for x in range(L.n)}
    hats = {a: from_ids(t for t, y in enumerate(pts) if a in meaning[y]) for a in A.elements()}
    where = {F: i for i, F in enumerate(meaning)}
    for a in A.elements():
        if hats[a] != boxes[where[A.up(A.neg(a))]]:
            raise CounterexampleError("hat(a) = ■↑(-a)", {"a": A.element_name(a)})
    for x in range(L.n):
        U = 0
        for a in meaning[x]:
            U |= hats[A.neg(a)]
        if boxes[x] != U:
            raise CounterexampleError("■F = ⋃ hat(-a)", {"F": L.labels[x]})
    t_box = generated_topology(n, boxes.values())
    t_hat = generated_topology(n, hats.values())
    if t_box != t_hat:
        raise CounterexampleError("■ and hat generate the same topology", {"atoms": A.k})
    # and this is literally the UV dual: same points, same opens
    D = uv_dual(A)
    if tuple(meaning[y] for y in pts) != D.point_meaning or t_hat != all_upsets(D.space.order):
        raise CounterexampleError("upper Vietoris space equals the UV dual", {"atoms": A.k})
    return True


def uv_via_locale(X: FiniteSpace) -> bool:
    """Is ``X`` homeomorphic to the upper Vietoris space of some finite Stone
    locale of filters?  Searches algebras by atom count; only sizes that can
    match are built."""
    for k in range(1, X.n + 1):
        if (1 << k) - 1 > X.n:
            break
        if (1 << k) - 1 != X.n:
            continue
        if k > limits.MAX_ATOMS:
            raise SizeLimit(f"{k} atoms")
        Y = upper_vietoris_of_locale(filt_locale(powerset_ba(k)))
        if find_homeomorphism(X, Y) is not None:
            return True
    return False


def check_uv_iff_locale(X: FiniteSpace) -> bool:
    return bool(is_uv_space(X)) == uv_via_locale(X)
