"""Finite T0 spaces, read as posets carrying the upset topology.

The specialization order determines a finite T0 topology completely (opens
are exactly the upsets), so a :class:`FiniteSpace` is stored as its order.
Spaces built from a generating family keep that family so the generated
topology can be compared against the upsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import faults
from .balg import FiniteBA, enumerate_proper_filters, is_filter
from .bits import from_ids, iter_bits, sort_family
from .errors import (CounterexampleError, NoMeet, NotCORO, NotOpen, NotUVSpace,
                     NoWitness, SizeLimit, UnknownElement)
from .order import (Poset, all_ro_upsets, all_upsets, cl_le, family_algebra,
                    int_le, is_ro_upset, is_upset, join_le, neg_le)

# Beyond this many points the upsets are too numerous to list one by one.
LITERAL_OPENS_MAX_POINTS = 31


class FiniteSpace:
    def __init__(self, order: Poset, generators=None, name: str | None = None):
        self.order = order
        self.generators = tuple(generators) if generators is not None else None
        self.name = name

    @property
    def n(self) -> int:
        return self.order.n

    @property
    def labels(self):
        return self.order.labels

    @property
    def full(self) -> int:
        return self.order.full

    def index(self, x) -> int:
        return self.order.index(x)

    def names(self, U: int) -> list[str]:
        return self.order.names(U)

    def mask(self, items) -> int:
        return self.order.mask(items)

    def __eq__(self, other):
        return isinstance(other, FiniteSpace) and self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def __len__(self):
        return self.order.n

    def __repr__(self):
        return f"FiniteSpace({self.order!r})"


def as_space(P) -> FiniteSpace:
    return P if isinstance(P, FiniteSpace) else FiniteSpace(P)


def specialization(labels, generators) -> Poset:
    """Order read off a generating family: ``x <= y`` iff every generator
    containing ``x`` also contains ``y``."""
    n = len(labels)
    full = (1 << n) - 1
    up = []
    for x in range(n):
        u = full
        for G in generators:
            if G >> x & 1:
                u &= G
        up.append(u)
    for x in range(n):
        for y in iter_bits(up[x] & ~(1 << x)):
            if up[y] >> x & 1:
                raise ValueError(f"generated topology is not T0 at {labels[x]}, {labels[y]}")
    return Poset(labels, up)


def space_from_generators(labels, generators, name=None) -> FiniteSpace:
    generators = tuple(generators)
    return FiniteSpace(specialization(labels, generators), generators, name)


def generated_topology(n: int, generators) -> list[int]:
    """All opens of the topology on ``n`` points generated by ``generators``:
    unions of finite intersections."""
    full = (1 << n) - 1
    basis = {full}
    for G in generators:
        basis |= {B & G for B in basis}
    opens = {0}
    for B in sort_family(basis):
        opens |= {U | B for U in opens}
    return sort_family(opens)


def check_alexandroff(X: FiniteSpace) -> bool:
    """The recorded generating family (if any) generates exactly the upsets,
    and interior/closure of the topology agree with the order formulas."""
    ups = all_upsets(X.order)
    if X.generators is not None and generated_topology(X.n, X.generators) != ups:
        return False
    if X.n <= 6:
        for S in range(1 << X.n):
            interior = 0
            for U in ups:
                if U & ~S == 0:
                    interior |= U
            closure = X.full
            for U in ups:
                if U & S == 0:
                    closure &= ~U
            if interior != int_le(X.order, S) or closure != cl_le(X.order, S):
                return False
    return True


def _literal_opens(X: FiniteSpace) -> bool:
    return X.n <= LITERAL_OPENS_MAX_POINTS


def open_sets(X: FiniteSpace) -> list[int]:
    if not _literal_opens(X):
        raise SizeLimit(f"listing all opens of a {X.n}-point space")
    return all_upsets(X.order)


def co(X: FiniteSpace) -> list[int]:
    # every subset of a finite space is compact
    return open_sets(X)


def is_open(X: FiniteSpace, U: int) -> bool:
    return is_upset(X.order, U)


def star(X: FiniteSpace, U: int) -> int:
    """Pseudocomplement in the open-set lattice: the union of all basic opens
    missing ``U``."""
    if not is_open(X, U):
        raise NotOpen(X.names(U))
    out = 0
    for x in range(X.n):
        if X.order.up[x] & U == 0:
            out |= X.order.up[x]
    return out


def coro(X: FiniteSpace) -> list[int]:
    return list(_coro(X))


@faults.register_cache
@lru_cache(maxsize=256)
def _coro(X: FiniteSpace) -> tuple[int, ...]:
    if _literal_opens(X):
        return tuple(U for U in co(X) if is_ro_upset(X.order, U))
    # too many opens to list: start from the order-regular side instead
    return tuple(U for U in all_ro_upsets(X.order) if is_open(X, U))


def ro(X: FiniteSpace) -> list[int]:
    return [U for U in open_sets(X) if star(X, star(X, U)) == U]


def cro(X: FiniteSpace) -> list[int]:
    regular = set(ro(X))
    return [U for U in co(X) if U in regular]


def oro(X: FiniteSpace) -> list[int]:
    return [U for U in open_sets(X) if is_ro_upset(X.order, U)]


@dataclass
class Report:
    """Clause-by-clause outcome of a classification."""
    clauses: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def record(self, clause: str, ok: bool, detail: str | None = None):
        self.clauses[clause] = ok
        if not ok:
            self.failures.append(detail or clause)

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"ok": self.ok, "clauses": dict(self.clauses), "failures": list(self.failures)}


def is_spectral(X: FiniteSpace) -> Report:
    rep = Report()
    P = X.order
    opens = open_sets(X)
    open_set = set(opens)
    rep.record("compact", X.full in open_set)
    t0 = all(P.up[x] != P.up[y] for x in range(X.n) for y in range(x))
    rep.record("T0", t0)
    # coherence: compact opens closed under binary intersection and form a base
    closed = all((P.up[x] & P.up[y]) in open_set for x in range(X.n) for y in range(X.n))
    if len(opens) <= 400:
        closed = closed and all((U & V) in open_set for U in opens for V in opens)
    rep.record("coherent-intersections", closed)
    base = all(U == _union(P.up[x] for x in iter_bits(U)) for U in opens)
    rep.record("coherent-base", base)
    # sobriety: every completely prime filter of O(X) is O(x).  Filters of the
    # finite lattice O(X) are the sets of opens above a fixed open u.
    sober = True
    for u in opens:
        if u == 0:
            continue  # that filter contains the empty open: not proper
        witness = [x for x in iter_bits(u) if u & ~P.up[x] == 0]
        if not witness:
            continue  # not completely prime: the cover of u by basic opens misses it
        if not any(P.up[x] == u for x in witness):
            sober = False
            rep.failures.append(f"completely prime filter above {X.names(u)} is not a point filter")
    rep.clauses["sober"] = sober
    return rep


def _union(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def is_uv_space(X: FiniteSpace) -> Report:
    """Clause-by-clause UV test (T0, CORO a ∩/¬-closed basis, every proper
    filter of the CORO algebra is the CORO-neighbourhood filter of a point)."""
    return _is_uv_space(X)


@faults.register_cache
@lru_cache(maxsize=4096)
def _is_uv_space(X: FiniteSpace) -> Report:
    rep = Report()
    P = X.order
    rep.record("T0", all(P.up[x] != P.up[y] for x in range(X.n) for y in range(x)))
    fam = coro(X)
    fam_set = set(fam)
    bad_meet = next(((U, V) for U in fam for V in fam if (U & V) not in fam_set), None)
    rep.record("coro-meet-closed", bad_meet is None,
               bad_meet and f"{X.names(bad_meet[0])} ∩ {X.names(bad_meet[1])} not CORO")
    bad_neg = next((U for U in fam if neg_le(P, U) not in fam_set), None)
    rep.record("coro-neg-closed", bad_neg is None,
               bad_neg is not None and f"¬{X.names(bad_neg)} not CORO")
    # every open is a union of principal upsets, so it suffices that each
    # principal upset is a union of CORO sets
    bad_basis = next((x for x in range(X.n)
                      if _union(V for V in fam if V & ~P.up[x] == 0) != P.up[x]), None)
    rep.record("coro-basis", bad_basis is None,
               bad_basis is not None and f"⇑{X.labels[bad_basis]} is not a union of CORO sets")
    if not (rep.clauses["coro-meet-closed"] and rep.clauses["coro-neg-closed"]):
        rep.record("filters-realized", False, "CORO is not a Boolean algebra")
        return rep
    A = family_algebra(P, fam)
    point_filters = {frozenset(V for V in fam if V >> x & 1) for x in range(X.n)}
    missing = None
    for F in enumerate_proper_filters(A):
        sets = frozenset(A.origin[e] for e in F)
        if sets not in point_filters:
            missing = sets
            break
    rep.record("filters-realized", missing is None,
               missing is not None and f"proper filter {[X.names(V) for V in sorted(missing)]} has no point")
    return rep


@faults.register_cache
@lru_cache(maxsize=256)
def _coro_algebra(X: FiniteSpace) -> FiniteBA:
    return family_algebra(X.order, coro(X))


def coro_algebra(X: FiniteSpace) -> FiniteBA:
    """CORO(X) as a Boolean algebra: meet ∩, complement ¬, join int(cl(∪)).

    ``origin[e]`` is the CORO set of element ``e``.
    """
    if not is_uv_space(X):
        raise NotUVSpace(repr(X))
    B = _coro_algebra(X)
    return FiniteBA(B.k, origin=B.origin, name="CORO")


def coro_family_algebra(X: FiniteSpace) -> FiniteBA:
    """Same algebra without the UV precondition (CORO of a finite space is
    always ∩/¬-closed); used to test the characterisation in both directions."""
    return _coro_algebra(X)


def coro_at(X: FiniteSpace, x) -> frozenset[int]:
    """Elements of ``coro_algebra(X)`` whose set contains ``x``."""
    i = X.index(x)
    A = coro_algebra(X)
    F = frozenset(e for e in A.elements() if A.origin[e] >> i & 1)
    if 0 in F or not is_filter(A, F):
        raise CounterexampleError("CORO(x) is a proper filter", {"point": X.labels[i]})
    return F


def meet_point(X: FiniteSpace, x, y, check: bool = True) -> int:
    """Greatest lower bound of two points."""
    if check and not is_uv_space(X):
        raise NotUVSpace(repr(X))
    P = X.order
    i, j = X.index(x), X.index(y)
    lower = P.down[i] & P.down[j]
    for g in iter_bits(lower):
        if P.down[g] & lower == lower:
            return g
    raise NoMeet(f"{X.labels[i]} and {X.labels[j]} have no meet")


def _require_coro(X: FiniteSpace, U: int):
    X.order.check(U)
    if not (is_upset(X.order, U) and is_ro_upset(X.order, U)):
        raise NotCORO(X.names(U))


def decompose(X: FiniteSpace, U: int, z) -> tuple[int, int]:
    """The pair ``(x, y)`` with ``x`` in ``U``, ``y`` in ``¬U`` and meet ``z``.

    Found by exhaustive search.  No pair exists when ``¬U`` is empty or when
    ``z`` itself lies in ``U`` or ``¬U`` (a meet with a point of the other side
    falls strictly below ``z``); both raise :class:`NoWitness`.
    """
    if not is_uv_space(X):
        raise NotUVSpace(repr(X))
    _require_coro(X, U)
    k = X.index(z)
    N = neg_le(X.order, U)
    if N == 0:
        raise NoWitness("¬U is empty")
    found = [(x, y) for x in iter_bits(U) for y in iter_bits(N)
             if meet_point(X, x, y, check=False) == k]
    if not found:
        raise NoWitness(f"no x in U, y in ¬U meet to {X.labels[k]}")
    if len(found) > 1:
        raise CounterexampleError("decomposition is unique",
                                  {"z": X.labels[k], "pairs": [[X.labels[a], X.labels[b]] for a, b in found]})
    return found[0]


def join_coro(X: FiniteSpace, U: int, V: int) -> int:
    _require_coro(X, U)
    _require_coro(X, V)
    W = join_le(X.order, U, V)
    alt = join_via_meets(X, U, V)
    if W != alt:
        raise CounterexampleError("join formulas agree",
                                  {"U": X.names(U), "V": X.names(V), "int_cl": X.names(W), "meets": X.names(alt)})
    return W


def join_via_meets(X: FiniteSpace, U: int, V: int) -> int:
    _require_coro(X, U)
    _require_coro(X, V)
    out = U | V
    for x in iter_bits(U):
        for y in iter_bits(V):
            out |= 1 << meet_point(X, x, y, check=False)
    return out


def restrict(U: int, V: int) -> int:
    """Re-index ``V ∩ U`` into coordinates of the sub-poset induced on ``U``."""
    out = 0
    for t, i in enumerate(iter_bits(U)):
        if V >> i & 1:
            out |= 1 << t
    return out


def expand(U: int, W: int) -> int:
    """Inverse of :func:`restrict`."""
    ids = list(iter_bits(U))
    return from_ids(ids[t] for t in iter_bits(W))


def subspace(X: FiniteSpace, U: int) -> FiniteSpace:
    """The subspace on a CORO set ``U`` (point ``t`` is the t-th member of U)."""
    _require_coro(X, U)
    Y = FiniteSpace(X.order.induced(U))
    if not is_uv_space(Y):
        raise CounterexampleError("CORO subspace is UV", {"U": X.names(U)})
    expected = sort_family(restrict(U, V) for V in coro(X))
    if coro(Y) != expected:
        raise CounterexampleError("CORO of a subspace is the trace", {"U": X.names(U)})
    return Y


def isolated_points(X: FiniteSpace) -> int:
    return from_ids(x for x in range(X.n) if is_open(X, 1 << x))


@lru_cache(maxsize=256)
def is_complete_uv(X: FiniteSpace) -> bool:
    """``int(cl(U))`` is CORO for every open ``U``."""
    fam = set(coro(X))
    return all(int_le(X.order, cl_le(X.order, U)) in fam for U in open_sets(X))


class SpaceMap:
    """A function between finite spaces, stored as ``table[x] = f(x)``."""

    def __init__(self, dom: FiniteSpace, cod: FiniteSpace, table):
        self.dom = dom
        self.cod = cod
        self.table = tuple(table)
        if len(self.table) != dom.n or any(not 0 <= v < cod.n for v in self.table):
            raise ValueError("map table must be total into the codomain")

    @classmethod
    def from_names(cls, dom, cod, mapping: dict):
        table = []
        for x in dom.labels:
            if x not in mapping:
                raise UnknownElement(x)
            table.append(cod.index(mapping[x]))
        return cls(dom, cod, table)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def image(self, U: int | None = None) -> int:
        U = self.dom.full if U is None else U
        return from_ids(self.table[x] for x in iter_bits(U))

    def preimage(self, V: int) -> int:
        return from_ids(x for x in range(self.dom.n) if V >> self.table[x] & 1)

    def as_names(self) -> dict:
        return {self.dom.labels[x]: self.cod.labels[y] for x, y in enumerate(self.table)}

    def __eq__(self, other):
        return (isinstance(other, SpaceMap) and self.dom == other.dom
                and self.cod == other.cod and self.table == other.table)

    def __hash__(self):
        return hash((self.dom, self.cod, self.table))

    def __repr__(self):
        return f"SpaceMap({self.as_names()})"


def identity_map(X: FiniteSpace) -> SpaceMap:
    return SpaceMap(X, X, range(X.n))


def compose_maps(g: SpaceMap, f: SpaceMap) -> SpaceMap:
    """``g ∘ f``."""
    return SpaceMap(f.dom, g.cod, [g.table[f.table[x]] for x in range(f.dom.n)])


def is_injective_map(f: SpaceMap) -> bool:
    return len(set(f.table)) == f.dom.n


def is_surjective_map(f: SpaceMap) -> bool:
    return f.image() == f.cod.full


def preimages_compact_open(f: SpaceMap, family) -> bool:
    return all(is_open(f.dom, f.preimage(V)) for V in family)


def is_spectral_map(f: SpaceMap) -> bool:
    """Preimages of compact opens are compact open."""
    if _literal_opens(f.cod):
        return preimages_compact_open(f, co(f.cod))
    return preimages_compact_open(f, f.cod.order.up)


def is_p_morphism(f: SpaceMap) -> bool:
    D, C = f.dom.order, f.cod.order
    return all(C.up[f.table[x]] & ~f.image(D.up[x]) == 0 for x in range(D.n))


def is_uv_map(f: SpaceMap) -> bool:
    return is_spectral_map(f) and is_p_morphism(f)


def is_uv_embedding(f: SpaceMap) -> bool:
    if not (is_injective_map(f) and is_uv_map(f)):
        return False
    whole = f.image()
    targets = coro(f.cod)
    return all(any(f.image(U) == whole & V for V in targets) for U in coro(f.dom))


def is_homeomorphism(f: SpaceMap) -> bool:
    if not (is_injective_map(f) and is_surjective_map(f)):
        return False
    D, C = f.dom.order, f.cod.order
    return all(D.leq(a, b) == C.leq(f.table[a], f.table[b])
               for a in range(D.n) for b in range(D.n))


def principal_points_iso(X: FiniteSpace) -> bool:
    """x ↦ ⇑x is an order-reversing bijection from the points onto the
    nonempty CORO sets (points are the algebra minus its top, reversed)."""
    fam = [U for U in coro(X) if U]
    ups = [X.order.up[x] for x in range(X.n)]
    if sorted(ups) != sorted(fam):
        return False
    return all(X.order.leq(a, b) == (ups[b] & ~ups[a] == 0)
               for a in range(X.n) for b in range(X.n))


def coro_is_meet_filter(X: FiniteSpace, U: int) -> bool:
    """A CORO set is closed upward and under pairwise meets of its points."""
    if not is_upset(X.order, U):
        return False
    return all(U >> meet_point(X, x, y, check=False) & 1
               for x in iter_bits(U) for y in iter_bits(U))


def co_as_finite_unions(X: FiniteSpace) -> bool:
    fam = coro(X)
    return all(U == _union(V for V in fam if V & ~U == 0) for U in co(X))
