"""Finite posets and the operators of their upset topology.

Subsets of a poset are int bitmasks over element ids: bit ``i`` set means
element ``i`` is a member.  Every poset stores, per element, the mask of its
principal upset and principal downset.
"""
from __future__ import annotations

from functools import cached_property

from . import faults
from .balg import FiniteBA, ba_from_tables
from .bits import from_ids, iter_bits, popcount, sort_family
from .errors import CycleError, DuplicateLabelError, HostMismatch, UnknownElement


class Poset:
    """A finite partial order on ids ``0..n-1`` with display labels.

    ``up[i]`` is the mask of every element ``>= i`` (including ``i``).
    """

    def __init__(self, labels, up):
        labels = tuple(str(l) for l in labels)
        seen = set()
        for l in labels:
            if l in seen:
                raise DuplicateLabelError(l)
            seen.add(l)
        up = tuple(int(u) for u in up)
        n = len(labels)
        if len(up) != n:
            raise ValueError("need one upset per element")
        full = (1 << n) - 1
        for i, u in enumerate(up):
            if u & ~full:
                raise HostMismatch(f"upset of {labels[i]} mentions unknown ids")
            if not u >> i & 1:
                raise ValueError(f"relation is not reflexive at {labels[i]}")
            for j in iter_bits(u):
                if up[j] & ~u:
                    raise ValueError(f"relation is not transitive at {labels[i]}")
                if j != i and up[j] >> i & 1:
                    raise CycleError(labels[i], labels[j])
        self.n = n
        self.labels = labels
        self.up = up
        self.full = full
        down = [0] * n
        for i, u in enumerate(up):
            for j in iter_bits(u):
                down[j] |= 1 << i
        self.down = tuple(down)
        self._index = {l: i for i, l in enumerate(labels)}

    def index(self, x) -> int:
        """Element id for a label or an id."""
        if isinstance(x, str):
            if x not in self._index:
                raise UnknownElement(x)
            return self._index[x]
        if isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.n:
            return x
        raise UnknownElement(x)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def check(self, U: int) -> int:
        if not isinstance(U, int) or U < 0 or U & ~self.full:
            raise HostMismatch(f"{U!r} is not a subset of this {self.n}-element poset")
        return U

    def mask(self, items) -> int:
        return from_ids(self.index(x) for x in items)

    def names(self, U: int) -> list[str]:
        return [self.labels[i] for i in iter_bits(self.check(U))]

    @cached_property
    def maximal(self) -> int:
        return from_ids(i for i in range(self.n) if self.up[i] == 1 << i)

    @cached_property
    def minimal(self) -> int:
        return from_ids(i for i in range(self.n) if self.down[i] == 1 << i)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(i, j)`` with ``i < j`` and nothing strictly between."""
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in iter_bits(strict):
                if not any(self.up[k] >> j & 1 for k in iter_bits(strict & ~(1 << j))):
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def height(self) -> tuple[int, ...]:
        """Length of the longest chain ending at each element."""
        h = [0] * self.n
        for i in sorted(range(self.n), key=lambda i: popcount(self.down[i])):
            below = self.down[i] & ~(1 << i)
            h[i] = 1 + max((h[j] for j in iter_bits(below)), default=-1)
        return tuple(h)

    def relation(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in iter_bits(self.up[i])]

    def induced(self, U: int) -> "Poset":
        """Sub-poset on the members of ``U``; new id ``t`` is the t-th member."""
        ids = list(iter_bits(self.check(U)))
        pos = {old: new for new, old in enumerate(ids)}
        up = [from_ids(pos[j] for j in iter_bits(self.up[i] & U)) for i in ids]
        return Poset([self.labels[i] for i in ids], up)

    def relabel(self, labels) -> "Poset":
        return Poset(labels, self.up)

    def dual(self) -> "Poset":
        return Poset(self.labels, self.down)

    def _key(self):
        return (self.labels, self.up)

    def __eq__(self, other):
        return isinstance(other, Poset) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self):
        return self.n

    def __repr__(self):
        rel = ", ".join(f"{self.labels[a]}<{self.labels[b]}" for a, b in self.covers)
        return f"Poset([{', '.join(self.labels)}]; {rel})"


def validate_poset(pairs, elements=None) -> Poset:
    """Build a poset from ``(a, b)`` pairs meaning ``a <= b``.

    The reflexive-transitive closure is taken, so covers suffice.  Element ids
    follow first appearance: ``elements`` first (if given), then the pairs.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    if elements is not None:
        for e in elements:
            e = str(e)
            if e in index:
                raise DuplicateLabelError(e)
            index[e] = len(labels)
            labels.append(e)
    edges = []
    for a, b in pairs:
        ids = []
        for e in (str(a), str(b)):
            if e not in index:
                if elements is not None:
                    raise UnknownElement(e)
                index[e] = len(labels)
                labels.append(e)
            ids.append(index[e])
        edges.append(ids)
    n = len(labels)
    up = [1 << i for i in range(n)]
    for a, b in edges:
        up[a] |= 1 << b
    # Warshall closure on bit rows
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    for i in range(n):
        for j in iter_bits(up[i] & ~(1 << i)):
            if up[j] >> i & 1:
                raise CycleError(labels[i], labels[j])
    return Poset(labels, up)


def chain(n: int, prefix: str = "c") -> Poset:
    return Poset([f"{prefix}{i}" for i in range(n)],
                 [((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)])


def antichain(n: int, prefix: str = "p") -> Poset:
    return Poset([f"{prefix}{i}" for i in range(n)], [1 << i for i in range(n)])


def up_set(P: Poset, x) -> int:
    return P.up[P.index(x)]


def down_set(P: Poset, x) -> int:
    return P.down[P.index(x)]


def upset_of(P: Poset, U: int) -> int:
    """Smallest upset containing ``U``."""
    out = 0
    for i in iter_bits(P.check(U)):
        out |= P.up[i]
    return out


def downset_of(P: Poset, U: int) -> int:
    out = 0
    for i in iter_bits(P.check(U)):
        out |= P.down[i]
    return out


def is_upset(P: Poset, U: int) -> bool:
    P.check(U)
    return all(P.up[i] & ~U == 0 for i in iter_bits(U))


def is_downset(P: Poset, U: int) -> bool:
    P.check(U)
    return all(P.down[i] & ~U == 0 for i in iter_bits(U))


def cl_le(P: Poset, U: int) -> int:
    """Points with some point of ``U`` above them."""
    P.check(U)
    return from_ids(i for i in range(P.n) if P.up[i] & U)


def int_le(P: Poset, U: int) -> int:
    """Points whose whole principal upset lies in ``U``."""
    P.check(U)
    return from_ids(i for i in range(P.n) if P.up[i] & ~U == 0)


def neg_le(P: Poset, U: int) -> int:
    """Pseudocomplement: points with no point of ``U`` above them."""
    P.check(U)
    if faults.active("neg"):
        return P.full & ~U
    return from_ids(i for i in range(P.n) if P.up[i] & U == 0)


def join_le(P: Poset, U: int, V: int) -> int:
    return int_le(P, cl_le(P, U | V))


def is_ro_upset(P: Poset, U: int) -> bool:
    return is_upset(P, U) and int_le(P, cl_le(P, U)) == U


def all_upsets(P: Poset) -> list[int]:
    """Every upset, in size-then-lexicographic order.

    Elements are decided from the top down: an element may join only when its
    whole strict upset is already in.
    """
    order = sorted(range(P.n), key=lambda i: (-P.height[i], i))
    strict = [P.up[i] & ~(1 << i) for i in range(P.n)]
    out = []

    def rec(t, cur):
        if t == len(order):
            out.append(cur)
            return
        i = order[t]
        if strict[i] & ~cur == 0:
            rec(t + 1, cur | 1 << i)
        rec(t + 1, cur)

    rec(0, 0)
    return sort_family(out)


def all_ro_upsets(P: Poset) -> list[int]:
    """All regular open upsets, in size-then-lexicographic order.

    In a finite poset an upset is regular open exactly when it consists of the
    points all of whose maximal points above lie in a fixed set of maximal
    points, so one set arises per subset of the maximal points.
    """
    maxima = list(iter_bits(P.maximal))
    max_above = [P.up[i] & P.maximal for i in range(P.n)]
    out = []
    for sel in range(1 << len(maxima)):
        M = from_ids(m for t, m in enumerate(maxima) if sel >> t & 1)
        out.append(from_ids(i for i in range(P.n) if max_above[i] & ~M == 0))
    return sort_family(out)


def is_separative(P: Poset) -> bool:
    """Every principal upset is regular open.

    Also evaluates the first-order form (x not below y gives some z above y
    sharing no upper bound with x) and insists the two agree.
    """
    by_ro = all(is_ro_upset(P, P.up[i]) for i in range(P.n))
    by_fo = True
    for x in range(P.n):
        for y in range(P.n):
            if P.leq(x, y):
                continue
            if not any(P.up[z] & P.up[x] == 0 for z in iter_bits(P.up[y])):
                by_fo = False
                break
        if not by_fo:
            break
    if by_ro != by_fo:
        raise AssertionError(f"separativity characterisations disagree on {P!r}")
    return by_ro


def family_algebra(P: Poset, family, validate: bool = True) -> FiniteBA:
    """The Boolean algebra on a family of subsets of ``P`` closed under ∩ and
    ¬, with join ``int(cl(U ∪ V))``.

    Validated against every BA axiom by exhaustion (internal assertion); the
    result is in atom form with ``origin`` giving each element's subset.
    """
    family = sort_family(family)
    pos = {U: t for t, U in enumerate(family)}
    m = len(family)
    try:
        meet = [[pos[U & V] for V in family] for U in family]
        join = [[pos[join_le(P, U, V)] for V in family] for U in family]
        neg = [pos[neg_le(P, U)] for U in family]
    except KeyError as exc:
        raise AssertionError(f"family is not closed: {exc}") from None
    if validate:
        A, renaming = ba_from_tables(m, meet, join, neg, pos[0], pos[P.full])
        origin = [family[t] for t in A.origin]
    else:
        # atom form without the cubic validation: atoms are the minimal nonempty sets
        atoms = [U for U in family if U and all(V == U or V & U != V or V == 0 for V in family)]
        origin = []
        for e in range(1 << len(atoms)):
            U = 0
            for i in iter_bits(e):
                U = join_le(P, U, atoms[i])
            origin.append(U)
        if sorted(origin) != sorted(family):
            raise AssertionError("atoms do not generate the family")
        A = FiniteBA(len(atoms))
    return FiniteBA(A.k, origin=origin)


def ro_algebra(P: Poset) -> FiniteBA:
    """Regular open upsets of ``P`` as a Boolean algebra in atom form."""
    B = family_algebra(P, all_ro_upsets(P))
    return FiniteBA(B.k, origin=B.origin, name="RO")
