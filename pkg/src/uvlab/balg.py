"""Finite Boolean algebras in atom coordinates.

An algebra with ``k`` atoms has elements ``0 .. 2**k - 1``; element ``e``
stands for the set of atoms whose bits are set, so meet is ``&``, join is
``|`` and complement is ``top ^ e``.  Algebras built from some other structure
keep an ``origin`` tuple mapping each element back to what it came from (a
subset mask of a poset, an element of a bigger algebra, ...).
"""
from __future__ import annotations

import itertools
import string
from functools import lru_cache

import numpy as np

from . import faults, limits
from .bits import iter_bits, popcount
from .errors import (AxiomViolation, NotAnIdeal, SizeLimit, UnknownElement,
                     ZeroRelativization)


def default_atom_labels(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(string.ascii_lowercase[:k])
    return tuple(f"a{i}" for i in range(k))


class FiniteBA:
    """The powerset algebra on ``k`` atoms, optionally labelled."""

    def __init__(self, k: int, labels=None, origin=None, name: str | None = None):
        if k < 0:
            raise ValueError("atom count must be non-negative")
        self.k = k
        self.size = 1 << k
        self.top = self.size - 1
        self.labels = tuple(labels) if labels is not None else default_atom_labels(k)
        if len(self.labels) != k:
            raise ValueError("need one label per atom")
        if origin is not None:
            origin = tuple(origin)
            if len(origin) != self.size:
                raise ValueError("origin must cover every element")
        self.origin = origin
        self.name = name or f"B{k}"

    @property
    def is_degenerate(self) -> bool:
        return self.k == 0

    def elements(self):
        return range(self.size)

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.k)]

    def nonzero(self):
        return range(1, self.size)

    def check(self, e: int) -> int:
        if not isinstance(e, int) or not 0 <= e < self.size:
            raise UnknownElement(e)
        return e

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return a | b

    def neg(self, a: int) -> int:
        return self.top ^ a

    def leq(self, a: int, b: int) -> bool:
        return a & b == a

    def element_name(self, e: int) -> str:
        if e == 0:
            return "0"
        if e == self.top:
            return "1"
        return "+".join(self.labels[i] for i in iter_bits(e))

    def parse_element(self, text: str) -> int:
        """Inverse of :meth:`element_name`; also accepts ``-x`` for complements."""
        text = text.strip()
        if text.startswith("-"):
            return self.neg(self.parse_element(text[1:]))
        if text == "0":
            return 0
        if text == "1":
            return self.top
        index = {lab: i for i, lab in enumerate(self.labels)}
        mask = 0
        for part in text.split("+"):
            if part not in index:
                raise UnknownElement(part)
            mask |= 1 << index[part]
        return mask

    def up(self, a: int) -> frozenset[int]:
        return frozenset(b for b in self.elements() if a & b == a)

    def down(self, a: int) -> frozenset[int]:
        return frozenset(b for b in self.elements() if a & b == b)

    def _key(self):
        return (self.k, self.labels, self.origin)

    def __eq__(self, other):
        return isinstance(other, FiniteBA) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FiniteBA(k={self.k}, name={self.name!r})"


def powerset_ba(k: int) -> FiniteBA:
    if k < 0:
        raise ValueError("atom count must be non-negative")
    if k > limits.MAX_ATOMS:
        raise SizeLimit(f"{k} atoms exceeds the limit of {limits.MAX_ATOMS}")
    return FiniteBA(k)


def is_isomorphic(A: FiniteBA, B: FiniteBA) -> bool:
    return A.k == B.k


def _first_false(mask: np.ndarray):
    bad = np.argwhere(~mask)
    return None if len(bad) == 0 else tuple(int(v) for v in bad[0])


def ba_from_tables(carrier: int, meet, join, neg, zero: int, one: int):
    """Validate a BA given by operation tables and put it in atom form.

    Returns ``(A, renaming)`` where ``renaming[x]`` is the atom-coordinate
    element corresponding to table element ``x``.  ``A.origin`` maps back.
    """
    n = carrier
    M = np.asarray(meet, dtype=np.int64)
    J = np.asarray(join, dtype=np.int64)
    N = np.asarray(neg, dtype=np.int64)
    if n < 1 or M.shape != (n, n) or J.shape != (n, n) or N.shape != (n,):
        raise AxiomViolation("shape", {"carrier": n})
    for tab_name, tab in (("meet", M), ("join", J), ("neg", N)):
        out = (tab < 0) | (tab >= n)
        if out.any():
            raise AxiomViolation("totality", {"table": tab_name,
                                              "at": [int(v) for v in np.argwhere(out)[0]]})
    if not (0 <= zero < n and 0 <= one < n):
        raise AxiomViolation("totality", {"zero": zero, "one": one})

    x = np.arange(n)
    X, Y = np.meshgrid(x, x, indexing="ij")
    checks2 = [
        ("meet-commutativity", M == M.T),
        ("join-commutativity", J == J.T),
        ("meet-absorption", M[X, J] == X),
        ("join-absorption", J[X, M] == X),
    ]
    for axiom, ok in checks2:
        w = _first_false(ok)
        if w is not None:
            raise AxiomViolation(axiom, w)
    checks1 = [
        ("meet-identity", M[x, one] == x),
        ("join-identity", J[x, zero] == x),
        ("complement-meet", M[x, N] == zero),
        ("complement-join", J[x, N] == one),
    ]
    for axiom, ok in checks1:
        w = _first_false(ok)
        if w is not None:
            raise AxiomViolation(axiom, w)
    A3, B3, C3 = np.meshgrid(x, x, x, indexing="ij")
    checks3 = [
        ("meet-associativity", M[M[A3, B3], C3] == M[A3, M[B3, C3]]),
        ("join-associativity", J[J[A3, B3], C3] == J[A3, J[B3, C3]]),
        ("distributivity", M[A3, J[B3, C3]] == J[M[A3, B3], M[A3, C3]]),
    ]
    for axiom, ok in checks3:
        w = _first_false(ok)
        if w is not None:
            raise AxiomViolation(axiom, w)

    leq = M == X  # leq[a, b] iff a ∧ b = a
    atoms = [a for a in range(n) if a != zero
             and all(b == zero or b == a or not leq[b, a] for b in range(n))]
    k = len(atoms)
    renaming = []
    for e in range(n):
        mask = 0
        for i, a in enumerate(atoms):
            if leq[a, e]:
                mask |= 1 << i
        renaming.append(mask)
    if sorted(renaming) != list(range(1 << k)):
        raise AssertionError("atom coordinates are not a bijection")
    for a in range(n):
        if renaming[int(N[a])] != (1 << k) - 1 ^ renaming[a]:
            raise AssertionError("complement not preserved by atom coordinates")
        for b in range(n):
            if renaming[int(M[a, b])] != renaming[a] & renaming[b]:
                raise AssertionError("meet not preserved by atom coordinates")
    origin = [0] * (1 << k)
    for e, mask in enumerate(renaming):
        origin[mask] = e
    return FiniteBA(k, origin=origin), renaming


def tables_of(A: FiniteBA) -> dict:
    """Operation tables of ``A`` in the document layout used by ``ba.json``."""
    els = list(A.elements())
    return {
        "carrier": A.size,
        "meet": [[a & b for b in els] for a in els],
        "join": [[a | b for b in els] for a in els],
        "neg": [A.neg(a) for a in els],
        "zero": 0,
        "one": A.top,
    }


def _closed_sets(k: int, upward: bool):
    """All nonempty up- (down-)closed, meet- (join-)closed subsets of the
    k-atom algebra.  For ``upward`` the bottom element is never admitted, so
    the results are the proper filters; otherwise all ideals.

    Exhaustive search over inclusion decisions, top-down (bottom-up for
    ideals), pruning partial choices that already violate closure.
    """
    top = (1 << k) - 1
    if upward:
        order = sorted(range(1, top + 1), key=lambda e: (-popcount(e), e))
    else:
        order = sorted(range(0, top + 1), key=lambda e: (popcount(e), e))

    def covers(e):
        if upward:
            return [e | (1 << j) for j in range(k) if not e >> j & 1]
        return [e & ~(1 << j) for j in range(k) if e >> j & 1]

    cover_lists = {e: covers(e) for e in order}
    out = []

    def rec(i, members, forced):
        if i == len(order):
            if members and not forced - members:
                out.append(frozenset(members))
            return
        e = order[i]
        can = all(c in members for c in cover_lists[e])
        must = e in forced
        if can:
            new_forced = set(forced)
            ok = True
            for f in members:
                g = (e & f) if upward else (e | f)
                if upward and g == 0:
                    ok = False
                    break
                if g != e and g != f:
                    new_forced.add(g)
            if ok:
                members.add(e)
                rec(i + 1, members, new_forced)
                members.discard(e)
        if not must:
            rec(i + 1, members, forced)

    rec(0, set(), set())
    return out


def _filter_sort_key(F):
    return (len(F), sorted(F))


@faults.register_cache
@lru_cache(maxsize=None)
def _proper_filters(k: int) -> tuple[frozenset, ...]:
    return tuple(sorted(_closed_sets(k, True), key=_filter_sort_key))


@faults.register_cache
@lru_cache(maxsize=None)
def _ideals(k: int) -> tuple[frozenset, ...]:
    return tuple(sorted(_closed_sets(k, False), key=_filter_sort_key))


def enumerate_proper_filters(A: FiniteBA) -> list[frozenset[int]]:
    """Every proper filter of ``A`` found by exhaustive search (not by
    assuming principality), sorted by size then members."""
    if A.k > limits.MAX_ATOMS:
        raise SizeLimit(f"{A.k} atoms exceeds the limit of {limits.MAX_ATOMS}")
    return list(_proper_filters(A.k))


def enumerate_ideals(A: FiniteBA) -> list[frozenset[int]]:
    """All ideals, including ``{0}`` and the unit ideal."""
    if A.k > limits.MAX_ATOMS:
        raise SizeLimit(f"{A.k} atoms exceeds the limit of {limits.MAX_ATOMS}")
    found = list(_ideals(A.k))
    for I in found:
        if I != A.down(max(I)):
            raise AssertionError(f"non-principal ideal {sorted(I)}")
    return found


def is_filter(A: FiniteBA, F) -> bool:
    F = set(F)
    if not F:
        return False
    return (all(b in F for a in F for b in A.elements() if a & b == a)
            and all(a & b in F for a in F for b in F))


def is_ideal(A: FiniteBA, I) -> bool:
    I = set(I)
    if not I:
        return False
    return (all(b in I for a in I for b in A.elements() if a & b == b)
            and all(a | b in I for a in I for b in I))


def filter_generated(A: FiniteBA, seed) -> frozenset[int] | None:
    """Least filter containing ``seed``; ``None`` when that filter is improper."""
    F = {A.top} | {A.check(s) for s in seed}
    while True:
        grown = set(F)
        grown.update(a & b for a in F for b in F)
        grown.update(b for a in F for b in A.elements() if a & b == a)
        if grown == F:
            break
        F = grown
    if 0 in F:
        return None
    return frozenset(F)


def ideal_generated(A: FiniteBA, seed) -> frozenset[int]:
    I = {0} | {A.check(s) for s in seed}
    while True:
        grown = set(I)
        grown.update(a | b for a in I for b in I)
        grown.update(b for a in I for b in A.elements() if a & b == b)
        if grown == I:
            return frozenset(I)
        I = grown


def upper_bounds(A: FiniteBA, S) -> frozenset[int]:
    return frozenset(b for b in A.elements() if all(s & b == s for s in S))


def lower_bounds(A: FiniteBA, S) -> frozenset[int]:
    return frozenset(c for c in A.elements() if all(c & s == c for s in S))


def is_normal_ideal(A: FiniteBA, I) -> bool:
    if not is_ideal(A, I):
        raise NotAnIdeal(sorted(I))
    return lower_bounds(A, upper_bounds(A, I)) == frozenset(I)


def product_ba(A: FiniteBA, B: FiniteBA) -> FiniteBA:
    """Componentwise product; element ``a | b << A.k`` is the pair (a, b)."""
    k = A.k + B.k
    if k > limits.MAX_ATOMS:
        raise SizeLimit(f"{k} atoms exceeds the limit of {limits.MAX_ATOMS}")
    if set(A.labels) & set(B.labels):
        labels = [f"{l}1" for l in A.labels] + [f"{l}2" for l in B.labels]
    else:
        labels = list(A.labels) + list(B.labels)
    return FiniteBA(k, labels=labels, name=f"{A.name}x{B.name}")


def product_parts(A: FiniteBA, B: FiniteBA, e: int) -> tuple[int, int]:
    return e & A.top, e >> A.k


def product_element(A: FiniteBA, B: FiniteBA, a: int, b: int) -> int:
    return a | (b << A.k)


def relativize(A: FiniteBA, a: int) -> FiniteBA:
    """The algebra ``{b | b <= a}`` with complement ``c -> a ∧ -c``.

    ``origin`` maps each element back to the element of ``A`` it came from.
    """
    A.check(a)
    if a == 0:
        raise ZeroRelativization("cannot relativize to 0")
    positions = list(iter_bits(a))
    origin = []
    for e in range(1 << len(positions)):
        origin.append(sum(1 << p for i, p in enumerate(positions) if e >> i & 1))
    B = FiniteBA(len(positions), labels=[A.labels[p] for p in positions],
                 origin=origin, name=f"{A.name}|{A.element_name(a)}")
    for e in B.elements():
        if origin[B.neg(e)] != a & A.neg(origin[e]):
            raise AssertionError("relative complement mismatch")
    return B


class BAHom:
    """A map between algebras given by its table ``dom element -> cod element``."""

    def __init__(self, dom: FiniteBA, cod: FiniteBA, table):
        self.dom = dom
        self.cod = cod
        self.table = tuple(table)
        if len(self.table) != dom.size:
            raise ValueError("hom table must be total on the domain")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def __eq__(self, other):
        return (isinstance(other, BAHom) and self.dom == other.dom
                and self.cod == other.cod and self.table == other.table)

    def __hash__(self):
        return hash((self.dom, self.cod, self.table))

    def __repr__(self):
        return f"BAHom({self.dom.name}->{self.cod.name}, {list(self.table)})"


def identity_hom(A: FiniteBA) -> BAHom:
    return BAHom(A, A, range(A.size))


def compose_homs(g: BAHom, h: BAHom) -> BAHom:
    """``g ∘ h``."""
    return BAHom(h.dom, g.cod, [g.table[h.table[a]] for a in h.dom.elements()])


def is_homomorphism(h: BAHom) -> bool:
    A, B, t = h.dom, h.cod, h.table
    if any(not 0 <= v < B.size for v in t):
        return False
    if t[0] != 0 or t[A.top] != B.top:
        return False
    for a in A.elements():
        if t[A.neg(a)] != B.neg(t[a]):
            return False
        for b in A.elements():
            if t[a & b] != t[a] & t[b]:
                return False
    return True


def is_injective(h: BAHom) -> bool:
    return len(set(h.table)) == h.dom.size


def is_surjective(h: BAHom) -> bool:
    return set(h.table) == set(h.cod.elements())


def enumerate_homs(A: FiniteBA, B: FiniteBA) -> list[BAHom]:
    """All homomorphisms A -> B, one per function g: atoms(B) -> atoms(A)."""
    count = A.k ** B.k
    if count > limits.MAX_HOMS:
        raise SizeLimit(f"{count} candidate homomorphisms")
    homs = []
    for g in itertools.product(range(A.k), repeat=B.k):
        table = []
        for a in A.elements():
            table.append(sum(1 << beta for beta, alpha in enumerate(g) if a >> alpha & 1))
        h = BAHom(A, B, table)
        if not is_homomorphism(h):
            raise AssertionError(f"atom function {g} did not give a homomorphism")
        homs.append(h)
    return homs


def subalgebra_generated(A: FiniteBA, S) -> tuple[FiniteBA, BAHom]:
    """Closure of ``S ∪ {0, 1}`` under meet and complement.

    Returns the subalgebra in atom form and its inclusion into ``A``.
    """
    C = {0, A.top} | {A.check(s) for s in S}
    while True:
        grown = set(C)
        grown.update(A.neg(a) for a in C)
        grown.update(a & b for a in C for b in C)
        if grown == C:
            break
        C = grown
    sub_atoms = sorted(a for a in C if a and all(b == 0 or b == a or b & a != b for b in C))
    k = len(sub_atoms)
    if k > limits.MAX_ATOMS:
        raise SizeLimit(f"subalgebra with {k} atoms")
    table = [sum(sub_atoms[i] for i in iter_bits(e)) for e in range(1 << k)]
    if set(table) != C:
        raise AssertionError("subalgebra atoms do not generate the closure")
    B = FiniteBA(k, labels=[f"s{i}" for i in range(k)], origin=table, name=f"sub({A.name})")
    return B, BAHom(B, A, table)
