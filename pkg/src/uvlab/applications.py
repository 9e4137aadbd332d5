"""Chains, antichains and regular partitions of CORO sets, signatures of
points, the map onto the dual of a finite power set algebra, and the split of
a complete UV-space into atomless and atomic parts."""
from __future__ import annotations

from dataclasses import dataclass

from .balg import is_injective, powerset_ba, subalgebra_generated
from .bits import family_key, iter_bits, popcount
from .duality import dual_map, uv_dual
from .errors import (CounterexampleError, NotUVSpace, TooLong, TooManyBlocks,
                     TrivialSplit)
from .order import cl_le, int_le, join_le, neg_le
from .uvspace import (FiniteSpace, SpaceMap, coro, coro_algebra, is_complete_uv,
                      is_surjective_map, is_uv_map, is_uv_space, isolated_points,
                      join_via_meets, meet_point, subspace)
from .dictionary import split_by_coro


def _require_uv(X: FiniteSpace):
    if not is_uv_space(X):
        raise NotUVSpace(repr(X))


def _split_step(X: FiniteSpace, U: int, fam) -> int | None:
    """Shrink ``U`` by a CORO set separating two of its points.

    Among all ``U ∩ V`` and ``U ∩ ¬V`` for separating ``V`` that are nonempty,
    proper and leave ``U ∩ ¬W`` inhabited, take the largest (ties: least in
    size-then-lexicographic order).
    """
    P = X.order
    best = None
    for V in fam:
        inside, outside = U & V, U & ~V
        if not inside or not outside:
            continue
        separates = any(not P.leq(x, y) for x in iter_bits(inside) for y in iter_bits(outside))
        if not separates:
            continue
        for W in (inside, U & neg_le(P, V)):
            if not W or W == U or not U & neg_le(P, W):
                continue
            key = (-popcount(W), family_key(W))
            if best is None or key < best[0]:
                best = (key, W)
    return None if best is None else best[1]


def find_chain(X: FiniteSpace, length: int) -> list[int]:
    """A strictly descending chain of CORO sets starting at ``X``."""
    _require_uv(X)
    if length < 1:
        raise ValueError("chain length must be positive")
    k = coro_algebra(X).k
    if length > k:
        raise TooLong(f"chain of length {length} in an algebra with {k} atoms")
    fam = coro(X)
    chain = [X.full]
    while len(chain) < length:
        W = _split_step(X, chain[-1], fam)
        if W is None:
            raise TooLong(f"no further split after {len(chain)} sets")
        chain.append(W)
    return chain


def find_antichain(X: FiniteSpace, length: int) -> list[int]:
    """Pairwise disjoint nonempty CORO sets ``U_i ∩ ¬U_{i+1}`` read off a chain
    closed by the empty set."""
    chain = find_chain(X, length) + [0]
    P = X.order
    return [chain[i] & neg_le(P, chain[i + 1]) for i in range(length)]


@dataclass
class RegularPartition:
    space: FiniteSpace
    blocks: list[int]

    def names(self) -> list[list[str]]:
        return [self.space.names(U) for U in self.blocks]


def validate_partition(X: FiniteSpace, blocks) -> RegularPartition:
    P = X.order
    fam = set(coro(X))
    for U in blocks:
        if U not in fam or U == 0:
            raise CounterexampleError("blocks are nonempty CORO sets", {"block": X.names(U)})
    for i, U in enumerate(blocks):
        for V in blocks[i + 1:]:
            if U & V:
                raise CounterexampleError("blocks are disjoint", {"a": X.names(U), "b": X.names(V)})
    by_closure, by_meets = 0, 0
    for U in blocks:
        by_closure = join_le(P, by_closure, U)
        by_meets = join_via_meets(X, by_meets, U)
    if by_closure != X.full or by_meets != X.full:
        raise CounterexampleError("blocks join to the whole space",
                                  {"int_cl": X.names(by_closure), "meets": X.names(by_meets)})
    for i, U in enumerate(blocks):
        rest = 0
        for j, V in enumerate(blocks):
            if j != i:
                rest |= V
        if U & int_le(P, cl_le(P, rest)):
            raise CounterexampleError("block misses int(cl(other blocks))", {"block": X.names(U)})
    return RegularPartition(X, list(blocks))


def regular_partition(X: FiniteSpace, n: int) -> RegularPartition:
    """``n + 1`` blocks."""
    _require_uv(X)
    k = coro_algebra(X).k
    if n < 0 or n + 1 > k:
        raise TooManyBlocks(f"{n + 1} blocks in an algebra with {k} atoms")
    return validate_partition(X, find_antichain(X, n + 1))


def all_regular_partitions(X: FiniteSpace) -> list[list[int]]:
    """Every unordered family of pairwise disjoint nonempty CORO sets whose
    join is ``X``, each listed in family order."""
    _require_uv(X)
    P = X.order
    fam = [U for U in coro(X) if U]
    out = []

    def rec(start, chosen, used, joined):
        if joined == X.full:
            out.append(list(chosen))
        for t in range(start, len(fam)):
            U = fam[t]
            if U & used:
                continue
            chosen.append(U)
            rec(t + 1, chosen, used | U, join_le(P, joined, U))
            chosen.pop()

    rec(0, [], 0, 0)
    return [validate_partition(X, blocks).blocks for blocks in out]


def subset_joins(X: FiniteSpace, blocks) -> list[int]:
    """Join of the blocks indexed by each bitmask ``J``."""
    P = X.order
    out = [0] * (1 << len(blocks))
    for J in range(1, 1 << len(blocks)):
        low = (J & -J).bit_length() - 1
        out[J] = join_le(P, out[J & (J - 1)], blocks[low])
    return out


def signature(X: FiniteSpace, blocks, x, joins=None) -> frozenset[int]:
    """Indices (0-based) of the blocks reachable above ``x``; re-checked as the
    unique minimal index set whose join contains ``x``."""
    i = X.index(x)
    up = X.order.up[i]
    K = sum(1 << t for t, U in enumerate(blocks) if up & U)
    joins = joins if joins is not None else subset_joins(X, blocks)

    def defining(S):
        if not joins[S] >> i & 1:
            return False
        J = (S - 1) & S
        while True:
            if J != S and joins[J] >> i & 1:
                return False
            if J == 0:
                return True
            J = (J - 1) & S

    satisfying = [S for S in range(len(joins)) if defining(S)]
    if satisfying != [K]:
        raise CounterexampleError("signature is the unique minimal index set",
                                  {"x": X.labels[i], "closed_form": list(iter_bits(K)),
                                   "definitional": [list(iter_bits(S)) for S in satisfying]})
    return frozenset(iter_bits(K))


def realizes_all_signatures(X: FiniteSpace, blocks) -> bool:
    joins = subset_joins(X, blocks)
    seen = {frozenset(signature(X, blocks, x, joins)) for x in range(X.n)}
    return all(frozenset(iter_bits(K)) in seen for K in range(1, 1 << len(blocks)))


def embed_bn(X: FiniteSpace, n: int):
    """Surjective UV-map onto the dual of the n-atom algebra, and the injective
    homomorphism it induces."""
    _require_uv(X)
    if n < 1:
        raise ValueError("n must be positive")
    part = regular_partition(X, n - 1)
    B = powerset_ba(n)
    D = uv_dual(B)
    Y = D.space
    tops = [D.point_of(B.up(a)) for a in B.atoms()]
    joins = subset_joins(X, part.blocks)
    table = []
    for x in range(X.n):
        K = sorted(signature(X, part.blocks, x, joins))
        y = tops[K[0]]
        for t in K[1:]:
            y = meet_point(Y, y, tops[t], check=False)
        table.append(y)
    f = SpaceMap(X, Y, table)
    if not (is_surjective_map(f) and is_uv_map(f)):
        raise CounterexampleError("signature map is a surjective UV-map", {"n": n, "points": X.n})
    e = dual_map(f)
    if not is_injective(e):
        raise CounterexampleError("dual of the signature map is injective", {"n": n})
    image, _ = subalgebra_generated(e.cod, set(e.table))
    if image.k != n:
        raise CounterexampleError("image subalgebra has n atoms", {"n": n, "atoms": image.k})
    return f, e


@dataclass
class CompleteSplit:
    atomless: FiniteSpace | None
    atomic: FiniteSpace
    atomic_set: int
    witness: SpaceMap | None
    trivial: bool


def split_complete(X: FiniteSpace) -> CompleteSplit:
    _require_uv(X)
    if not is_complete_uv(X):
        raise CounterexampleError("finite UV-space is complete", {"points": X.n})
    P = X.order
    U = int_le(P, cl_le(P, isolated_points(X)))
    N = neg_le(P, U)
    atomic = subspace(X, U)
    if cl_le(atomic.order, isolated_points(atomic)) != atomic.full:
        raise CounterexampleError("isolated points are dense in the atomic part", {})
    atomless = None
    if N:
        atomless = subspace(X, N)
        if isolated_points(atomless):
            raise CounterexampleError("atomless part has no isolated points", {})
    try:
        witness, trivial = split_by_coro(X, U), False
    except TrivialSplit:
        witness, trivial = None, True
    return CompleteSplit(atomless, atomic, U, witness, trivial)
