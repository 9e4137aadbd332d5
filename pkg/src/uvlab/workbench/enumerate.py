"""Instance generators: finite posets (labeled or up to isomorphism) and a few
families of algebras."""
from __future__ import annotations

import itertools
import random
from collections import defaultdict

from .. import limits
from ..balg import FiniteBA, powerset_ba, subalgebra_generated
from ..bits import iter_bits
from ..errors import SizeLimit
from ..iso import certificate, find_isomorphism
from ..order import Poset, all_upsets


def _labels(n: int) -> list[str]:
    return [f"x{i}" for i in range(n)]


def _downsets(P: Poset) -> list[int]:
    return all_upsets(P.dual())


def _labeled(n: int) -> list[Poset]:
    """All partial orders on ``x0..x{n-1}``.

    A poset on ``n`` ids is its restriction to the first ``n - 1`` plus the
    strict downset D and strict upset U of the last id, where everything in D
    sits below everything in U.
    """
    rows = [()]  # tuples of up masks
    for m in range(n):
        nxt = []
        bit = 1 << m
        for up in rows:
            P = Poset(_labels(m), up)
            downs, ups = _downsets(P), all_upsets(P)
            for D in downs:
                # everything in U must lie above all of D
                above_all = P.full
                for d in iter_bits(D):
                    above_all &= P.up[d]
                for U in ups:
                    if U & ~above_all or U & D:
                        continue
                    new = [u | bit if (1 << i) & D else u for i, u in enumerate(up)]
                    nxt.append(tuple(new) + (U | bit,))
        rows = nxt
    return [Poset(_labels(n), up) for up in rows]


def _up_to_iso(n: int) -> list[Poset]:
    """One representative per isomorphism class: extend each smaller
    representative by a new maximal element above some downset."""
    reps = [Poset([], [])]
    for m in range(n):
        buckets: dict = defaultdict(list)
        out = []
        bit = 1 << m
        for P in reps:
            for D in _downsets(P):
                up = [u | bit if (1 << i) & D else u for i, u in enumerate(P.up)] + [bit]
                Q = Poset(_labels(m + 1), up)
                bucket = buckets[certificate(Q)]
                if any(find_isomorphism(Q, R) is not None for R in bucket):
                    continue
                bucket.append(Q)
                out.append(Q)
        reps = out
    return reps


def posets_of_size(n: int, up_to_iso: bool = False) -> list[Poset]:
    bound = limits.MAX_POSET_ISO if up_to_iso else limits.MAX_POSET_LABELED
    if n > bound:
        kind = "up to isomorphism" if up_to_iso else "labeled"
        raise SizeLimit(f"posets on {n} elements {kind} (limit {bound})")
    if n < 0:
        raise ValueError("size must be non-negative")
    return _up_to_iso(n) if up_to_iso else _labeled(n)


def enumerate_posets(max_n: int, up_to_iso: bool = False, min_n: int = 1):
    """Posets on every size from ``min_n`` to ``max_n``, smaller first."""
    bound = limits.MAX_POSET_ISO if up_to_iso else limits.MAX_POSET_LABELED
    if max_n > bound:
        raise SizeLimit(f"posets up to {max_n} elements (limit {bound})")
    for n in range(min_n, max_n + 1):
        yield from posets_of_size(n, up_to_iso)


def brute_force_posets(n: int) -> list[Poset]:
    """Independent oracle: filter every relation on ``n`` points for
    reflexivity, antisymmetry and transitivity."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for chosen in range(1 << len(pairs)):
        rel = {(i, i) for i in range(n)}
        rel |= {p for t, p in enumerate(pairs) if chosen >> t & 1}
        if any((j, i) in rel for i, j in rel if i != j):
            continue
        if any((i, l) not in rel for i, j in rel for k, l in rel if j == k):
            continue
        up = [sum(1 << j for j in range(n) if (i, j) in rel) for i in range(n)]
        out.append(Poset(_labels(n), up))
    return out


def brute_force_classes(n: int) -> int:
    """Isomorphism classes by canonical relabeling over all permutations."""
    seen = set()
    for P in brute_force_posets(n):
        best = None
        for perm in itertools.permutations(range(n)):
            rel = tuple(sorted((perm[i], perm[j]) for i, j in P.relation()))
            best = rel if best is None or rel < best else best
        seen.add(best)
    return len(seen)


def free_ba(generators: int) -> FiniteBA:
    """Free algebra on ``generators`` generators; atoms are the minterms."""
    k = 1 << generators
    if k > limits.MAX_ATOMS:
        raise SizeLimit(f"free algebra on {generators} generators has {k} atoms")
    names = [f"g{i + 1}" for i in range(generators)]
    labels = []
    for t in range(k):
        lits = [g if t >> i & 1 else "~" + g for i, g in enumerate(names)]
        labels.append("&".join(lits) if lits else "true")
    return FiniteBA(k, labels=labels, name=f"Free({generators})")


def free_generator(A: FiniteBA, i: int) -> int:
    """Element of ``free_ba`` naming generator ``i`` (0-based)."""
    return sum(1 << t for t in range(A.k) if t >> i & 1)


def random_subalgebra(k: int, seed: int = 0, generators: int | None = None) -> FiniteBA:
    """Subalgebra of the k-atom algebra generated by random elements."""
    A = powerset_ba(k)
    rng = random.Random(seed)
    count = generators if generators is not None else rng.randint(1, max(1, k))
    chosen = {rng.randrange(A.size) for _ in range(count)}
    B, _ = subalgebra_generated(A, chosen)
    return B


def sample_posets(n: int, count: int, seed: int = 0) -> list[Poset]:
    """Uniform sample (without replacement) of labeled posets on ``n`` points."""
    pool = posets_of_size(n)
    if count >= len(pool):
        return pool
    rng = random.Random(seed)
    return [pool[i] for i in sorted(rng.sample(range(len(pool)), count))]
