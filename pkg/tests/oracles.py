"""Brute-force reference implementations.

These work directly from definitions over Python sets of labels and share no
code with the package beyond reading ``Poset.labels`` and ``Poset.leq``.
"""
import itertools


def elements(P):
    return list(range(P.n))


def as_set(U):
    return {i for i in range(U.bit_length()) if U >> i & 1}


def as_mask(S):
    return sum(1 << i for i in S)


def above(P, x):
    return {y for y in elements(P) if P.leq(x, y)}


def cl(P, S):
    return {x for x in elements(P) if any(y in S for y in above(P, x))}


def interior(P, S):
    return {x for x in elements(P) if all(y in S for y in above(P, x))}


def neg(P, S):
    return {x for x in elements(P) if not any(y in S for y in above(P, x))}


def is_upset(P, S):
    return all(above(P, x) <= S for x in S)


def all_subsets(n):
    for m in range(1 << n):
        yield as_set(m)


def ro_upsets(P):
    """Every subset filtered through ``U = int(cl(U))``."""
    out = [S for S in all_subsets(P.n) if is_upset(P, S) and interior(P, cl(P, S)) == S]
    return [as_mask(S) for S in sorted(out, key=lambda S: (len(S), sorted(S)))]


def separative_first_order(P):
    """x not <= y implies some z above y with nothing above both z and x."""
    for x in elements(P):
        for y in elements(P):
            if P.leq(x, y):
                continue
            if not any(not (above(P, z) & above(P, x)) for z in above(P, y)):
                return False
    return True


# -- Boolean algebras as sets of atom-index frozensets ---------------------

def ba_elements(k):
    return list(range(1 << k))


def proper_filters(k):
    """All subsets of the 2^k elements that are nonempty, upward closed,
    meet closed and miss 0."""
    els = ba_elements(k)
    out = []
    for chosen in range(1, 1 << len(els)):
        F = {e for e in els if chosen >> e & 1}
        if 0 in F:
            continue
        if any(a & ~b == 0 and b not in F for a in F for b in els):
            continue
        if any(a & b not in F for a in F for b in F):
            continue
        out.append(frozenset(F))
    return out


def ideals(k):
    els = ba_elements(k)
    out = []
    for chosen in range(1, 1 << len(els)):
        I = {e for e in els if chosen >> e & 1}
        if any(b & ~a == 0 and b not in I for a in I for b in els):
            continue
        if any(a | b not in I for a in I for b in I):
            continue
        out.append(frozenset(I))
    return out


def homs(ka, kb):
    """All maps between carriers preserving meet, complement, 0 and 1."""
    A, B = ba_elements(ka), ba_elements(kb)
    topa, topb = (1 << ka) - 1, (1 << kb) - 1
    out = []
    for table in itertools.product(B, repeat=len(A)):
        if table[0] != 0 or table[topa] != topb:
            continue
        if any(table[a & b] != table[a] & table[b] for a in A for b in A):
            continue
        if any(table[topa ^ a] != topb ^ table[a] for a in A):
            continue
        out.append(tuple(table))
    return out


def count_posets(n):
    """Relation matrices filtered for order axioms."""
    count = 0
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((0, 1), repeat=len(off)):
        rel = {p for p, b in zip(off, bits) if b}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, l) not in rel and i != l for i, j in rel for k, l in rel if j == k):
            continue
        count += 1
    return count
