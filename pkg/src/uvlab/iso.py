"""Isomorphism of finite posets.

Two finite T0 spaces are homeomorphic exactly when their specialization
orders are isomorphic, so this module also decides homeomorphism.  Elements
are first coloured by iterated refinement (height, then the colour multisets
of their strict up- and downsets); posets with different refinement histories
are rejected immediately, otherwise a backtracking search respecting colours
looks for an explicit isomorphism.
"""
from __future__ import annotations

from .bits import iter_bits
from .order import Poset


def _refine(P: Poset):
    """Stable colouring plus a certificate of how it was reached."""
    strict_up = [list(iter_bits(P.up[i] & ~(1 << i))) for i in range(P.n)]
    strict_down = [list(iter_bits(P.down[i] & ~(1 << i))) for i in range(P.n)]
    colors = [0] * P.n
    history = []
    classes = 1 if P.n else 0
    while True:
        sigs = [(colors[i],
                 tuple(sorted(colors[j] for j in strict_up[i])),
                 tuple(sorted(colors[j] for j in strict_down[i])))
                for i in range(P.n)]
        distinct = sorted(set(sigs))
        numbering = {s: t for t, s in enumerate(distinct)}
        colors = [numbering[s] for s in sigs]
        history.append(tuple(sorted(sigs)))
        if len(distinct) == classes:
            return colors, tuple(history)
        classes = len(distinct)


def certificate(P: Poset):
    """Isomorphism invariant (equal for isomorphic posets)."""
    return (P.n, _refine(P)[1])


def find_isomorphism(P: Poset, Q: Poset) -> list[int] | None:
    """An order isomorphism ``P -> Q`` as a list ``phi[p] = q``, or ``None``."""
    if P.n != Q.n:
        return None
    cp, hp = _refine(P)
    cq, hq = _refine(Q)
    if hp != hq:
        return None
    n = P.n
    by_color: dict[int, list[int]] = {}
    for q in range(n):
        by_color.setdefault(cq[q], []).append(q)
    # place elements with rare colours first, then by height so that each new
    # element is constrained by already placed comparable ones
    order = sorted(range(n), key=lambda p: (len(by_color[cp[p]]), -P.height[p], p))
    phi = [-1] * n
    used = [False] * n

    def consistent(p, q):
        for p2 in order:
            q2 = phi[p2]
            if q2 < 0:
                continue
            if P.leq(p, p2) != Q.leq(q, q2) or P.leq(p2, p) != Q.leq(q2, q):
                return False
        return True

    def rec(t):
        if t == n:
            return True
        p = order[t]
        for q in by_color[cp[p]]:
            if not used[q] and consistent(p, q):
                phi[p] = q
                used[q] = True
                if rec(t + 1):
                    return True
                phi[p] = -1
                used[q] = False
        return False

    return phi if rec(0) else None


def is_isomorphic(P: Poset, Q: Poset) -> bool:
    return find_isomorphism(P, Q) is not None


def is_order_isomorphism(P: Poset, Q: Poset, phi) -> bool:
    """Check an explicit candidate map."""
    if len(phi) != P.n or sorted(phi) != list(range(Q.n)) or P.n != Q.n:
        return False
    return all(P.leq(a, b) == Q.leq(phi[a], phi[b])
               for a in range(P.n) for b in range(P.n))
