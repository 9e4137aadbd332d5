from hypothesis import strategies as st

from uvlab.order import validate_poset


@st.composite
def posets(draw, min_size=1, max_size=6):
    """Random posets: edges only go from lower to higher index, so any edge
    set is acyclic; labels are then shuffled to hide the index order."""
    n = draw(st.integers(min_size, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    names = draw(st.permutations([f"e{i}" for i in range(n)]))
    edges = [(names[i], names[j]) for (i, j), c in zip(pairs, chosen) if c]
    return validate_poset(edges, names)


@st.composite
def poset_and_subset(draw, **kw):
    P = draw(posets(**kw))
    return P, draw(st.integers(0, (1 << P.n) - 1))
