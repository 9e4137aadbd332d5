import pytest

from uvlab import limits
from uvlab.balg import is_isomorphic, powerset_ba
from uvlab.duality import find_homeomorphism, uv_dual
from uvlab.errors import EmptySpace, NotBoolean, NotStone, NotStoneLocale
from uvlab.hyperlocale import (box, check_same_topologies, check_uv_iff_locale,
                               complemented_elements, diamond_m3, discrete_space,
                               filt_locale, hyperspace_homeomorphism, hyperspace_points,
                               is_stone_locale, lattice_from_pairs, upper_vietoris_of_locale,
                               uv_hyperspace)
from uvlab.order import all_upsets, chain
from uvlab.uvspace import FiniteSpace, coro, coro_algebra, is_uv_space
from uvlab.workbench.enumerate import posets_of_size

SMALL = range(1, 5)


# -- discrete spaces and hyperspaces ----------------------------------------------

def test_discrete_space():
    assert discrete_space(2).n == 2
    assert discrete_space(1).n == 1
    assert len(all_upsets(discrete_space(3).order)) == 8
    with pytest.raises(EmptySpace):
        discrete_space(0)


def test_hyperspace_sizes(fork):
    H = uv_hyperspace(discrete_space(2))
    assert H.n == 3
    assert find_homeomorphism(H, FiniteSpace(fork)) is not None
    assert uv_hyperspace(discrete_space(1)).n == 1
    assert uv_hyperspace(discrete_space(3)).n == 7


def test_hyperspace_order_is_reverse_inclusion():
    X = discrete_space(3)
    H = uv_hyperspace(X)
    pts = hyperspace_points(X)
    for s, C in enumerate(pts):
        for t, E in enumerate(pts):
            assert H.order.leq(s, t) == (E & ~C == 0)


def test_hyperspace_needs_discrete():
    with pytest.raises(NotStone):
        uv_hyperspace(FiniteSpace(chain(2)))


@pytest.mark.parametrize("n", SMALL)
def test_hyperspace_homeomorphism(n):
    f = hyperspace_homeomorphism(discrete_space(n))
    assert sorted(f.table) == list(range(2 ** n - 1))
    assert is_uv_space(f.dom)


@pytest.mark.parametrize("n", SMALL)
def test_clopens_match_coro_through_boxes(n):
    X = discrete_space(n)
    H = uv_hyperspace(X)
    pts = hyperspace_points(X)
    boxes = sorted({box(pts, U) for U in range(1 << n)})
    assert boxes == sorted(coro(H))
    assert len(boxes) == 2 ** n
    assert coro_algebra(H).k == n


# -- locales --------------------------------------------------------------------------

def test_filter_locale_sizes():
    assert filt_locale(powerset_ba(2)).n == 4
    assert filt_locale(powerset_ba(1)).n == 2


@pytest.mark.parametrize("k", SMALL)
def test_filter_locale_is_stone(k):
    L = filt_locale(powerset_ba(k))
    rep = is_stone_locale(L)
    assert rep and rep.clauses["zero-dimensional"] and rep.clauses["frame"]
    assert L.n == 2 ** k
    assert L.labels[L.top] == "⊤"


@pytest.mark.parametrize("k", SMALL)
def test_complemented_elements_recover_algebra(k):
    Z = complemented_elements(filt_locale(powerset_ba(k)))
    assert is_isomorphic(Z, powerset_ba(k))


def test_complemented_elements_of_two_element_lattice():
    assert complemented_elements(lattice_from_pairs([("0", "1")])).k == 1


def test_diamond():
    M3 = diamond_m3()
    assert not M3.is_distributive()
    assert len(M3.complements(M3.order.index("a"))) == 2
    assert not is_stone_locale(M3)
    with pytest.raises(NotBoolean):
        complemented_elements(M3)
    with pytest.raises(NotStoneLocale):
        upper_vietoris_of_locale(M3)


def test_non_lattice_rejected():
    with pytest.raises(ValueError):
        lattice_from_pairs([("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")])


def test_upper_vietoris_sizes(fork):
    Y = upper_vietoris_of_locale(filt_locale(powerset_ba(2)))
    assert find_homeomorphism(Y, FiniteSpace(fork)) is not None
    assert upper_vietoris_of_locale(filt_locale(powerset_ba(1))).n == 1
    assert upper_vietoris_of_locale(filt_locale(powerset_ba(3))).n == 7


@pytest.mark.parametrize("k", SMALL)
def test_same_topologies(k):
    assert check_same_topologies(powerset_ba(k))


@pytest.mark.parametrize("k", SMALL)
def test_upper_vietoris_equals_dual(k):
    A = powerset_ba(k)
    Y = upper_vietoris_of_locale(filt_locale(A))
    D = uv_dual(A)
    assert Y.labels == D.space.labels
    assert Y.order.up == D.space.order.up


def test_uv_iff_locale_examples(fork):
    assert check_uv_iff_locale(FiniteSpace(fork))
    assert check_uv_iff_locale(FiniteSpace(chain(2)))
    assert check_uv_iff_locale(FiniteSpace(chain(1)))


@pytest.mark.parametrize("n", range(1, 8))
def test_uv_iff_locale_exhaustive(n, monkeypatch):
    monkeypatch.setattr(limits, "MAX_ATOMS", 7)
    for P in posets_of_size(n, up_to_iso=True):
        assert check_uv_iff_locale(FiniteSpace(P))
