import pytest

from uvlab.applications import (all_regular_partitions, embed_bn, find_antichain, find_chain,
                                realizes_all_signatures, regular_partition, signature,
                                split_complete, validate_partition)
from uvlab.balg import is_injective, powerset_ba
from uvlab.duality import find_homeomorphism, uv_dual
from uvlab.errors import CounterexampleError, NotUVSpace, TooLong, TooManyBlocks
from uvlab.order import chain, cl_le, int_le, neg_le
from uvlab.uvspace import (FiniteSpace, coro, is_surjective_map, is_uv_map, is_uv_space,
                           isolated_points)
from uvlab.workbench.enumerate import posets_of_size

BELL = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52}


def dual_space(k):
    return uv_dual(powerset_ba(k)).space


@pytest.fixture
def PV(fork):
    return FiniteSpace(fork)


# -- chains and antichains -----------------------------------------------------------

def test_chain_examples():
    X = dual_space(3)
    ch = find_chain(X, 3)
    sizes = [bin(U).count("1") for U in ch]
    assert ch[0] == X.full and sizes == sorted(sizes, reverse=True) and len(set(sizes)) == 3
    assert find_chain(X, 1) == [X.full]
    with pytest.raises(TooLong):
        find_chain(dual_space(2), 4)
    with pytest.raises(ValueError):
        find_chain(X, 0)
    with pytest.raises(NotUVSpace):
        find_chain(FiniteSpace(chain(2)), 1)


@pytest.mark.parametrize("k", range(1, 6))
def test_chains_descend_with_inhabited_steps(k):
    X = dual_space(k)
    P = X.order
    fam = set(coro(X))
    for length in range(1, k + 1):
        ch = find_chain(X, length)
        assert len(ch) == length and all(U in fam for U in ch)
        for U, V in zip(ch, ch[1:]):
            assert V & ~U == 0 and V != U
            assert U & neg_le(P, V)


@pytest.mark.parametrize("k", range(1, 6))
def test_antichains_are_disjoint_nonempty_coro(k):
    X = dual_space(k)
    fam = set(coro(X))
    for length in range(1, k + 1):
        blocks = find_antichain(X, length)
        assert len(blocks) == length
        assert all(U and U in fam for U in blocks)
        for i, U in enumerate(blocks):
            assert not any(U & V for V in blocks[i + 1:])
    with pytest.raises(TooLong):
        find_antichain(X, k + 1)


# -- regular partitions -----------------------------------------------------------------

def test_partition_examples():
    X = dual_space(3)
    part = regular_partition(X, 1)
    assert len(part.blocks) == 2
    assert regular_partition(X, 0).blocks == [X.full]
    with pytest.raises(TooManyBlocks):
        regular_partition(dual_space(2), 3)


def test_partition_names(PV):
    part = regular_partition(PV, 1)
    assert sorted(part.names()) == [["y1"], ["y2"]]


def test_invalid_partitions_rejected(PV):
    y1, y2 = PV.mask(["y1"]), PV.mask(["y2"])
    with pytest.raises(CounterexampleError):
        validate_partition(PV, [y1])  # join is not the whole space
    with pytest.raises(CounterexampleError):
        validate_partition(PV, [y1, y1])  # repeated block
    with pytest.raises(CounterexampleError):
        validate_partition(PV, [y1 | y2, y1])  # not CORO
    assert validate_partition(PV, [y1, y2]).blocks == [y1, y2]


@pytest.mark.parametrize("k", range(1, 6))
def test_partitions_counted_by_bell_numbers(k):
    X = dual_space(k)
    parts = all_regular_partitions(X)
    assert len(parts) == BELL[k]
    P = X.order
    for blocks in parts:
        for i, U in enumerate(blocks):
            rest = 0
            for j, V in enumerate(blocks):
                if j != i:
                    rest |= V
            assert not U & int_le(P, cl_le(P, rest))


# -- signatures --------------------------------------------------------------------------

def test_signature_examples(PV):
    blocks = [PV.mask(["y1"]), PV.mask(["y2"])]
    assert signature(PV, blocks, "x") == {0, 1}
    assert signature(PV, blocks, "y1") == {0}
    assert signature(PV, blocks, "y2") == {1}


def test_signature_of_maximal_points():
    X = dual_space(4)
    for blocks in all_regular_partitions(X):
        for x in range(X.n):
            if X.order.up[x] == 1 << x:
                (i,) = signature(X, blocks, x)
                assert blocks[i] >> x & 1


def _small_uv_spaces():
    for n in range(1, 7):
        for P in posets_of_size(n, up_to_iso=True):
            X = FiniteSpace(P)
            if is_uv_space(X):
                yield X
    yield dual_space(3)


def test_signatures_unique_on_small_uv_spaces():
    # signature() raises if the closed form disagrees with the minimal-set definition
    seen = 0
    for X in _small_uv_spaces():
        for blocks in all_regular_partitions(X):
            for x in range(X.n):
                assert signature(X, blocks, x)
                seen += 1
            assert realizes_all_signatures(X, blocks)
    assert seen > 0


# -- embedding the n-atom algebra -------------------------------------------------------------

def test_embed_b2_into_b3(fork):
    f, e = embed_bn(dual_space(3), 2)
    assert find_homeomorphism(f.cod, FiniteSpace(fork)) is not None
    assert is_surjective_map(f) and is_uv_map(f)
    assert e.dom.k == 2 and e.cod.k == 3 and is_injective(e)


def test_embed_b1_is_constant():
    f, e = embed_bn(dual_space(3), 1)
    assert set(f.table) == {0} and e.dom.k == 1


@pytest.mark.parametrize("k", range(1, 5))
def test_embed_full_rank_is_homeomorphism(k):
    f, _ = embed_bn(dual_space(k), k)
    assert sorted(f.table) == list(range(f.cod.n))


@pytest.mark.parametrize("k", range(1, 6))
def test_embed_all_ranks(k):
    X = dual_space(k)
    for n in range(1, k + 1):
        f, e = embed_bn(X, n)
        assert is_injective(e) and e.dom.k == n
    with pytest.raises(TooManyBlocks):
        embed_bn(X, k + 1)


# -- complete split --------------------------------------------------------------------------

@pytest.mark.parametrize("k", range(1, 5))
def test_complete_split_of_duals(k):
    X = dual_space(k)
    s = split_complete(X)
    assert s.atomic_set == X.full and s.atomless is None and s.trivial
    assert s.atomic.n == X.n


def test_complete_split_small_uv_spaces():
    for X in _small_uv_spaces():
        s = split_complete(X)
        assert s.atomic_set == cl_le(X.order, isolated_points(X)) & X.full
        assert s.atomless is None
