"""Poset constructors, the expression algebra, and the block-shift laws.

The two reference maps below restate what one reverse step does to a fiber
profile.  Both are checked exhaustively against the generic operator, which
knows nothing about fibers, so they validate each other.
"""

import itertools

import pytest

from rowmotion.constructions import (
    H,
    J,
    K,
    Chain,
    OSum,
    Prod,
    build,
    grid_poset,
    k_product_poset,
    to_text,
)
from rowmotion.isomorphism import are_isomorphic
from rowmotion.poset import CapExceeded, enumerate_ideals, rowmotion_ideal


def test_grid_counts_and_ranks():
    for m, n in [(1, 1), (2, 3), (3, 4)]:
        g = grid_poset(m, n)
        assert g.n_elements == m * n
        assert g.max_rank == m + n - 1
        for p in range(g.n_elements):
            i, j = g.keys[p]
            assert g.rank[p] == i + j - 1


def test_grid_is_symmetric_in_its_arguments():
    assert are_isomorphic(grid_poset(2, 5), grid_poset(5, 2))


def test_two_strand_poset_shape():
    k = build(K(2))  # strands split at rank 3 of 5
    assert k.n_elements == 6
    assert k.max_rank == 5
    mids = [p for p in range(6) if k.rank[p] == 3]
    assert len(mids) == 2
    a, b = mids
    assert not k.le(a, b) and not k.le(b, a)
    # every other rank level is a single element
    assert sorted(k.rank) == [1, 2, 3, 3, 4, 5]


def test_staircase_shape():
    h = build(H(4))
    assert h.n_elements == 10
    assert h.max_rank == 7
    assert all(i <= j for i, j in h.keys)


def test_product_height_and_size():
    p = build(Prod(Chain(2), H(3)))
    assert p.n_elements == 2 * 6
    assert p.max_rank == 2 + 5 - 1


def test_ordinal_sum_stacks():
    p = build(OSum(Chain(2), Chain(3)))
    assert are_isomorphic(p, build(Chain(5)))


def test_ideal_lattice_of_antichain_is_a_grid():
    # ideals of the 2-element antichain form a diamond, the 2x2 grid
    from rowmotion.constructions import DUnion

    p = build(J(DUnion(Chain(1), Chain(1))))
    assert are_isomorphic(p, grid_poset(2, 2))


def test_ideal_lattice_of_chain_is_a_chain():
    assert are_isomorphic(build(J(Chain(3))), build(Chain(4)))


def test_iterated_ideal_lattice_sizes():
    e = Prod(Chain(2), Chain(3))
    assert build(J(e)).n_elements == 10
    assert build(J(J(e))).n_elements == 16


def test_build_honours_cap():
    with pytest.raises(CapExceeded):
        build(J(Prod(Chain(6), Chain(6))), cap=100)


def test_build_caps_element_count():
    # the guard must fire before the product is materialized
    with pytest.raises(CapExceeded):
        build(Prod(Chain(900), Chain(900)), cap=1000)
    with pytest.raises(CapExceeded):
        build(Chain(10**9), cap=1000)


def test_to_text_round_trip_shapes():
    e = Prod(Chain(2), J(K(3)))
    assert to_text(e) == "prod(chain(2),J(K(3)))"


# -- fiber profiles ---------------------------------------------------------


def grid_levels(poset, ideal, m):
    """Fiber sizes of a grid ideal, one value per strand, non-increasing."""
    members = {poset.keys[p] for p in ideal.members}
    return tuple(sum(1 for a, b in members if a == i) for i in range(1, m + 1))


def grid_ideal_from_levels(poset, levels):
    keys = [(i, j) for i, v in enumerate(levels, start=1)
            for j in range(1, v + 1)]
    return poset.ideal_of_keys(keys)


def shift_levels(levels, d):
    """Reference reverse step on a non-increasing fiber profile over [d].

    Blocks of equal value rotate: the top block grows by one strand taken
    from the next block, every remaining block advances one level, and the
    bottom block gives one strand to the empty level.  All fibers full maps
    to all fibers empty.
    """
    blocks = []
    for v in levels:
        if blocks and blocks[-1][0] == v:
            blocks[-1][1] += 1
        else:
            blocks.append([v, 1])
    if blocks[0][0] == d:
        n0 = blocks[0][1]
        rest = blocks[1:]
    else:
        n0 = 0
        rest = blocks
    if not rest:
        return (0,) * n0
    out = [(rest[0][0] + 1, n0 + 1)]
    for j in range(len(rest) - 1):
        out.append((rest[j + 1][0] + 1, rest[j][1]))
    if rest[-1][1] > 1:
        out.append((0, rest[-1][1] - 1))
    flat = []
    for lv, c in out:
        flat.extend([lv] * c)
    return tuple(flat)


@pytest.mark.parametrize("m,n", [(1, 1), (1, 4), (2, 2), (2, 3), (3, 3),
                                 (3, 4), (4, 4), (2, 6), (5, 3)])
def test_block_shift_matches_operator_on_grids(m, n):
    poset = grid_poset(m, n)
    for ideal in enumerate_ideals(poset):
        levels = grid_levels(poset, ideal, m)
        assert levels == tuple(sorted(levels, reverse=True))
        want = shift_levels(levels, n)
        got = grid_levels(poset, rowmotion_ideal(ideal), m)
        assert got == want, (levels, got, want)


# -- two-strand fiber profiles ----------------------------------------------


def k_levels(poset, ideal, m, n):
    """Per-strand description: ('L', j) for a rank ideal, ('I', +-1) for a
    split ideal holding the plain or the primed midpoint."""
    mids = {str(n), str(n) + "'"}
    members = {poset.keys[p] for p in ideal.members}
    out = []
    for i in range(1, m + 1):
        fib = {k for c, k in members if c == i}
        got = fib & mids
        if len(got) == 1:
            out.append(("I", 1 if str(n) in got else -1))
        else:
            out.append(("L", len(fib) - (1 if len(got) == 2 else 0)))
    return out


def k_ideal_from_levels(poset, levels, n):
    mids = [str(n), str(n) + "'"]
    keys = []
    for i, (kind, v) in enumerate(levels, start=1):
        if kind == "I":
            fib = [str(j) for j in range(1, n)]
            fib.append(mids[0] if v == 1 else mids[1])
        else:
            fib = [str(j) for j in range(1, min(v, n - 1) + 1)]
            if v >= n:
                fib += mids
            fib += [str(j) for j in range(n + 1, v + 1)]
        keys.extend((i, k) for k in fib)
    return poset.ideal_of_keys(keys)


def shift_k_levels(levels, n):
    """Reference reverse step on two-strand fiber profiles.

    Rank-only profiles behave exactly like grid profiles over 2n-1 levels.
    A profile with split fibers rotates its block counts the same way, with
    two twists: the split level advances to rank n only when a rank n-1
    block sits directly below it, in which case that block becomes the new
    split level with the same midpoint; otherwise the split level stays put
    and switches midpoint.
    """
    if all(kind == "L" for kind, _ in levels):
        return [("L", v) for v in shift_levels([v for _, v in levels], 2 * n - 1)]

    polarity = next(v for kind, v in levels if kind == "I")
    blocks = []
    for kv in levels:
        if blocks and blocks[-1][0] == kv:
            blocks[-1][1] += 1
        else:
            blocks.append([kv, 1])
    if blocks[0][0] == ("L", 2 * n - 1):
        n0 = blocks[0][1]
        rest = blocks[1:]
    else:
        n0 = 0
        rest = blocks

    def advance(kv):
        kind, v = kv
        if kind == "I":
            return ("L", n)
        if v == n - 1:
            return ("I", polarity)
        return ("L", v + 1)

    # does a rank n-1 block sit directly below the split block?
    keeps = True
    for a, b in zip(rest, rest[1:]):
        if a[0] == ("I", polarity):
            keeps = b[0] == ("L", n - 1)
    if rest[-1][0] == ("I", polarity):
        keeps = False

    out = [(advance(rest[0][0]), n0 + 1)]
    for j in range(len(rest) - 1):
        out.append((advance(rest[j + 1][0]), rest[j][1]))
    if rest[-1][1] > 1:
        out.append((("L", 0), rest[-1][1] - 1))
    if not keeps:
        out = [((("I", -polarity)) if kv == ("L", n) else kv, c)
               for kv, c in out]
    flat = []
    for kv, c in out:
        flat.extend([kv] * c)
    return flat


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (3, 2), (4, 2),
                                 (1, 3), (2, 3), (3, 3), (2, 4)])
def test_block_shift_matches_operator_on_k_products(m, n):
    poset = k_product_poset(m, n)
    for ideal in enumerate_ideals(poset):
        levels = k_levels(poset, ideal, m, n)
        want = shift_k_levels(levels, n)
        got = k_levels(poset, rowmotion_ideal(ideal), m, n)
        assert got == want, (levels, got, want)


def test_fiber_helpers_invert_each_other():
    poset = k_product_poset(2, 3)
    for ideal in enumerate_ideals(poset):
        levels = k_levels(poset, ideal, 2, 3)
        assert k_ideal_from_levels(poset, levels, 3) == ideal


def test_split_profiles_share_one_midpoint():
    poset = k_product_poset(3, 2)
    for ideal in enumerate_ideals(poset):
        pol = {v for kind, v in k_levels(poset, ideal, 3, 2) if kind == "I"}
        assert len(pol) <= 1
