from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey_spaces import MILLIKEN, approx, condenses, le_fin, parse_object
from ramsey_spaces.milliken import BLOCK_LIMIT


def test_condenses_examples():
    assert le_fin(((0, 1), (3,)), ((0,), (1,), (3,)))
    b = ((0,), (1, 2), (5,))
    assert le_fin(b, b)
    assert not le_fin(((0, 2),), ((0,), (1,)))


def test_doubling_blocks():
    assert approx(parse_object("blocks:doubling"), 3) == ((0,), (1, 2), (3, 4, 5, 6))
    assert approx(parse_object("blocks:merge:2:singletons"), 2) == ((0, 1), (2, 3))


@st.composite
def block_seqs(draw, max_blocks=4):
    """Increasing sequences of small nonempty blocks."""
    n = draw(st.integers(0, max_blocks))
    out, lo = [], 0
    for _ in range(n):
        start = lo + draw(st.integers(0, 2))
        size = draw(st.integers(1, 3))
        picks = sorted(draw(st.sets(st.integers(start + 1, start + 4), max_size=size - 1)))
        blk = (start, *picks)
        out.append(blk)
        lo = blk[-1] + 1
    return tuple(out)


def unions(b):
    """Every union of a nonempty subfamily of b."""
    out = set()
    for r in range(1, len(b) + 1):
        for S in combinations(b, r):
            out.add(tuple(sorted(v for blk in S for v in blk)))
    return out


def condenses_oracle(a, b):
    if not a:
        return True
    if not b:
        return False
    U = unions(b)
    return all(x in U for x in a) and a[-1][-1] <= b[-1][-1]


@settings(max_examples=200, deadline=None)
@given(block_seqs(), block_seqs())
def test_condenses_matches_union_oracle(a, b):
    assert condenses(a, b) == condenses_oracle(a, b)


def below_oracle(b):
    """All increasing block sequences built from unions of b's blocks."""
    U = sorted(unions(b))
    out = {()}

    def grow(seq):
        for u in U:
            if not seq or u[0] > seq[-1][-1]:
                nxt = seq + (u,)
                out.add(nxt)
                grow(nxt)
    grow(())
    return sorted(out)


@settings(max_examples=60, deadline=None)
@given(block_seqs(max_blocks=4))
def test_below_fin_is_the_finite_down_set(b):
    assert sorted(MILLIKEN.below_fin(b)) == below_oracle(b)


def test_block_limit_is_reported():
    from ramsey_spaces import Exhausted
    import pytest
    k = BLOCK_LIMIT.bit_length()
    with pytest.raises(Exhausted):
        parse_object("blocks:doubling").element(k + 1)
