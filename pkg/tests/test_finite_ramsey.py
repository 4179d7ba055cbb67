from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey_spaces import Coloring, UsageError, find_homogeneous, pentagon, verify_homogeneous


def least_homogeneous(col, target):
    """Scan all target-subsets in lexicographic order."""
    for H in combinations(range(col.n), target):
        if len({col(s) for s in combinations(H, col.k)}) <= 1:
            return H
    return None


@st.composite
def colorings(draw):
    n = draw(st.integers(3, 6))
    k = draw(st.integers(1, 3))
    c = draw(st.integers(1, 3))
    subsets = list(combinations(range(n), k))
    vals = draw(st.lists(st.integers(1, c), min_size=len(subsets), max_size=len(subsets)))
    return Coloring(n, k, c, dict(zip(subsets, vals)))


@settings(max_examples=150, deadline=None)
@given(colorings(), st.integers(1, 5))
def test_search_matches_lexicographic_scan(col, target):
    if target < col.k:
        with pytest.raises(UsageError):
            find_homogeneous(col, target)
        return
    got = find_homogeneous(col, target)
    assert got == least_homogeneous(col, target)
    if got is not None:
        assert verify_homogeneous(col, got)


def test_pentagon_has_no_monochromatic_triangle():
    assert find_homogeneous(pentagon(), 3) is None


def test_single_colour_gives_first_elements():
    col = Coloring.from_function(6, 2, 1, lambda s: 1)
    assert find_homogeneous(col, 4) == (0, 1, 2, 3)


def test_json_round_trip():
    import json
    col = pentagon()
    again = Coloring.from_json(json.loads(col.to_json()), 5, 2, 2)
    assert again == col


@pytest.mark.parametrize("data, needle", [
    ({}, "array"),
    ([{"subset": [0, 1]}], "color"),
    ([{"subset": [0, 9], "color": 1}], "subset"),
    ([{"subset": [0, 1], "color": 1}], "not total"),
])
def test_bad_colouring_input(data, needle):
    with pytest.raises(UsageError, match=needle):
        Coloring.from_json(data, 5, 2, 2)
