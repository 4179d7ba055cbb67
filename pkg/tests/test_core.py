from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from ramsey_spaces import (
    BasicOpen, Finite, NotWithin, UsageError, amalgam_enum, approx, depth, enum_extensions,
    le_bounded, le_fin, parse_object,
)
from ramsey_spaces.core import depth_exact, in_open

from oracle import depth_oracle, extensions_oracle, members, object_specs

P = parse_object


# --- approx

def test_approx_zero_is_empty():
    for s in ("naturals", "evens", "blocks:doubling"):
        assert approx(P(s), 0) == ()


def test_approx_examples():
    assert approx(P("evens"), 3) == (0, 2, 4)
    assert approx(P("naturals"), 5) == (0, 1, 2, 3, 4)


def test_approx_negative_is_usage_error():
    with pytest.raises(UsageError):
        approx(P("evens"), -1)


@settings(max_examples=60, deadline=None)
@given(object_specs, st.integers(0, 12))
def test_approx_matches_set_model(spec, n):
    A = P(spec)
    assert list(approx(A, n)) == members(spec)[:n]


@settings(max_examples=40, deadline=None)
@given(object_specs, st.integers(0, 10), st.integers(0, 10))
def test_approx_length_and_coherence(spec, m, n):
    A = P(spec)
    m, n = sorted((m, n))
    assert len(approx(A, n)) == n
    assert approx(A, n)[:m] == approx(A, m)


# --- le_fin

def test_le_fin_examples():
    assert le_fin((2, 6), (0, 2, 4, 6))
    assert le_fin((), (0, 1))
    assert not le_fin((1, 3), (0, 2, 4))


def test_le_fin_rejects_mixed_spaces():
    with pytest.raises(UsageError):
        le_fin((1,), ((0, 1),))


@given(st.sets(st.integers(0, 15), max_size=5), st.sets(st.integers(0, 15), max_size=6))
def test_le_fin_is_subset(a, b):
    assert le_fin(tuple(sorted(a)), tuple(sorted(b))) == (a <= b)


# --- depth

def test_depth_examples():
    assert depth(P("evens"), (2, 6), 32) == Finite(4)
    assert depth(P("odds"), (), 5) == Finite(0)
    assert depth(P("evens"), (1,), 32) == NotWithin(32)


@settings(max_examples=60, deadline=None)
@given(object_specs, st.sets(st.integers(0, 40), max_size=3))
def test_depth_matches_brute_force(spec, a):
    a = tuple(sorted(a))
    elems = members(spec)
    want = depth_oracle(elems[:30], a)
    got = depth(P(spec), a, 30)
    assert got == (Finite(want) if want is not None else NotWithin(30))


@settings(max_examples=40, deadline=None)
@given(object_specs, st.sets(st.integers(0, 40), max_size=3))
def test_depth_minimality(spec, a):
    a = tuple(sorted(a))
    B = P(spec)
    got = depth(B, a, 30)
    if got.finite:
        assert le_fin(a, approx(B, got.m))
        assert got.m == 0 or not le_fin(a, approx(B, got.m - 1))


def test_depth_exact_sees_infinity():
    assert depth_exact(P("evens"), (1,)) is None
    assert depth_exact(P("evens"), (0, 4)) == 3


# --- le_bounded

def test_le_bounded_examples():
    assert le_bounded(P("evens"), P("naturals"), 8).yes
    assert le_bounded(P("naturals"), P("evens"), 8).no
    A = P("prefix:[3]+every:3:1:odds")
    assert le_bounded(A, A, 8).yes


@settings(max_examples=80, deadline=None)
@given(object_specs, object_specs)
def test_le_bounded_is_sound(s1, s2):
    """Yes never contradicts the set model; No always has a witness in r_bound(A)."""
    A, B = P(s1), P(s2)
    v = le_bounded(A, B, 6)
    bset = set(members(s2, 2000))
    if v.yes:
        assert all(x in bset for x in members(s1, 400))
    elif v.no:
        assert any(x not in bset for x in members(s1)[:6])


# --- enum_extensions

def test_enum_extensions_examples():
    ev = P("evens")
    assert enum_extensions(BasicOpen((), ev), 1, 8) == [(0,), (2,), (4,), (6,)]
    assert enum_extensions(BasicOpen((0,), ev), 2, 8) == [(0, 2), (0, 4), (0, 6)]
    assert enum_extensions(BasicOpen((0, 4), ev), 2, 3) == [(0, 4)]


def test_enum_extensions_needs_n_at_least_base():
    with pytest.raises(UsageError):
        enum_extensions(BasicOpen((0, 2), P("evens")), 1, 8)


@settings(max_examples=60, deadline=None)
@given(object_specs, st.sets(st.integers(0, 20), max_size=2), st.integers(0, 2), st.integers(0, 30))
def test_enum_extensions_matches_brute_force(spec, a, extra, bound):
    a = tuple(sorted(a))
    got = enum_extensions(BasicOpen(a, P(spec)), len(a) + extra, bound)
    assert got == extensions_oracle(a, members(spec), len(a) + extra, bound)


# --- amalgam_enum

def test_amalgam_enum_example():
    N = P("naturals")
    assert amalgam_enum((0,), N, N, 3, 6) == [(0, 3), (0, 4), (0, 5)]
    assert amalgam_enum((0,), N, N, 3, 0) == []


def test_amalgam_enum_at_depth_of_b_is_everything():
    A = P("odds")
    b = (1, 5)
    m = depth_exact(A, b)
    assert amalgam_enum(b, A, A, m, 30) == enum_extensions(BasicOpen(b, A), 3, 30)


def test_amalgam_enum_preconditions():
    with pytest.raises(UsageError):
        amalgam_enum((0,), P("naturals"), P("evens"), 3, 10)
    with pytest.raises(UsageError):
        amalgam_enum((0, 9), P("naturals"), P("naturals"), 3, 10)


@settings(max_examples=40, deadline=None)
@given(object_specs, st.integers(0, 3), st.integers(0, 4))
def test_amalgam_consistent_with_extensions(spec, k, slack):
    A = P(spec)
    b = approx(A, k)
    m = k + slack
    got = amalgam_enum(b, A, A, m, 60)
    ext = enum_extensions(BasicOpen(b, A), k + 1, 60)
    assert set(got) <= set(ext)
    for c in got:
        d = depth(A, c, 200)
        assert d.finite and d.m > m


def test_in_open_checks_prefix():
    assert in_open(P("evens"), (0,), P("naturals"), 4).yes
    assert in_open(P("evens"), (2,), P("naturals"), 4).no
