import pytest
from hypothesis import given, settings

from ramsey_spaces import UsageError, approx, parse_object, register_predicate
from ramsey_spaces.milliken import MILLIKEN

from oracle import members, object_specs


@settings(max_examples=60, deadline=None)
@given(object_specs)
def test_spec_round_trip(spec):
    A = parse_object(spec)
    again = parse_object(A.spec)
    assert approx(again, 15) == approx(A, 15) == tuple(members(spec)[:15])


def test_block_spec_round_trip():
    for s in ("blocks:singletons", "blocks:merge:2:doubling", "blocks:prefix:[[0],[2,3]]+cut:3:singletons"):
        A = parse_object(s)
        assert A.space is MILLIKEN
        assert approx(parse_object(A.spec), 5) == approx(A, 5)


def test_named_streams():
    assert approx(parse_object("pred:squares"), 5) == (0, 1, 4, 9, 16)
    assert approx(parse_object("pred:primes"), 4) == (2, 3, 5, 7)
    assert approx(parse_object("every:3:1:naturals"), 3) == (1, 4, 7)
    assert approx(parse_object("cut:10:evens"), 2) == (12, 14)
    assert approx(parse_object("filter:mod5r2:naturals"), 3) == (2, 7, 12)


@pytest.mark.parametrize("bad, needle", [
    ("arith:x:2", "arith start"),
    ("prefix:[3,1]+evens", "strictly increasing"),
    ("prefix:[1]evens", "prefix"),
    ("every:2:2:naturals", "offset"),
    ("filter:nosuch:naturals", "unknown predicate"),
    ("bogus", "unrecognised"),
    ("blocks:prefix:[[2,1]]+singletons", "bad block"),
    ("blocks:what", "unrecognised block"),
])
def test_bad_specs_name_the_problem(bad, needle):
    with pytest.raises(UsageError, match=needle):
        parse_object(bad)


def test_register_predicate():
    register_predicate("fives", lambda n: n % 5 == 0)
    assert approx(parse_object("pred:fives"), 3) == (0, 5, 10)
    with pytest.raises(UsageError):
        register_predicate("no spaces", lambda n: True)
