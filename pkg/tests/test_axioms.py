import pytest

from ramsey_spaces import (
    ELLENTUCK, MILLIKEN, approx, check_a1, check_a2, check_a3, check_a3_star, check_a4,
    parse_object, run_suite,
)
from ramsey_spaces.axioms import SAMPLES
from ramsey_spaces.faults import FAULTS

E_OBJS = [parse_object(s) for s in SAMPLES["ellentuck"]]
M_OBJS = [parse_object(s) for s in SAMPLES["milliken"]]
TRIO = [parse_object(s) for s in ("naturals", "evens", "odds")]


def test_a1_trio_depth_6():
    assert check_a1(ELLENTUCK, TRIO, 6).verdict == "Verified"


@pytest.mark.parametrize("check", [check_a1, check_a2])
def test_depth_zero_is_trivially_verified(check):
    rep = check(ELLENTUCK, TRIO, 0)
    assert rep.verdict == "Verified" and rep.bound == 0


def test_a2_trio():
    assert check_a2(ELLENTUCK, TRIO, 5).verdict == "Verified"


def test_a3_ellentuck_depth_5():
    assert check_a3(ELLENTUCK, E_OBJS, 5, 256).verdict == "Verified"


def test_a3_star_ellentuck_depth_5():
    assert check_a3_star(ELLENTUCK, E_OBJS, 5, 256).verdict == "Verified"


def test_a3_milliken_depth_3():
    assert check_a3(MILLIKEN, M_OBJS, 3, 64).verdict == "Verified"


def test_milliken_a1_a2_depth_4():
    reps = run_suite(MILLIKEN, M_OBJS, 4, 64, which=("A.1", "A.2"))
    assert [r.verdict for r in reps] == ["Verified", "Verified"]


@pytest.mark.parametrize("axiom", sorted(FAULTS))
def test_fault_fixture_is_caught(axiom):
    space, objs = FAULTS[axiom]()
    if axiom == "A.4":
        rep = check_a4(space, (), objs[0], lambda c: c == (0,))
    else:
        rep = run_suite(space, objs, 4, 64, which=(axiom,))[0]
    assert rep.verdict == "Counterexample"
    assert rep.witness


def test_a4_even_singletons():
    N = parse_object("naturals")
    rep = check_a4(ELLENTUCK, (), N, lambda c: c[0] % 2 == 0)
    assert rep.verdict == "Verified" and rep.witness["side"] == "in"
    assert all(x % 2 == 0 for x in approx(rep.witness_object, 32))


@pytest.mark.parametrize("colour, side", [(lambda c: True, "in"), (lambda c: False, "out")])
def test_a4_constant_colourings(colour, side):
    rep = check_a4(ELLENTUCK, (), parse_object("naturals"), colour)
    assert rep.verdict == "Verified" and rep.witness["side"] == side


def test_reports_are_deterministic():
    one = [r.to_json() for r in run_suite(ELLENTUCK, E_OBJS[:4], 3, 64, seed=5)]
    two = [r.to_json() for r in run_suite(ELLENTUCK, E_OBJS[:4], 3, 64, seed=5)]
    assert one == two
