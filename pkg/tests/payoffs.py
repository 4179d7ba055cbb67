"""Random clopen payoffs with a known winner, shared by the game tests."""
import random
from itertools import product

from ramsey_spaces import ClopenSet, ELLENTUCK

HORIZON = 64


def residue_payoff(seed):
    """A depth-1 or depth-2 table decided by residues mod q, plus its winner.

    The table accepts r_d(A) when a random truth table R says yes to the
    residues of its entries.  At depth 1 player I wins iff some R[r] holds
    (play inside that residue class).  At depth 2 player I wins iff some
    R[r, r] holds: any infinite set has two entries with equal residue, so
    with no such r II wins by staying inside one class.
    """
    rng = random.Random(f"payoff:{seed}")
    q = rng.choice([2, 3, 4])
    d = rng.choice([1, 2])
    R = {key: rng.random() < 0.35 for key in product(range(q), repeat=d)}
    X = ClopenSet.from_predicate(d, lambda t: R[tuple(x % q for x in t)], ELLENTUCK, HORIZON)
    if d == 1:
        winner = "I" if any(R.values()) else "II"
    else:
        winner = "I" if any(R[(r, r)] for r in range(q)) else "II"
    return X, winner, {"q": q, "depth": d}


def random_table(seed):
    """A fully random depth <= 2 table below the horizon (no exact oracle)."""
    from itertools import combinations
    rng = random.Random(f"table:{seed}")
    d = rng.choice([1, 2])
    p = rng.random()
    acc = frozenset(t for t in combinations(range(HORIZON), d) if rng.random() < p)
    return ClopenSet(d, acc, ELLENTUCK)
