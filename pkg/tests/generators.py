"""Seeded generators shared by the fusion tests and the acceptance suite."""
from ramsey_spaces import FusionSequence, approx, parse_object, push

P = parse_object
MAX_SPARSE_STEPS = 6  # every:k steps multiply element sizes, so keep them few


def random_sequence(rng, length):
    """A valid fusion sequence: each step keeps r_n of the last and thins the rest.

    A thinning either raises the floor of the tail (cut) or keeps every k-th
    element of it (every); the latter is capped so elements stay small.
    """
    seq = FusionSequence()
    Y = P("naturals")
    n = rng.randrange(0, 3)
    seq = push(seq, n, Y)
    sparse = 0
    for _ in range(length - 1):
        keep = list(approx(Y, n))
        floor = (keep[-1] if keep else -1) + rng.randrange(0, 4)
        if sparse < MAX_SPARSE_STEPS and rng.random() < 0.4:
            sparse += 1
            k = rng.choice([2, 3])
            tail = f"every:{k}:{rng.randrange(k)}:"
        else:
            tail = ""
        rest = f"{tail}cut:{floor}:{Y.spec}" if floor >= 0 else f"{tail}{Y.spec}"
        Y = P(f"prefix:{keep}+{rest}".replace(" ", "")) if keep else P(rest)
        n += rng.randrange(1, 3)
        seq = push(seq, n, Y)
    return seq
