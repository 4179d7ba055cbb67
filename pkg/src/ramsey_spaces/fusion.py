"""Fusion sequences [n_0, Y_0], [n_1, Y_1], ... and their limits."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional

from .core import Lazy, SpaceObject, UsageError, le_bounded


class StepRejected(ValueError):
    """A push broke one of the fusion clauses; ``clause`` names which."""

    def __init__(self, clause, message):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


@dataclass(frozen=True)
class FusionSequence:
    steps: tuple = ()
    bound: int = 16       # depth bound for the <= check
    strict: bool = True   # reject pushes whose <= check is Unknown

    def __len__(self):
        return len(self.steps)

    @property
    def last(self):
        return self.steps[-1] if self.steps else None

    def to_json(self):
        out = []
        for n, Y in self.steps:
            out.append({"n": n, "object": Y.spec, "prefix": Y.space.encode(Y.prefix(n))})
        return json.dumps(out, separators=(",", ":"))


def check_step(seq: FusionSequence, n: int, Y: SpaceObject):
    """Raise StepRejected unless (n, Y) may follow the last step of seq."""
    if n < 0:
        raise StepRejected("monotonicity", "n must be a natural number")
    if not seq.steps:
        return
    n_k, Y_k = seq.steps[-1]
    if n <= n_k:
        raise StepRejected("monotonicity", f"n = {n} does not exceed previous n = {n_k}")
    if Y.prefix(n_k) != Y_k.prefix(n_k):
        raise StepRejected("prefix", f"r_{n_k} of the new object differs from r_{n_k}(Y_k)")
    verdict = le_bounded(Y, Y_k, max(seq.bound, n))
    if verdict.no or (verdict.unknown and seq.strict):
        raise StepRejected("membership", f"new object is not certified below Y_k ({verdict!r})")


def push(seq: FusionSequence, n: int, Y: SpaceObject) -> FusionSequence:
    """A new sequence with (n, Y) appended; the old one is untouched."""
    check_step(seq, n, Y)
    return FusionSequence(seq.steps + ((n, Y),), seq.bound, seq.strict)


def limit(seq: FusionSequence, supplier: Optional[Callable] = None) -> SpaceObject:
    """The limit object Y_inf.

    Without a supplier the sequence is frozen: past the last step the limit
    follows the last Y.  With ``supplier(k, seq) -> (n_k, Y_k)`` further steps
    are pulled (and validated) whenever an element beyond the recorded n's is
    requested.
    """
    if not seq.steps and supplier is None:
        raise UsageError("the limit of an empty fusion sequence is undefined")
    state = {"seq": seq}

    def pull():
        cur = state["seq"]
        n, Y = supplier(len(cur), cur)
        state["seq"] = push(cur, n, Y)

    def generate():
        i = 0
        while True:
            cur = state["seq"]
            if supplier is not None:
                while not cur.steps or cur.steps[-1][0] <= i:
                    pull()
                    cur = state["seq"]
            # the first step whose n exceeds i already fixes element i
            src = cur.steps[-1][1]
            for n, Y in cur.steps:
                if n > i:
                    src = Y
                    break
            yield src.element(i)
            i += 1

    first = (seq.steps[0][1],) if seq.steps else ()
    space = seq.steps[0][1].space if seq.steps else supplier(0, seq)[1].space
    below = tuple(Y for _, Y in seq.steps) if supplier is None else first
    obj = Lazy(space, f"limit[{len(seq)}{'+' if supplier else ''}]", generate, below=below)
    obj.fusion_state = state
    return obj


def pulled(obj) -> FusionSequence:
    """The steps a lazy limit has pulled so far."""
    return obj.fusion_state["seq"]
