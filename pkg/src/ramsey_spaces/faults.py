"""Deliberately broken instances, one per axiom, for checker fault-sensitivity.

Each fixture returns ``(space, objects)`` ready for the matching checker.
The finite ones list their whole object set, so the checkers can enumerate
basic opens exhaustively and turn a failed search into a Counterexample.
"""
from __future__ import annotations

from .ellentuck import EllentuckSpace
from .objspec import parse_object


class IncoherentApprox(EllentuckSpace):
    """r_2(A) skips A's second element, so r_1(A) is not an initial part of r_2(A)."""

    name = "fault-a1"

    def approx(self, A, n):
        if n == 2:
            return (A.element(1), A.element(2))
        return A.prefix(n)


class CredulousOrder(EllentuckSpace):
    """Claims every element can occur below every object, and certifies every pair."""

    name = "fault-a2"

    def covered(self, B, x):
        return True

    def certify_le(self, A, B):
        return True


class LooseFinitization(EllentuckSpace):
    """a <=_fin b whenever |a| <= |b|: depths stay finite where [a, A] is empty."""

    name = "fault-a3"

    def le_fin(self, a, b):
        return len(a) <= len(b)

    def below_fin(self, b):  # pragma: no cover - infinite, never asked by check_a3
        raise NotImplementedError


class FiniteSpace(EllentuckSpace):
    """An Ellentuck-shaped space whose object set is a short explicit list.

    ``order`` is the set of spec pairs (A, B) with A <= B; reflexive pairs
    are added automatically.
    """

    complete_members = True

    def __init__(self, name, specs, order=(), le_fin=None):
        self.name = name
        self.objects = [parse_object(s, space=self) for s in specs]
        self.order = {(s, s) for s in specs} | set(order)
        self._le_fin = le_fin

    def le_fin(self, a, b):
        if self._le_fin is not None:
            return self._le_fin(a, b)
        return super().le_fin(a, b)

    def _below(self, B):
        return [X for X in self.objects if (X.spec, B.spec) in self.order]

    def certify_le(self, A, B):
        return (A.spec, B.spec) in self.order

    def covered(self, B, x):
        return any(X.contains(x) for X in self._below(B))

    def open_nonempty(self, a, B):
        return any(X.prefix(len(a)) == tuple(a) for X in self._below(B))

    def members(self, n, B):
        head = B.prefix(n)
        return [X for X in self._below(B) if X.prefix(n) == head]

    def extensions(self, a, B, n, element_bound):
        a = tuple(a)
        out = {X.prefix(n) for X in self._below(B) if X.prefix(len(a)) == a}
        return sorted(c for c in out if self.content_max(c) < element_bound)

    def family(self, objects, budget):
        return list(self.objects[:budget])


def fault_a1():
    space = IncoherentApprox()
    return space, [parse_object(s, space=space) for s in ("naturals", "evens", "odds")]


def fault_a2():
    space = CredulousOrder()
    return space, [parse_object(s, space=space) for s in ("naturals", "evens")]


def fault_a3():
    space = LooseFinitization()
    return space, [parse_object(s, space=space) for s in ("evens", "odds")]


def fault_a3_star():
    # a single object, finitized by initial segments: no extension of r_k
    # inside it ever gets deeper than k + 1
    space = FiniteSpace("fault-a3star", ["naturals"],
                        le_fin=lambda a, b: tuple(b[:len(a)]) == tuple(a))
    return space, list(space.objects)


def fault_a4():
    # two objects below each other: no member of [0, naturals] separates {0} from {1}
    specs = ["naturals", "tail:1"]
    space = FiniteSpace("fault-a4", specs, order=[(x, y) for x in specs for y in specs])
    return space, list(space.objects)


FAULTS = {
    "A.1": fault_a1,
    "A.2": fault_a2,
    "A.3": fault_a3,
    "A.3*": fault_a3_star,
    "A.4": fault_a4,
}
