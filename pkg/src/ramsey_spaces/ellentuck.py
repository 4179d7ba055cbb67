"""The Ellentuck space: infinite subsets of N ordered by inclusion."""
from __future__ import annotations

import json
from itertools import combinations
from typing import Callable

from .core import (
    Arith, Cut, Filter, Exhausted, InvalidInput, Lazy, Space, SpaceObject, UsageError,
    Unknown, YES, depth_exact, in_open, le_bounded,
)


class EllentuckSpace(Space):
    name = "ellentuck"

    def lo(self, x):
        return x

    def hi(self, x):
        return x

    def le_fin(self, a, b):
        if not all(type(x) is int for x in (*a, *b)):
            raise UsageError("ellentuck approximations are tuples of naturals")
        return set(a) <= set(b)

    def below_fin(self, b):
        b = tuple(b)
        return sorted(c for k in range(len(b) + 1) for c in combinations(b, k))

    def covered(self, B, x):
        return B.contains(x)

    def combine(self, atoms, count):
        return combinations(atoms, count)

    def universal(self, obj):
        return isinstance(obj, Arith) and obj.start == 0 and obj.step == 1

    def encode(self, a, compact=False):
        data = [int(x) for x in a]
        return json.dumps(data, separators=(",", ":")) if compact else data

    def decode(self, data):
        if not isinstance(data, list) or not all(isinstance(x, int) and x >= 0 for x in data):
            raise UsageError(f"expected a list of naturals, got {data!r}")
        if data != sorted(set(data)):
            raise UsageError(f"approximation {data!r} is not strictly increasing")
        return tuple(data)

    def strong_included(self, b, B1, B2, A, m, bound):
        # a member of <b,B1>^m_A leaves b with an element beyond r_m(A), so
        # everything after b sits in B1 above max r_m(A)
        if not self.open_nonempty(b, B2):
            return Unknown(bound)
        top = self.cut(B1, A.prefix(m))
        if le_bounded(top, B2, bound).yes:
            return YES
        return super().strong_included(b, B1, B2, A, m, bound)

    def pigeonhole_candidates(self, a, B, n, coloring, element_bound):
        # keep the elements of B beyond r_n(B) whose extension of a has one colour
        head = B.prefix(n)
        rest = self.cut(B, head)
        out = []
        for want in (True, False):
            f = Filter(self, lambda x, w=want: bool(coloring(a + (x,))) == w, rest,
                       label="in" if want else "out", scan_limit=max(4 * element_bound, 1000))
            out.append(self.graft(head, f))
        return out

    def family(self, objects, budget):
        out = super().family(objects, budget)
        seen = {x.spec for x in out}
        for A in objects:
            for name in ("even", "odd"):
                f = Filter(self, predicate(name), A, name=name)
                # keep only filters that visibly have elements
                try:
                    f.element(3)
                except Exhausted:
                    continue
                if len(out) < budget and f.spec not in seen:
                    seen.add(f.spec)
                    out.append(f)
        return out


ELLENTUCK = EllentuckSpace()
from .objspec import predicate  # noqa: E402  (objspec imports this module lazily)


def naturals():
    return Arith(ELLENTUCK, 0, 1)


def evens():
    return Arith(ELLENTUCK, 0, 2)


def odds():
    return Arith(ELLENTUCK, 1, 2)


def cut_above(A: SpaceObject, s) -> SpaceObject:
    """A/s: the elements of A strictly above max(s); A itself when s is empty."""
    s = tuple(s)
    if not s:
        return A
    return Cut(A.space, max(s), A)


def index_in(B: SpaceObject, x, horizon=None):
    """Position of x in B (x must belong to B)."""
    if isinstance(B, Arith):
        return B.index_of(x)
    i = 0
    for y in B.elements():
        if y == x:
            return i
        if y > x or (horizon is not None and i > horizon):
            break
        i += 1
    raise InvalidInput(f"{x} is not an element of {B.spec}")


def diagonalize(a, B: SpaceObject, chain: Callable[[int], SpaceObject], depth_bound: int,
                horizon: int = 1_000_000) -> SpaceObject:
    """Greedy deep-pick diagonalization of a decreasing chain inside [a, B].

    After the picks p so far (starting from a), the next element is the least
    element above max(p) lying in D_m with m = depth_B(p) - depth_B(a).  Every
    later element then lies in the deeper, smaller D's, which is what the
    selectivity condition needs.
    """
    a = tuple(a)
    space = B.space
    base_depth = depth_exact(B, a)
    if base_depth is None or not space.open_nonempty(a, B):
        raise InvalidInput("[a, B] is empty")
    links = {}

    def D(n):
        if n not in links:
            links[n] = chain(n)
        return links[n]

    for n in range(depth_bound + 1):
        if not in_open(D(n), a, B, depth_bound).yes:
            raise InvalidInput(f"chain member D_{n} = {D(n).spec} is not certified in [a, B]")
        if n and le_bounded(D(n), D(n - 1), depth_bound).no:
            raise InvalidInput(f"chain is not decreasing at D_{n}")

    def generate():
        yield from a
        last = max(a) if a else -1
        pos = base_depth  # depth_B of the current prefix
        while True:
            target = D(pos - base_depth)
            scanned = 0
            for x in target.elements_above(last):
                scanned += 1
                if scanned > horizon:
                    raise Exhausted(f"no pick found within horizon {horizon}", horizon)
                if space.covered(B, x):
                    break
            pos = index_in(B, x, horizon) + 1
            last = x
            yield x

    label = f"diag({list(a)};{B.spec})"
    return Lazy(space, label, generate, below=(B,))


def parse_chain(text: str) -> Callable[[int], SpaceObject]:
    """Named chains: chain:tail, chain:evens-shift, chain:const:<spec>."""
    from .objspec import parse_object
    if text == "chain:tail":
        return lambda n: Arith(ELLENTUCK, n, 1)
    if text == "chain:evens-shift":
        return lambda n: Cut(ELLENTUCK, 2 * n, evens())
    if text.startswith("chain:const:"):
        obj = parse_object(text[len("chain:const:"):])
        return lambda n: obj
    raise UsageError(f"unknown chain {text!r}")


def selectivity_violations(a, B, chain, D_inf, max_depth: int, horizon: int):
    """Finite check of the diagonalization property.

    For each b extending a inside D_inf with depth_B(b) <= max_depth, every
    element of D_inf above max(b) and below ``horizon`` must lie in D_{n_b}.
    Returns (violations, checked, rejected) where ``rejected`` lists the b whose
    depth in B could not be established.
    """
    a = tuple(a)
    base = depth_exact(B, a)
    pool = []
    for x in D_inf.elements_above(max(a) if a else -1):
        if x >= horizon:
            break
        pool.append(x)
    # depth in B is monotone in the added elements, so only shallow ones can occur
    shallow = [x for x in pool if (depth_exact(B, a + (x,)) or 0) <= max_depth
               and depth_exact(B, a + (x,)) is not None]
    violations, checked, rejected = [], 0, []
    tail_of = {}
    for k in range(len(shallow) + 1):
        for extra in combinations(shallow, k):
            b = a + extra
            d = depth_exact(B, b)
            if d is None:
                rejected.append(b)
                continue
            if d > max_depth:
                continue
            n_b = d - base
            top = b[-1] if b else -1
            if top not in tail_of:
                tail_of[top] = [x for x in pool if x > top]
            Dn = chain(n_b)
            checked += 1
            for x in tail_of[top]:
                if not Dn.contains(x):
                    violations.append((b, x, n_b))
                    break
    return violations, checked, rejected
