"""Infinite block sequences of finite subsets of N under condensation.

An element is a block: a nonempty sorted tuple of naturals.  Objects are
streams of blocks with max(x_i) < min(x_{i+1}); A <= B when every block of A
is a union of blocks of B.
"""
from __future__ import annotations

import json
import re

from .core import Cut, Every, Exhausted, Prefix, Space, SpaceObject, UsageError

BLOCK_LIMIT = 1 << 16  # largest block a generator will materialise


def _is_union_of(x, blocks) -> bool:
    """Is block x exactly the union of the members of ``blocks`` it meets?"""
    lo, hi = x[0], x[-1]
    xs = set(x)
    covered = set()
    for y in blocks:
        if y[-1] < lo or y[0] > hi or xs.isdisjoint(y):
            continue
        if not xs.issuperset(y):
            return False
        covered.update(y)
    return covered == xs


def condenses(a, b) -> bool:
    """Every block of a is a union of blocks of b, and max(Ua) <= max(Ub)."""
    a, b = tuple(map(tuple, a)), tuple(map(tuple, b))
    if not a:
        return True
    if not b or a[-1][-1] > b[-1][-1]:
        return False
    return all(_is_union_of(x, b) for x in a)


def _groupings(n, count=None):
    """Ordered groupings of indices 0..n-1: lists of index tuples S_1 < S_2 < ...

    Each index is skipped, joins the current group or opens a new one.
    """
    out = []

    def walk(i, groups):
        if count is not None and len(groups) > count:
            return
        if i == n:
            if count is None or len(groups) == count:
                out.append([tuple(g) for g in groups])
            return
        walk(i + 1, groups)
        if groups:
            groups[-1].append(i)
            walk(i + 1, groups)
            groups[-1].pop()
        groups.append([i])
        walk(i + 1, groups)
        groups.pop()

    walk(0, [])
    return out


class MillikenSpace(Space):
    name = "milliken"
    spec_prefix = "blocks:"
    probe = 12  # family members must have their first ``probe`` blocks within BLOCK_LIMIT

    def lo(self, x):
        return x[0]

    def hi(self, x):
        return x[-1]

    def check_approx(self, a):
        for x in a:
            if not isinstance(x, tuple) or not x or list(x) != sorted(set(x)):
                raise UsageError(f"bad block {x!r}")
        super().check_approx(a)

    def le_fin(self, a, b):
        if not all(isinstance(x, tuple) for x in (*a, *b)):
            raise UsageError("block approximations are tuples of blocks")
        return condenses(a, b)

    def below_fin(self, b):
        b = tuple(b)
        out = set()
        for groups in _groupings(len(b)):
            out.add(tuple(tuple(sorted(v for i in g for v in b[i])) for g in groups))
        return sorted(out)

    def covered(self, B, x):
        seen = []
        for y in B.elements():
            if y[0] > x[-1]:
                break
            if y[-1] >= x[0]:
                seen.append(y)
            if y[-1] >= x[-1]:
                break
        return _is_union_of(x, seen) and bool(seen)

    def combine(self, atoms, count):
        for groups in _groupings(len(atoms), count):
            yield tuple(tuple(sorted(v for i in g for v in atoms[i])) for g in groups)

    def universal(self, obj):
        return isinstance(obj, Singletons)

    def encode(self, a, compact=False):
        data = [[int(v) for v in x] for x in a]
        return json.dumps(data, separators=(",", ":")) if compact else data

    def decode(self, data):
        if not isinstance(data, list) or not all(isinstance(x, list) and x for x in data):
            raise UsageError(f"expected a list of nonempty blocks, got {data!r}")
        a = tuple(tuple(x) for x in data)
        self.check_approx(a)
        return a

    def family(self, objects, budget):
        out = super().family(objects, budget)
        seen = {x.spec for x in out}
        for A in objects:
            m = Merge(self, 2, A)
            if len(out) < budget and m.spec not in seen:
                seen.add(m.spec)
                out.append(m)
        # drop candidates whose early blocks are too large to write down
        keep = []
        for A in out:
            try:
                A.prefix(self.probe)
            except Exhausted:
                continue
            keep.append(A)
        return keep


MILLIKEN = MillikenSpace()


class Singletons(SpaceObject):
    """{0}, {1}, {2}, ..."""

    def _generate(self):
        n = 0
        while True:
            yield (n,)
            n += 1

    def element(self, i):
        return (i,)

    def prefix(self, n):
        return tuple((i,) for i in range(n))

    def contains(self, x):
        return len(x) == 1

    @property
    def inner(self):
        return "singletons"


class Doubling(SpaceObject):
    """Blocks of doubling length: {0}, {1,2}, {3..6}, {7..14}, ..."""

    def _generate(self):
        k = 0
        while True:
            yield self.element(k)
            k += 1

    def element(self, i):
        if 2 ** i > BLOCK_LIMIT:
            raise Exhausted(f"doubling block {i} exceeds {BLOCK_LIMIT} entries", BLOCK_LIMIT)
        return tuple(range(2 ** i - 1, 2 ** (i + 1) - 1))

    def prefix(self, n):
        return tuple(self.element(i) for i in range(n))

    @property
    def inner(self):
        return "doubling"


class Merge(SpaceObject):
    """Unions of k consecutive blocks of the parent."""

    condenses_parent = True

    def __init__(self, space, k, parent):
        if k < 1:
            raise UsageError("merge needs k >= 1")
        super().__init__(space)
        self.k, self.parent = k, parent

    def element(self, i):
        blocks = [self.parent.element(i * self.k + j) for j in range(self.k)]
        return tuple(v for blk in blocks for v in blk)

    def prefix(self, n):
        return tuple(self.element(i) for i in range(n))

    def _generate(self):  # pragma: no cover - element() is overridden
        i = 0
        while True:
            yield self.element(i)
            i += 1

    @property
    def inner(self):
        return f"merge:{self.k}:{self.parent.inner}"

    @property
    def parseable(self):
        return self.parent.parseable


def singletons():
    return Singletons(MILLIKEN)


def doubling():
    return Doubling(MILLIKEN)


def parse_blocks(spec: str, space=MILLIKEN):
    from .objspec import _int, _split_list
    head, _, rest = spec.partition(":")
    if spec == "singletons":
        return Singletons(space)
    if spec == "doubling":
        return Doubling(space)
    if head == "prefix":
        items, tail = _split_list(rest, "blocks prefix")
        try:
            blocks = space.decode(items)
        except UsageError as e:
            raise UsageError(f"blocks prefix: {e}") from None
        tail_obj = parse_blocks(tail, space)
        return Prefix(space, blocks, tail_obj) if blocks else tail_obj
    if head == "cut":
        floor, _, tail = rest.partition(":")
        return Cut(space, _int(floor, "cut"), parse_blocks(tail, space))
    if head == "every":
        m = re.fullmatch(r"(\d+):(\d+):(.*)", rest)
        if not m or int(m.group(1)) < 1 or int(m.group(2)) >= int(m.group(1)):
            raise UsageError("every: need k >= 1 and offset < k")
        return Every(space, int(m.group(1)), int(m.group(2)), parse_blocks(m.group(3), space))
    if head == "merge":
        k, _, tail = rest.partition(":")
        return Merge(space, _int(k, "merge"), parse_blocks(tail, space))
    raise UsageError(f"unrecognised block spec {spec!r}")
