"""Finite Ramsey: homogeneous sets for colourings of k-subsets of {0..n-1}."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import UsageError

MAX_UNIVERSE = 18


@dataclass(frozen=True)
class Coloring:
    n: int
    k: int
    colors: int
    table: dict  # sorted k-tuple -> colour in 1..colors

    def __post_init__(self):
        if self.n > MAX_UNIVERSE:
            raise UsageError(f"universe {self.n} exceeds the limit {MAX_UNIVERSE}")
        if self.k < 1 or self.colors < 1:
            raise UsageError("need k >= 1 and at least one colour")
        want = set(combinations(range(self.n), self.k))
        if set(self.table) != want:
            missing = sorted(want - set(self.table))[:1]
            raise UsageError(f"colouring is not total on [{self.n}]^{self.k}; e.g. {missing} is missing"
                             if missing else "colouring has subsets outside the universe")
        bad = [v for v in self.table.values() if not 1 <= v <= self.colors]
        if bad:
            raise UsageError(f"colour {bad[0]} outside 1..{self.colors}")

    def __call__(self, subset):
        return self.table[tuple(sorted(subset))]

    @classmethod
    def from_function(cls, n, k, colors, f):
        return cls(n, k, colors, {s: f(s) for s in combinations(range(n), k)})

    @classmethod
    def from_json(cls, data, n, k, colors):
        if not isinstance(data, list):
            raise UsageError("coloring: expected an array of {subset, color}")
        table = {}
        for i, item in enumerate(data):
            if not isinstance(item, dict) or "subset" not in item or "color" not in item:
                raise UsageError(f"coloring[{i}]: needs fields 'subset' and 'color'")
            s = item["subset"]
            if not isinstance(s, list) or not all(isinstance(v, int) and 0 <= v < n for v in s):
                raise UsageError(f"coloring[{i}].subset: expected naturals below {n}")
            if len(set(s)) != k:
                raise UsageError(f"coloring[{i}].subset: expected {k} distinct entries")
            if not isinstance(item["color"], int):
                raise UsageError(f"coloring[{i}].color: expected an integer")
            table[tuple(sorted(s))] = item["color"]
        return cls(n, k, colors, table)

    def to_json(self):
        return json.dumps([{"subset": list(s), "color": c} for s, c in sorted(self.table.items())],
                          separators=(",", ":"))


def pentagon() -> Coloring:
    """Edges of K5 coloured 1 on the 5-cycle, 2 on the chords."""
    def col(e):
        d = (e[1] - e[0]) % 5
        return 1 if d in (1, 4) else 2
    return Coloring.from_function(5, 2, 2, col)


def verify_homogeneous(col: Coloring, H) -> bool:
    H = sorted(H)
    if len(set(H)) != len(H) or any(not 0 <= h < col.n for h in H):
        raise UsageError("H must be distinct elements of the universe")
    return len({col(s) for s in combinations(H, col.k)}) <= 1


def find_homogeneous(col: Coloring, target: int) -> Optional[tuple]:
    """Least (lexicographically) H of size ``target`` with [H]^k one colour."""
    if target < col.k:
        raise UsageError("target size must be at least k")
    k, n = col.k, col.n

    def grow(H, colour):
        if len(H) == target:
            return tuple(H)
        # leave room for the remaining elements
        for x in range(H[-1] + 1 if H else 0, n - (target - len(H)) + 1):
            c = colour
            ok = True
            if len(H) >= k - 1:
                for rest in combinations(H, k - 1):
                    got = col.table[rest + (x,)]
                    if c is None:
                        c = got
                    elif got != c:
                        ok = False
                        break
            if ok:
                found = grow(H + [x], c)
                if found:
                    return found
        return None

    return grow([], None)
