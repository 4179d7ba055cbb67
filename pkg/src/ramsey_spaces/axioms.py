"""Bounded-depth checkers for the Ramsey-space axioms A.1-A.4 and A.3*.

Universal clauses are checked exhaustively over the approximations of the
sample objects.  Existential clauses are semi-decided by searching a witness
family (``space.family``); running out of candidates gives Inconclusive, never
Verified.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import (
    BasicOpen, Every, Exhausted, UsageError, amalgam_enum, approx, depth, depth_exact,
    enum_extensions, in_open, le_bounded,
)

VERIFIED, COUNTEREXAMPLE, INCONCLUSIVE = "Verified", "Counterexample", "Inconclusive"


@dataclass
class CheckReport:
    axiom: str
    verdict: str
    bound: int
    samples: int = 0
    seed: int = 0
    witness: Optional[dict] = None
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return self.verdict == VERIFIED

    def to_dict(self):
        out = {"axiom": self.axiom, "verdict": self.verdict, "bound": self.bound,
               "samples": self.samples, "seed": self.seed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


class _Found(Exception):
    def __init__(self, witness):
        self.witness = witness


def _enc(space, a):
    return space.encode(a)


def _pool(space, objects, depth_):
    """All r_n(X) for sample X and n <= depth, in canonical order."""
    seen = set()
    for X in objects:
        for n in range(depth_ + 1):
            seen.add(approx(X, n))
    return sorted(seen, key=lambda a: (len(a), repr(a)))


def _report(axiom, bound, seed, body):
    """Run ``body(tally)``; translate _Found into a Counterexample."""
    tally = {"samples": 0, "inconclusive": None, "notes": []}
    try:
        body(tally)
    except _Found as f:
        return CheckReport(axiom, COUNTEREXAMPLE, bound, tally["samples"], seed, f.witness, tally["notes"])
    except Exhausted as e:
        return CheckReport(axiom, INCONCLUSIVE, bound, tally["samples"], seed,
                           {"exhausted": str(e), "horizon": e.horizon}, tally["notes"])
    if tally["inconclusive"] is not None:
        return CheckReport(axiom, INCONCLUSIVE, bound, tally["samples"], seed,
                           tally["inconclusive"], tally["notes"])
    return CheckReport(axiom, VERIFIED, bound, tally["samples"], seed, None, tally["notes"])


# ------------------------------------------------------------------- A.1

def check_a1(space, objects, depth_: int, seed: int = 0) -> CheckReport:
    if not objects:
        raise UsageError("check_a1 needs at least one object")

    def body(t):
        table = {}
        for X in objects:
            rs = [space.approx(X, n) for n in range(depth_ + 1)]
            t["samples"] += 1
            if rs[0] != space.empty():
                raise _Found({"clause": "A.1.1", "object": X.spec, "r0": _enc(space, rs[0])})
            for n, r in enumerate(rs):
                if len(r) != n:
                    raise _Found({"clause": "A.1.1", "object": X.spec, "n": n, "r": _enc(space, r)})
                if space.approx(X, n) != r:
                    raise _Found({"clause": "determinism", "object": X.spec, "n": n})
                for m in range(n):
                    if not space.is_initial(rs[m], r):
                        raise _Found({"clause": "A.1.3", "object": X.spec, "m": m, "n": n,
                                      "r_m": _enc(space, rs[m]), "r_n": _enc(space, r)})
            table[X.spec] = (X, rs)
        specs = sorted(table)
        for i, s1 in enumerate(specs):
            X, rx = table[s1]
            for s2 in specs[i:]:
                Y, ry = table[s2]
                for n in range(depth_ + 1):
                    for m in range(depth_ + 1):
                        t["samples"] += 1
                        if rx[n] != ry[m]:
                            continue
                        if n != m or rx[:n + 1] != ry[:n + 1]:
                            raise _Found({"clause": "A.1.3", "objects": [s1, s2], "n": n, "m": m})
                # prefix-distinguishable objects are told apart by some r_n
                if rx[depth_] != ry[depth_] and all(a == b for a, b in zip(rx, ry)):
                    raise _Found({"clause": "A.1.2", "objects": [s1, s2]})

    return _report("A.1", depth_, seed, body)


# ------------------------------------------------------------------- A.2

def check_a2(space, objects, depth_: int, seed: int = 0) -> CheckReport:
    if not objects:
        raise UsageError("check_a2 needs at least one object")
    pool = _pool(space, objects, depth_)

    def body(t):
        below = {}
        for b in pool:
            down = space.below_fin(b)
            t["samples"] += 1
            if len(set(down)) != len(down):
                raise _Found({"clause": "A.2.1", "detail": "duplicate in down-set", "b": _enc(space, b)})
            for x in down:
                if not space.le_fin(x, b):
                    raise _Found({"clause": "A.2.1", "detail": "unsound down-set",
                                  "a": _enc(space, x), "b": _enc(space, b)})
            below[b] = set(down)
            if not space.le_fin(b, b):
                raise _Found({"clause": "reflexivity", "b": _enc(space, b)})
        rel = {}
        for a in pool:
            for b in pool:
                rel[a, b] = space.le_fin(a, b)
                if rel[a, b] and a not in below[b]:
                    raise _Found({"clause": "A.2.1", "detail": "incomplete down-set",
                                  "a": _enc(space, a), "b": _enc(space, b)})
        for a in pool:
            for b in pool:
                if not rel[a, b]:
                    continue
                for c in pool:
                    t["samples"] += 1
                    if rel[b, c] and not rel[a, c]:
                        raise _Found({"clause": "transitivity", "a": _enc(space, a),
                                      "b": _enc(space, b), "c": _enc(space, c)})
        # bounded direction of A.2.2
        for X in objects:
            for Y in objects:
                v = le_bounded(X, Y, depth_)
                t["samples"] += 1
                if v.yes:
                    for n in range(depth_ + 1):
                        a = space.approx(X, n)
                        if depth_exact(Y, a) is None:
                            raise _Found({"clause": "A.2.2", "detail": "le certified but r_n has no depth",
                                          "A": X.spec, "B": Y.spec, "n": n})
                elif v.no:
                    if all(depth_exact(Y, space.approx(X, n)) is not None for n in range(depth_ + 1)):
                        raise _Found({"clause": "A.2.2", "detail": "refutation without a deep prefix",
                                      "A": X.spec, "B": Y.spec})
        # A.2.3: a proper initial segment of c already dominates a
        for X in objects:
            rs = [space.approx(X, n) for n in range(depth_ + 1)]
            for i in range(depth_ + 1):
                for j in range(i + 1, depth_ + 1):
                    a, b = rs[i], rs[j]
                    for c in pool:
                        if not rel.get((b, c), space.le_fin(b, c)):
                            continue
                        t["samples"] += 1
                        if not any(space.le_fin(a, c[:k]) for k in range(len(c))):
                            raise _Found({"clause": "A.2.3", "a": _enc(space, a), "b": _enc(space, b),
                                          "c": _enc(space, c)})

    return _report("A.2", depth_, seed, body)


# ------------------------------------------------------------------- A.3

def _members(space, family, B, n, bound):
    """Family objects certified in [n, B]."""
    head = space.approx(B, n)
    return [A for A in family if space.approx(A, n) == head and le_bounded(A, B, bound).yes]


def _included(space, a, X, Y, bound):
    """Certify [a, X] inside [a, Y]."""
    if not space.open_nonempty(a, X):
        return True
    if not space.open_nonempty(a, Y):
        return False
    return le_bounded(space.cut(X, a), space.cut(Y, a), bound).yes


def check_a3(space, objects, depth_: int, witness_budget: int = 256, seed: int = 0) -> CheckReport:
    if not objects:
        raise UsageError("check_a3 needs at least one object")
    family = space.family(objects, witness_budget)
    pool = _pool(space, objects, depth_)
    bound = depth_ + 2

    def body(t):
        for B in objects:
            for a in pool:
                n = depth(B, a, depth_)
                if not n.finite:
                    continue
                n = n.m
                members = _members(space, family, B, n, bound)
                # A.3.1: every A in [depth_B(a), B] meets [a, A]
                for A in members:
                    t["samples"] += 1
                    if not space.open_nonempty(a, A):
                        raise _Found({"clause": "A.3.1", "a": _enc(space, a), "B": B.spec, "A": A.spec})
                    if not in_open(space.graft(a, A), a, A, bound).yes:
                        t["inconclusive"] = {"clause": "A.3.1", "a": _enc(space, a), "A": A.spec}
                # A.3.2: amalgamation into [depth_B(a), B]
                for A in family:
                    if not le_bounded(A, B, bound).yes:
                        continue
                    da = depth(A, a, depth_)
                    if not da.finite or da.m > n:
                        continue
                    t["samples"] += 1
                    cands = [space.graft(space.approx(B, n), A)] + members
                    if not any(in_open(C, space.approx(B, n), B, bound).yes and _included(space, a, C, A, bound)
                               for C in cands):
                        t["inconclusive"] = {"clause": "A.3.2", "a": _enc(space, a), "A": A.spec, "B": B.spec}

    return _report("A.3", depth_, seed, body)


# ------------------------------------------------------------------ A.3*

def _star_members(space, family, A, m, bound):
    if space.complete_members:
        return space.members(m, A)
    top = space.approx(A, m)
    rest = space.cut(A, top)
    extra = [space.graft(top, rest)]
    for off in (0, 1):
        extra.append(space.graft(top, Every(space, 2, off, rest)))
    seen, out = set(), []
    for X in extra + list(family):
        if X.spec not in seen and space.approx(X, m) == top and le_bounded(X, A, bound).yes:
            seen.add(X.spec)
            out.append(X)
    return out


def check_a3_star(space, objects, depth_: int, witness_budget: int = 256, seed: int = 0,
                  element_bound: Optional[int] = None) -> CheckReport:
    if not objects:
        raise UsageError("check_a3_star needs at least one object")
    family = space.family(objects, witness_budget)
    pool = _pool(space, objects, depth_)
    bound = depth_ + 2

    def ebound(B, m):
        if element_bound is not None:
            return element_bound
        return space.content_max(space.approx(B, m + 1)) + 1

    def body(t):
        for A in objects:
            for b in pool:
                k = depth(A, b, depth_)
                if not k.finite:
                    continue
                k = k.m
                for m in range(k, depth_ + 1):
                    members = _star_members(space, family, A, m, bound)
                    for B in members:
                        t["samples"] += 1
                        eb = ebound(B, m)
                        ext = amalgam_enum(b, B, A, m, eb, bound)
                        if not ext:
                            w = {"clause": "A.3*.1", "b": _enc(space, b), "A": A.spec, "B": B.spec,
                                 "m": m, "element_bound": eb}
                            if space.complete_members:
                                raise _Found(w)
                            t["inconclusive"] = w
                        if m == k:
                            # with m = depth_A(b) the strong sets are the one-step extensions
                            plain = enum_extensions(BasicOpen(b, B), len(b) + 1, eb)
                            if ext != plain:
                                raise _Found({"clause": "A.3*-reduces-to-A.3", "b": _enc(space, b),
                                              "A": A.spec, "B": B.spec, "m": m})
                    # A.3*.2
                    top = space.approx(A, m)
                    for B in family:
                        if not le_bounded(B, A, bound).yes:
                            continue
                        dB = depth(B, b, depth_)
                        if not dB.finite or dB.m > k:
                            continue
                        t["samples"] += 1
                        cands = [space.graft(top, space.cut(B, top))] + members
                        ok = any(in_open(C, top, A, bound).yes
                                 and space.strong_included(b, C, B, A, m, bound).yes for C in cands)
                        if not ok:
                            t["notes"].append({"clause": "A.3*.2", "b": _enc(space, b), "A": A.spec,
                                               "B": B.spec, "m": m})
                            t["inconclusive"] = t["notes"][-1]

    return _report("A.3*", depth_, seed, body)


# ------------------------------------------------------------------- A.4

def check_a4(space, a, B, coloring: Callable, witness_budget: int = 256, element_bound: int = 64,
             min_extensions: int = 1, seed: int = 0) -> CheckReport:
    a = tuple(a)
    n = depth_exact(B, a)
    if n is None:
        raise UsageError("check_a4 needs depth_B(a) finite")
    bound = n + len(a) + 2

    def mono(A):
        try:
            ext = enum_extensions(BasicOpen(a, A), len(a) + 1, element_bound)
        except Exhausted:
            return None
        if len(ext) < min_extensions:
            return None
        colors = {bool(coloring(c)) for c in ext}
        if len(colors) != 1:
            return None
        return ("in" if colors.pop() else "out"), ext

    def body(t):
        if space.complete_members:
            cands = space.members(n, B)
            exhaustive = True
        else:
            cands = space.pigeonhole_candidates(a, B, n, coloring, element_bound)
            cands += space.family([B], witness_budget)
            exhaustive = False
        for A in cands:
            t["samples"] += 1
            try:
                if not in_open(A, space.approx(B, n), B, bound).yes:
                    continue
            except Exhausted:  # a colour class that dries up is no witness
                continue
            got = mono(A)
            if got is not None:
                side, ext = got
                t["witness"] = {"object": A.spec, "side": side, "extensions": len(ext)}
                t["object"] = A
                return
        w = {"clause": "A.4", "a": _enc(space, a), "B": B.spec, "candidates": t["samples"]}
        if exhaustive:
            raise _Found(w)
        t["inconclusive"] = w

    tally_holder = {}

    def wrapped(t):
        body(t)
        tally_holder.update(t)

    rep = _report("A.4", element_bound, seed, wrapped)
    if rep.verdict == VERIFIED:
        rep.witness = tally_holder["witness"]
        rep.witness_object = tally_holder["object"]
    return rep


def run_suite(space, objects, depth_, witness_budget=256, seed=0, which=("A.1", "A.2", "A.3", "A.3*")):
    """Run the selected universal/existential suites in a fixed order."""
    out = []
    for ax in which:
        if ax == "A.1":
            out.append(check_a1(space, objects, depth_, seed))
        elif ax == "A.2":
            out.append(check_a2(space, objects, depth_, seed))
        elif ax == "A.3":
            out.append(check_a3(space, objects, depth_, witness_budget, seed))
        elif ax == "A.3*":
            out.append(check_a3_star(space, objects, depth_, witness_budget, seed))
        else:
            raise UsageError(f"unknown axiom {ax!r}")
    return out


# sample objects the command line and the tests run the suites over
SAMPLES = {
    "ellentuck": ["naturals", "evens", "odds", "arith:1:3", "tail:5", "pred:squares",
                  "prefix:[1,4]+evens", "filter:mod3r0:naturals", "cut:7:odds"],
    "milliken": ["blocks:singletons", "blocks:doubling", "blocks:merge:2:singletons",
                 "blocks:prefix:[[0,1]]+singletons", "blocks:cut:3:doubling",
                 "blocks:every:2:1:singletons", "blocks:merge:3:singletons",
                 "blocks:prefix:[[0],[2,3]]+merge:2:singletons"],
}
