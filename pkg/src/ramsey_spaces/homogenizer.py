"""Clopen sets, their Ramsey witnesses, and the lemma machinery behind them.

A clopen set of depth d is a finite table of length-d approximations; an
object belongs to it when its r_d is in the table.  Everything here works
relative to an element horizon: claims about [a, H] cover the extensions whose
content lies below the horizon, and are checked exactly against enumeration.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .core import (
    BasicOpen, Cut, Exhausted, NO, Prefix, Unknown, UsageError, YES, amalgam_enum, approx,
    depth, depth_exact, enum_extensions, in_open, le_bounded,
)
from .fusion import FusionSequence, StepRejected, push

HORIZON = 64
IN, OUT = "In", "Out"


@dataclass(frozen=True)
class ClopenSet:
    depth: int
    accept: frozenset
    space: object = None

    def __post_init__(self):
        for t in self.accept:
            if len(t) != self.depth:
                raise UsageError(f"accept entry {t!r} does not have length {self.depth}")

    def __contains__(self, t):
        return tuple(t) in self.accept

    def complement(self, horizon=HORIZON):
        """The other side within the horizon (for Ellentuck tables)."""
        everything = combinations(range(horizon), self.depth)
        return ClopenSet(self.depth, frozenset(everything) - self.accept, self.space)

    def to_dict(self):
        enc = self.space.encode if self.space is not None else list
        return {"depth": self.depth, "accept": sorted(enc(t) for t in self.accept)}

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data, space):
        if not isinstance(data, dict):
            raise UsageError("clopen: expected an object with 'depth' and 'accept'")
        d = data.get("depth")
        if not isinstance(d, int) or d < 0:
            raise UsageError("clopen.depth: expected a natural number")
        acc = data.get("accept")
        if not isinstance(acc, list):
            raise UsageError("clopen.accept: expected an array")
        out = set()
        for i, t in enumerate(acc):
            try:
                out.add(space.decode(t))
            except UsageError as e:
                raise UsageError(f"clopen.accept[{i}]: {e}") from None
        return cls(d, frozenset(out), space)

    @classmethod
    def from_predicate(cls, depth_, pred, space, horizon=HORIZON):
        """Ellentuck table of all depth-d sets below the horizon satisfying pred."""
        return cls(depth_, frozenset(t for t in combinations(range(horizon), depth_) if pred(t)), space)


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    level: Optional[int] = None

    ok = False


@dataclass
class RamseyWitness:
    H: object
    side: str
    base: tuple
    verified_depth: int
    horizon: int = HORIZON
    checked: int = 0  # extensions enumerated during verification
    passes: list = field(default_factory=list)

    ok = True

    def to_dict(self):
        sp = self.H.space
        return {"H": self.H.spec, "side": self.side, "base": sp.encode(self.base),
                "verified_depth": self.verified_depth, "horizon": self.horizon,
                "prefix": sp.encode(approx(self.H, len(self.base) + 8))}


def clopen_member(X: ClopenSet, A) -> bool:
    return approx(A, X.depth) in X.accept


def s_b_q_member(Q: ClopenSet, b, D, element_bound: int = HORIZON):
    """Is D in S_b^Q: [b, D] nonempty and inside Q (within the horizon)?"""
    b = tuple(b)
    if len(b) > Q.depth:
        raise UsageError(f"|b| = {len(b)} exceeds the clopen depth {Q.depth}")
    if not D.space.open_nonempty(b, D):
        return NO
    ext = enum_extensions(BasicOpen(b, D), Q.depth, element_bound)
    if any(t not in Q.accept for t in ext):
        return NO
    if not ext:
        return Unknown(element_bound)
    return YES


def verify_side(X: ClopenSet, a, H, side: str, horizon: int = HORIZON):
    """(ok, count): are all extensions of a in H to X.depth on ``side``?"""
    ext = enum_extensions(BasicOpen(tuple(a), H), X.depth, horizon)
    want = side == IN
    return all((t in X.accept) == want for t in ext), len(ext)


# -------------------------------------------------------- ramsey witnesses

def _envelope(space, kept, B, horizon):
    """``kept`` followed by the elements of B at or beyond the horizon."""
    return Prefix(space, tuple(kept), Cut(space, horizon - 1, B)) if kept else Cut(space, horizon - 1, B)


def _end_homogenize(a, atoms, colour, length, B, horizon, budget, log, prefer=None):
    """One level pass: thin ``atoms`` so colour(b + (y,)) depends only on b.

    ``colour`` maps approximations of size ``length`` to True/False, or None
    where undefined (such entries are kept on either side).  Every pick is
    pushed onto a fusion sequence so the pass is a genuine fusion.
    """
    space = B.space
    chosen, rest = [], list(atoms)
    seq = FusionSequence(bound=4)
    seq = push(seq, len(a), _envelope(space, a + tuple(rest), B, horizon))

    def split(b):
        nonlocal rest
        budget[0] -= 1
        if budget[0] < 0:
            raise Exhausted("pigeonhole budget exhausted", None)
        ins, outs, free = [], [], []
        for y in rest:
            c = colour(b + (y,))
            (free if c is None else ins if c else outs).append(y)
        if prefer is not None and (ins if prefer == IN else outs):
            keep = ins if prefer == IN else outs
        elif len(ins) != len(outs):
            keep = ins if len(ins) > len(outs) else outs
        else:  # tie: the class holding the least element, Out when both are empty
            keep = ins if ins and (not outs or ins[0] < outs[0]) else outs
        keep_set = set(keep) | set(free)
        rest = [y for y in rest if y in keep_set]

    need = length - 1 - len(a)  # chosen elements in each b
    if need == 0:
        split(a)
    while rest:
        x = rest.pop(0)
        chosen.append(x)
        if need >= 1:
            for mid in combinations(chosen[:-1], need - 1):
                split(a + mid + (x,))
        seq = push(seq, len(a) + len(chosen), _envelope(space, a + tuple(chosen) + tuple(rest), B, horizon))
    log.append(seq)
    return chosen


def ramsey_witness(space, open_: BasicOpen, X: ClopenSet, budget: int = 200_000,
                   horizon: int = HORIZON, prefer: Optional[str] = None, min_keep: int = 0):
    """Find H in [a, B] with [a, H] inside X or disjoint from X (within the horizon).

    Each pigeonhole keeps the larger colour class (ties: the class holding the
    least element).  With ``prefer`` set, the preferred class is kept whenever
    it is nonempty.  ``min_keep`` asks for at least that many elements of H
    below the horizon beyond a.
    """
    a, B = tuple(open_.base), open_.envelope
    if B.space is not space:
        raise UsageError("open set belongs to another space")
    if len(a) > X.depth:
        raise UsageError(f"|a| = {len(a)} exceeds the clopen depth {X.depth}")
    if depth_exact(B, a) is None or not space.open_nonempty(a, B):
        raise UsageError("[a, B] is empty")
    if X.depth == len(a):
        side = IN if a in X.accept else OUT
        return RamseyWitness(B, side, a, X.depth, horizon)
    if not all(type(x) is int for x in B.prefix(1)):
        raise UsageError("ramsey_witness works on single-element extensions (Ellentuck instance)")

    floor = max(a) if a else -1
    atoms = []
    for x in B.elements_above(floor):
        if x >= horizon:
            break
        atoms.append(x)
    if len(atoms) < X.depth - len(a):
        return Inconclusive("too few elements below the horizon", len(a))

    # colour of length-L approximations; level d reads the table, lower
    # levels look one element ahead in the thinned set
    def table_colour(t):
        return t in X.accept

    colour, kept, log, left = table_colour, atoms, [], [budget]
    try:
        for length in range(X.depth, len(a), -1):
            kept = _end_homogenize(a, kept, colour, length, B, horizon, left, log, prefer)
            if length > len(a) + 1:
                colour = _lookahead(colour, kept)
    except Exhausted:
        return Inconclusive("pigeonhole budget exhausted", len(a))
    if len(kept) < max(X.depth - len(a), min_keep):
        return Inconclusive("thinned set too small", len(a))

    side = IN if colour(a + (kept[0],)) else OUT
    H = Prefix(space, a + tuple(kept), Cut(space, horizon - 1, B))
    if not in_open(H, a, B, X.depth + 2).yes:
        return Inconclusive("could not certify H inside [a, B]", len(a))
    ok, n = verify_side(X, a, H, side, horizon)
    if not ok:  # pragma: no cover - would be a bug in the passes
        return Inconclusive("side failed verification", X.depth)
    return RamseyWitness(H, side, a, X.depth, horizon, n, log)


def _lookahead(colour, kept):
    """Colour b by its extension with the next kept element above max(b)."""
    order = sorted(kept)

    def c(b):
        top = b[-1] if b else -1
        for y in order:
            if y > top:
                return colour(b + (y,))
        return None

    return c


def refine_partition(space, open_: BasicOpen, pieces, budget=200_000, horizon=HORIZON):
    """Sequentially find the piece whose witness comes out In.

    Runs piece 1 on [a, B]; on Out reruns piece 2 inside the new H, and so
    on.  Returns (index, witness, trail); index is None when no piece came
    out In (possible only if the pieces do not cover everything).
    """
    a, env = tuple(open_.base), open_.envelope
    trail = []
    for i, P in enumerate(pieces):
        w = ramsey_witness(space, BasicOpen(a, env), P, budget, horizon)
        trail.append(w)
        if not w.ok:
            return None, w, trail
        if w.side == IN:
            return i, w, trail
        env = w.H
    return None, trail[-1] if trail else None, trail


# ------------------------------------------------------------ small lemma

SMALL_LEMMA_BUDGET = 48


def _strong_members(d, B, A, m, budget, element_bound):
    """Sampled members of <d,B>^m_A: c followed by family variants of B above c."""
    space = B.space
    out = []
    for c in amalgam_enum(d, B, A, m, element_bound):
        for X in space.family([space.cut(B, c)], 12):
            if len(out) >= budget:
                return out
            out.append(space.graft(c, X))
    return out


def _check_small_lemma_pre(b, d, m, A):
    b, d = tuple(b), tuple(d)
    space = A.space
    db, dd = depth_exact(A, b), depth_exact(A, d)
    if db is None or dd is None or not db <= dd <= m:
        raise UsageError("small lemma needs depth_A(b) <= depth_A(d) <= m")
    if not space.le_fin(b, d):
        raise UsageError("small lemma needs b <=_fin d")
    return b, d


def small_lemma_witness(Q: ClopenSet, b, d, m: int, A, budget: int = SMALL_LEMMA_BUDGET,
                        element_bound: int = HORIZON):
    """B in [m, A] with <d,B>^m_A inside S_b^Q or disjoint from it.

    Returns (B, "Inside" | "Disjoint") or Inconclusive.  Disjoint means none of
    the sampled members of <d,A>^m_A was found in S_b^Q.
    """
    b, d = _check_small_lemma_pre(b, d, m, A)
    space = A.space
    members = _strong_members(d, A, A, m, budget, element_bound)
    if not members:
        return Inconclusive("no member of <d,A>^m_A below the horizon", m)
    verdicts = [(D, s_b_q_member(Q, b, D, element_bound)) for D in members]
    C = next((D for D, v in verdicts if v.yes), None)
    if C is None:
        if all(v.no for _, v in verdicts):
            return A, "Disjoint"
        return Inconclusive("sampled members undecided within the horizon", m)
    bound = m + len(d) + 2
    top = space.approx(A, m)
    for B in (A, space.graft(top, space.cut(C, top))):
        if in_open(B, top, A, bound).yes and space.strong_included(d, B, C, A, m, bound).yes:
            return B, "Inside"
    return Inconclusive("no amalgamation candidate certified", m)


def replay_small_lemma(Q, b, d, m, A, B, side, budget=SMALL_LEMMA_BUDGET, element_bound=HORIZON):
    """Sampled members of <d,B>^m_A whose S_b^Q verdict contradicts ``side``."""
    bad = []
    for D in _strong_members(tuple(d), B, A, m, budget, element_bound):
        v = s_b_q_member(Q, b, D, element_bound)
        if (side == "Inside" and v.no) or (side == "Disjoint" and v.yes):
            bad.append(D.spec)
    return bad


# ------------------------------------------------------------- matet run

@dataclass
class MatetResult:
    index: int
    inner: BasicOpen
    stage1: FusionSequence
    E: object
    ok = True

    def to_dict(self):
        sp = self.inner.envelope.space
        return {"index": self.index, "c": sp.encode(self.inner.base), "C": self.inner.envelope.spec,
                "E": self.E.spec, "stage1_steps": len(self.stage1)}


def _inside(Q, a, X, horizon):
    """[a, X] inside Q, judged on the extensions below the horizon."""
    if len(a) >= Q.depth:
        return tuple(a[:Q.depth]) in Q.accept
    ext = enum_extensions(BasicOpen(tuple(a), X), Q.depth, horizon)
    return bool(ext) and all(t in Q.accept for t in ext)


def matet_run(Qs, open_: BasicOpen, budget: int = SMALL_LEMMA_BUDGET, horizon: int = 32):
    """Find i and a nonempty [c, C] inside [a, A] no nonempty part of which lies in Q_i."""
    a, A = tuple(open_.base), open_.envelope
    space = A.space
    if not Qs:
        raise UsageError("matet_run needs at least one clopen set")
    if depth_exact(A, a) is None or not space.open_nonempty(a, A):
        raise UsageError("[a, A] is empty")
    if space.approx(A, len(a)) != a:
        A = space.graft(a, space.cut(A, a))  # so that a is an initial part of A
    family = [X for X in space.family([A], budget) if in_open(X, a, A, len(a) + 2).yes]
    for X in family:
        if all(_inside(Q, a, X, horizon) for Q in Qs):
            raise UsageError(f"precondition fails: [a, {X.spec}] lies inside every Q_i")

    # stage 1: fusion deciding S_b^{Q_i} along the way
    seq = FusionSequence(bound=4)
    seq = push(seq, len(a), A)
    Ak = A
    for k in range(len(Qs)):
        n_k = len(a) + k
        top = space.approx(Ak, n_k)
        extra = top[len(a):]
        X = Ak
        for r in range(len(extra) + 1):
            for S in combinations(extra, r):
                dd = a + S
                for r2 in range(len(S) + 1):
                    for S2 in combinations(S, r2):
                        bb = a + S2
                        for i in range(k + 1):
                            if len(bb) > Qs[i].depth:
                                continue
                            got = small_lemma_witness(Qs[i], bb, dd, n_k, X, budget, horizon)
                            if not isinstance(got, tuple):
                                return Inconclusive(f"stage 1: {got.reason}", n_k)
                            X = got[0]
        try:
            seq = push(seq, n_k + 1, X)
        except StepRejected as e:
            return Inconclusive(f"stage 1 fusion step rejected ({e.clause})", n_k)
        Ak = X
    B = Ak

    # pick the least i with some E in [a, B] outside Q_i
    cands = [X for X in space.family([B], budget) if in_open(X, a, B, len(a) + 2).yes]
    pick = None
    for i, Q in enumerate(Qs):
        for E in cands:
            if not clopen_member(Q, E):
                pick = (i, E)
                break
        if pick:
            break
    if pick is None:
        return Inconclusive("no sampled E in [a, B] escapes any Q_i", None)
    i, E = pick
    Q = Qs[i]
    n_i = len(a) + i
    ell = len(a)
    while depth(B, space.approx(E, ell + 1), n_i).finite:
        ell += 1
    c = space.approx(E, ell)

    # stage 2: thin E above c so no one-step extension lands in T_b
    def in_T(q):
        return _inside(Q, q, E, horizon)

    rest = []
    for x in E.elements_above(max(c) if c else -1):
        if x >= horizon:
            break
        rest.append(x)
    chosen = []

    def avoid(b):
        nonlocal rest
        if len(b) < Q.depth:
            rest = [y for y in rest if not in_T(b + (y,))]

    original = list(rest)
    avoid(c)
    while rest:
        x = rest.pop(0)
        chosen.append(x)
        for r in range(max(0, Q.depth - len(c))):
            for S in combinations(chosen[:-1], r):
                avoid(c + S + (x,))
    if chosen == original:  # nothing had to go
        C = E
    else:
        C = Prefix(space, c + tuple(chosen), Cut(space, horizon - 1, E))
    if not in_open(C, c, E, len(c) + 2).yes:
        return Inconclusive("could not certify C inside [c, E]", len(c))
    return MatetResult(i, BasicOpen(c, C), seq, E)


def matet_replay(Qs, result: MatetResult, horizon: int = 32, budget: int = 12):
    """Brute-force check: every sampled nonempty [d, D] inside [c, C] escapes Q_i.

    Returns (violations, checked, unwitnessed).  A sub-open with no extension
    below the horizon is counted as unwitnessed, not as a violation.
    """
    Q = Qs[result.index]
    c, C = tuple(result.inner.base), result.inner.envelope
    space = C.space
    pool = []
    for x in C.elements_above(max(c) if c else -1):
        if x >= horizon:
            break
        pool.append(x)
    violations, checked, unwitnessed = [], 0, 0
    for r in range(max(0, Q.depth - len(c)) + 1):
        for S in combinations(pool, r):
            d = c + S
            for X in space.family([space.cut(C, d)], budget):
                D = space.graft(d, X)
                if not space.open_nonempty(d, D) or not le_bounded(D, C, len(d) + 2).yes:
                    continue
                checked += 1
                if len(d) >= Q.depth:
                    if tuple(d[:Q.depth]) in Q.accept:
                        violations.append((d, D.spec))
                    continue
                ext = enum_extensions(BasicOpen(d, D), Q.depth, horizon)
                if not ext:
                    unwitnessed += 1
                elif all(t in Q.accept for t in ext):
                    violations.append((d, D.spec))
    return violations, checked, unwitnessed
