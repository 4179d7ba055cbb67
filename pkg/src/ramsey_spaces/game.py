"""Kastanas games: a rule-checking referee, strategies, and witness compilers.

Player I plays objects, player II plays basic opens [a, B] that grow the
approximation by one step per round.  Strategies are plain callables
``strategy(config, transcript, rng) -> Move``; the referee never trusts them,
so an illegal proposal ends the game as a forfeit instead of raising.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import (
    BasicOpen, Cut, Every, Exhausted, Filter, InvalidInput, UsageError, depth, depth_exact,
    enum_extensions, in_open, is_initial_segment, le_bounded,
)
from .ellentuck import ELLENTUCK, diagonalize
from .fusion import FusionSequence, StepRejected, push
from .homogenizer import HORIZON, IN, OUT, ClopenSet, Inconclusive, ramsey_witness
from .milliken import MILLIKEN
from .objspec import parse_object, predicate

SPACES = {"ellentuck": ELLENTUCK, "milliken": MILLIKEN}

# rule id -> the rule as the referee states it
RULES = {
    "turn": "turn: moves alternate and player I opens",
    "i": "(i) A_{k+1} ∈ [a_k, B_k]",
    "ii": "(ii) a_k ⊏ a_{k+1}",
    "iii": "(iii) |a_{k+1}| = |a_k| + 1",
    "iv": "(iv) B_{k+1} ∈ [a_{k+1}, A_{k+1}]",
    "malformed": "the move could not be built or read",
    "i-classical": "M_0 ⊆ N/s",
    "ii-classical": "n_k ∈ M_k",
    "iii-classical": "N_k ⊆ M_k/{n_k}",
    "iv-classical": "M_{k+1} ⊆ N_k",
}


def space_named(name):
    try:
        return SPACES[name]
    except KeyError:
        raise UsageError(f"unknown space {name!r} (choose from {', '.join(SPACES)})") from None


# ------------------------------------------------------------------ payoffs

@dataclass(frozen=True)
class Decider:
    """A payoff given by a pure test on r_depth of the play."""
    name: str
    depth: int
    test: Callable

    def __contains__(self, t):
        return bool(self.test(tuple(t)))


DECIDERS = {
    "min-even": Decider("min-even", 1, lambda t: t[0] % 2 == 0),
    "min-odd": Decider("min-odd", 1, lambda t: t[0] % 2 == 1),
    "total": Decider("total", 0, lambda t: True),
    "empty": Decider("empty", 0, lambda t: False),
}


def register_decider(name, depth_, test):
    DECIDERS[name] = Decider(name, depth_, test)


def payoff_to_dict(payoff):
    if isinstance(payoff, Decider):
        return {"decider": payoff.name}
    return payoff.to_dict()


def payoff_from_dict(data, space):
    if isinstance(data, dict) and "decider" in data:
        name = data["decider"]
        if name not in DECIDERS:
            raise UsageError(f"payoff.decider: unknown decider {name!r}")
        return DECIDERS[name]
    return ClopenSet.from_dict(data, space)


# ------------------------------------------------------------------- moves

@dataclass(frozen=True)
class PlayerI:
    A: object
    player = "I"

    def to_dict(self):
        return {"object": self.A.spec}


@dataclass(frozen=True)
class PlayerII:
    a: tuple
    B: object
    player = "II"

    def to_dict(self):
        return {"a": self.B.space.encode(self.a), "object": self.B.spec}


def move_from_dict(player, data, space):
    if not isinstance(data, dict) or "object" not in data:
        raise UsageError("move: expected an object with field 'object'")
    obj = parse_object(data["object"], space=space)
    if player == "I":
        return PlayerI(obj)
    if player == "II":
        if "a" not in data:
            raise UsageError("move.a: missing for a player II move")
        return PlayerII(space.decode(data["a"]), obj)
    raise UsageError(f"move.player: expected 'I' or 'II', got {player!r}")


@dataclass(frozen=True)
class Verdict:
    rule: Optional[str] = None  # None when accepted

    @property
    def accepted(self):
        return self.rule is None

    def __str__(self):
        return "accepted" if self.rule is None else f"rejected({self.rule})"

    @classmethod
    def parse(cls, text):
        if text == "accepted":
            return cls()
        if text.startswith("rejected(") and text.endswith(")"):
            return cls(text[len("rejected("):-1])
        raise UsageError(f"verdict: cannot read {text!r}")


ACCEPTED = Verdict()


# ------------------------------------------------------------------ config

@dataclass(frozen=True)
class GameConfig:
    arena: BasicOpen
    payoff: object  # ClopenSet or Decider
    max_rounds: int = 8
    bound: int = 16  # depth bound for the referee's <= checks

    def __post_init__(self):
        a, B = tuple(self.arena.base), self.arena.envelope
        if depth_exact(B, a) is None or not B.space.open_nonempty(a, B):
            raise UsageError("arena [a, B] is empty")
        if self.max_rounds < 0:
            raise UsageError("max_rounds must be a natural number")

    @property
    def space(self):
        return self.arena.space

    def to_dict(self):
        sp = self.space
        return {"space": sp.name,
                "arena": {"a": sp.encode(self.arena.base), "B": self.arena.envelope.spec},
                "payoff": payoff_to_dict(self.payoff), "maxRounds": self.max_rounds,
                "bound": self.bound}

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise UsageError("config: expected an object")
        for key in ("space", "arena", "payoff", "maxRounds"):
            if key not in data:
                raise UsageError(f"config.{key}: missing")
        sp = space_named(data["space"])
        arena = data["arena"]
        if not isinstance(arena, dict) or "a" not in arena or "B" not in arena:
            raise UsageError("config.arena: expected fields 'a' and 'B'")
        if not isinstance(data["maxRounds"], int):
            raise UsageError("config.maxRounds: expected a natural number")
        op = BasicOpen(sp.decode(arena["a"]), parse_object(arena["B"], space=sp))
        return cls(op, payoff_from_dict(data["payoff"], sp), data["maxRounds"], data.get("bound", 16))


# --------------------------------------------------------------- transcript

@dataclass
class MoveRecord:
    player: str
    move: object
    verdict: Verdict

    def to_dict(self):
        return {"player": self.player, "move": self.move.to_dict(), "verdict": str(self.verdict)}


@dataclass
class GameTranscript:
    """Moves played so far plus the referee's running state."""
    config: GameConfig
    seed: int = 0
    moves: list = field(default_factory=list)
    a: tuple = None
    B: object = None   # II's last envelope (B_0 at the start)
    A: object = None   # I's last object
    chain: list = field(default_factory=list)  # a_0, a_1, ...
    outcome: Optional[str] = None
    decided_at_round: Optional[int] = None
    forfeit: Optional[dict] = None

    def __post_init__(self):
        if self.a is None:
            self.a = tuple(self.config.arena.base)
            self.B = self.config.arena.envelope
            self.chain = [self.a]

    @property
    def round(self):
        """Rounds completed (each round is one I move and one II move)."""
        return len(self.chain) - 1

    @property
    def turn(self):
        return "I" if self.A is None or self._ii_moved_last else "II"

    @property
    def _ii_moved_last(self):
        acc = [r for r in self.moves if r.verdict.accepted]
        return not acc or acc[-1].player == "II"

    def copy(self):
        return GameTranscript(self.config, self.seed, list(self.moves), self.a, self.B, self.A,
                              list(self.chain), self.outcome, self.decided_at_round, self.forfeit)

    def play(self, move) -> Verdict:
        """Validate and, if legal, apply a move.  Rejections are recorded too."""
        verdict = validate_move(self.config, self, move)
        self.moves.append(MoveRecord(move.player, move, verdict))
        if not verdict.accepted:
            self.forfeit = {"player": move.player, "rule": verdict.rule, "round": self.round + 1}
            self.outcome = f"Forfeit({move.player})"
            return verdict
        if move.player == "I":
            self.A = move.A
        else:
            self.a, self.B = tuple(move.a), move.B
            self.chain.append(self.a)
        return verdict

    def decide(self):
        """Settle the outcome if the payoff depth has been reached."""
        d = self.config.payoff.depth
        if self.outcome is None and len(self.a) >= d:
            self.outcome = "WinI" if tuple(self.a[:d]) in self.config.payoff else "WinII"
            self.decided_at_round = self.round
        return self.outcome

    def to_dict(self):
        out = {"config": self.config.to_dict(),
               "moves": [m.to_dict() for m in self.moves],
               "outcome": self.outcome, "decidedAtRound": self.decided_at_round,
               "seed": self.seed}
        if self.forfeit is not None:
            out["forfeit"] = self.forfeit
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def validate_move(config: GameConfig, transcript: GameTranscript, move) -> Verdict:
    """Check one proposed move against the rules, in strict bounded mode."""
    t = transcript
    if t.outcome is not None or getattr(move, "player", None) != t.turn:
        return Verdict("turn")
    space = config.space
    bound = config.bound
    try:
        if move.player == "I":
            if move.A.space is not space or not in_open(move.A, t.a, t.B, max(bound, len(t.a))).yes:
                return Verdict("i")
            return ACCEPTED
        new = tuple(move.a)
        try:
            space.check_approx(new)
        except UsageError:
            return Verdict("ii")
        if not (is_initial_segment(t.a, new) and len(new) > len(t.a)):
            return Verdict("ii")
        if len(new) != len(t.a) + 1:
            return Verdict("iii")
        if move.B.space is not space or not in_open(move.B, new, t.A, max(bound, len(new))).yes:
            return Verdict("iv")
        return ACCEPTED
    except Exhausted:
        # the referee could not settle a membership: strict mode rejects
        return Verdict("i" if move.player == "I" else "iv")


def _rng(seed, k, player):
    return random.Random(f"{seed}:{k}:{player}")


def run(config: GameConfig, strat_i, strat_ii, seed: int = 0) -> GameTranscript:
    """Play up to max_rounds rounds; the outcome is settled as soon as it can be."""
    t = GameTranscript(config, seed)
    if t.decide():
        return t
    for k in range(1, config.max_rounds + 1):
        for player, strat in (("I", strat_i), ("II", strat_ii)):
            try:
                move = strat(config, t, _rng(seed, k, player))
            except (UsageError, InvalidInput, Exhausted, EOFError) as e:
                t.forfeit = {"player": player, "rule": "malformed", "round": k, "detail": str(e)}
                t.outcome = f"Forfeit({player})"
                return t
            if not t.play(move).accepted:
                return t
        if t.decide():
            return t
    t.outcome = "Undecided(depth)"
    return t


def replay(data) -> tuple:
    """Re-referee a transcript dict.  Returns (fresh transcript, mismatches)."""
    if not isinstance(data, dict):
        raise UsageError("transcript: expected an object")
    for key in ("config", "moves", "outcome"):
        if key not in data:
            raise UsageError(f"transcript.{key}: missing")
    config = GameConfig.from_dict(data["config"])
    t = GameTranscript(config, data.get("seed", 0))
    mismatches = []
    t.decide()
    for i, rec in enumerate(data["moves"]):
        if not isinstance(rec, dict) or not {"player", "move", "verdict"} <= set(rec):
            raise UsageError(f"transcript.moves[{i}]: needs player, move and verdict")
        move = move_from_dict(rec["player"], rec["move"], config.space)
        v = t.play(move)
        if str(v) != rec["verdict"]:
            mismatches.append({"move": i, "recorded": rec["verdict"], "replayed": str(v)})
        if not v.accepted:
            break
        if move.player == "II":
            t.decide()
    if t.outcome is None:
        t.outcome = "Undecided(depth)"
    if t.outcome != data["outcome"]:
        mismatches.append({"outcome": True, "recorded": data["outcome"], "replayed": t.outcome})
    if t.decided_at_round != data.get("decidedAtRound"):
        mismatches.append({"decidedAtRound": True, "recorded": data.get("decidedAtRound"),
                           "replayed": t.decided_at_round})
    return t, mismatches


# -------------------------------------------------------------- strategies

def _opening_envelope(t):
    sp = t.config.space
    return sp.graft(t.a, sp.cut(t.B, t.a))


def canonical_I(config, t, rng):
    """Play II's last envelope (on the opening move, the arena's)."""
    return PlayerI(_opening_envelope(t) if t.round == 0 else t.B)


def canonical_II(config, t, rng):
    """Take the next element of I's object and keep the object as envelope."""
    sp = config.space
    new = sp.approx(t.A, len(t.a) + 1)
    return PlayerII(new, t.A)


def _thin(space, X, rng):
    # a random parseable subobject of X
    choice = rng.randrange(5)
    if choice == 0:
        return X
    if choice in (1, 2):
        return Every(space, 2, choice - 1, X)
    if choice == 3:
        return Every(space, 3, rng.randrange(3), X)
    return Cut(space, space.hi(X.element(rng.randrange(3))), X)


def random_I(config, t, rng):
    """A random legal object: a thinned copy of II's envelope above a_k."""
    sp = config.space
    env = _opening_envelope(t) if t.round == 0 else t.B
    rest = sp.cut(env, t.a)
    return PlayerI(sp.graft(t.a, _thin(sp, rest, rng)))


def random_II(config, t, rng):
    """One of the next three elements of I's object, with a thinned envelope."""
    sp = config.space
    rest = sp.cut(t.A, t.a)
    x = rest.element(rng.randrange(3))
    new = tuple(t.a) + (x,)
    return PlayerII(new, sp.graft(new, _thin(sp, sp.cut(t.A, new), rng)))


def strategy_I_from_witness(H):
    """Open with H, then play canonically."""
    def strat(config, t, rng):
        if t.round == 0:
            return PlayerI(H)
        return canonical_I(config, t, rng)
    strat.witness = H
    return strat


class WitnessMapStrategy:
    """Player II answering I's first object N with [r_{|a|+1}(w(N)), w(N)].

    ``covered`` records every N the map was asked about, with the spec of the
    answer, so a run can report which of I's objects it actually handled.
    """

    def __init__(self, w):
        self.w = w
        self.covered = {}

    def __call__(self, config, t, rng):
        if t.round == 0:
            N = t.A
            W = self.w(N)
            self.covered[N.spec] = W.spec
            return PlayerII(config.space.approx(W, len(t.a) + 1), W)
        return canonical_II(config, t, rng)


def strategy_II_from_witness_map(w):
    return WitnessMapStrategy(w)


def filter_map(name):
    """w(N) = a followed by the elements of N above a satisfying a named predicate."""
    pred = predicate(name)

    def w(N, a=()):
        sp = N.space
        return sp.graft(a, Filter(sp, pred, sp.cut(N, a), name=name))
    return w


def stdin_strategy(player, read=input, write=print):
    """Moves typed by a person: an object spec for I, '<a>;<spec>' for II.

    A move the referee rejects is not played; the violated rule is printed and
    the prompt repeats.
    """
    def strat(config, t, rng):
        sp = config.space
        while True:
            if player == "I":
                prompt = f"round {t.round + 1}, player I, a = {sp.encode(t.a)}: object spec> "
            else:
                prompt = f"round {t.round + 1}, player II, a = {sp.encode(t.a)}: <a>;<object spec>> "
            line = read(prompt)
            try:
                if player == "I":
                    move = PlayerI(parse_object(line, space=sp))
                else:
                    a_text, sep, spec = line.partition(";")
                    if not sep:
                        raise UsageError("expected '<a>;<object spec>'")
                    move = PlayerII(sp.decode(json.loads(a_text)), parse_object(spec, space=sp))
            except (UsageError, ValueError) as e:
                write(f"could not read the move: {e}")
                continue
            v = validate_move(config, t, move)
            if v.accepted:
                return move
            write(f"rejected by rule {RULES[v.rule]}")
    return strat


def strategy_named(name, player, config):
    """Strategies reachable from the command line."""
    if name == "canonical":
        return canonical_I if player == "I" else canonical_II
    if name == "random":
        return random_I if player == "I" else random_II
    if name == "stdin":
        return stdin_strategy(player)
    if name.startswith("witness:") and player == "I":
        H = parse_object(name[len("witness:"):], space=config.space)
        return strategy_I_from_witness(H)
    if name.startswith("filter:") and player == "II":
        fm = filter_map(name[len("filter:"):])
        a = tuple(config.arena.base)
        return strategy_II_from_witness_map(lambda N: fm(N, a))
    raise UsageError(f"unknown strategy {name!r} for player {player}")


# ------------------------------------------------- clopen determinacy

@dataclass
class SideChoice:
    """Which player the witness search hands a winning strategy to."""
    player: str
    strategy: object
    witness: object = None  # RamseyWitness for I
    note: str = ""


def _search(space, a, B, X, side, min_keep, budget, horizon, restarts):
    """A witness on ``side`` in [a, B], retrying with the first j atoms dropped."""
    floor = space.content_max(a)
    atoms = []
    for x in B.elements_above(floor):
        if x >= horizon or len(atoms) >= restarts:
            break
        atoms.append(x)
    starts = [B] + [space.graft(a, Cut(space, x, B)) for x in atoms[:-1]]
    for start in starts:
        got = ramsey_witness(space, BasicOpen(a, start), X, budget, horizon, prefer=side,
                             min_keep=min_keep)
        if got.ok and got.side == side:
            return got
    return None


def clopen_winner(config: GameConfig, keep_i: int = 12, keep_ii: int = 4, restarts: int = 8,
                  budget: int = 200_000, horizon: int = HORIZON) -> SideChoice:
    """Compile a winning strategy for a clopen payoff from Ramsey witnesses.

    First look for H in the arena with [a, H] inside the payoff, keeping the
    In class at each pigeonhole and restarting past the first few elements.
    If there is one, I opens with H.  Otherwise II answers each object N of I
    with an Out witness inside N.  ``keep_i``/``keep_ii`` are the numbers of
    witness elements below the horizon each side insists on, so that the
    opponent's legal moves stay inside the part that was verified.
    """
    X, arena, sp = config.payoff, config.arena, config.space
    a, B = tuple(arena.base), arena.envelope
    w_in = _search(sp, a, B, X, IN, keep_i, budget, horizon, restarts)
    if w_in is not None:
        return SideChoice("I", strategy_I_from_witness(w_in.H), w_in)

    def w(N):
        got = _search(sp, a, N, X, OUT, keep_ii, budget, horizon, restarts)
        if got is None:
            # no Out witness inside N: hand back N itself (the strategy may lose)
            return sp.graft(a, sp.cut(N, a))
        return got.H

    return SideChoice("II", strategy_II_from_witness_map(w), None, "no In witness found")


# ------------------------------------------------ strategy -> witness

@dataclass
class ExtractedWitness:
    prefix: tuple
    H: object
    fusion: FusionSequence
    replies: int  # strategy calls made

    ok = True

    def to_dict(self):
        sp = self.H.space
        return {"prefix": sp.encode(self.prefix), "replies": self.replies,
                "fusion": json.loads(self.fusion.to_json())}


@dataclass(frozen=True)
class ExtractionFailure(Inconclusive):
    transcript: tuple = ()


def _lines(t):
    return tuple(json.dumps(m.to_dict(), separators=(",", ":")) for m in t.moves)


def extract_witness_from_strategy_I(config: GameConfig, strat, depth_goal: int, budget: int = 64,
                                    seed: int = 0):
    """Turn a strategy for I into a prefix of an object H it can defend.

    Level k fixes a_k = r_{n_k}(A_k) with n_k = |a| + k.  Every b extending a
    with depth_{A_k}(b) = n_k codes one partial run in which II played the
    initial segments of b; the strategy is replayed on each, and its answers
    are amalgamated into the next object of a fusion sequence.  The answer to
    b = a_k becomes A_{k+1}.
    """
    sp = config.space
    a = tuple(config.arena.base)
    if depth_goal < len(a):
        raise UsageError("depth_goal must be at least |a|")
    calls = 0

    t0 = GameTranscript(config, seed)
    first = strat(config, t0, _rng(seed, 1, "I"))
    if not t0.play(first).accepted:
        return ExtractionFailure("strategy forfeits on its opening move", 0, _lines(t0))
    runs = {a: t0}
    A_k = first.A
    fusion = push(FusionSequence(bound=max(8, depth_goal + 2)), len(a), A_k)

    for k in range(1, depth_goal - len(a) + 1):
        n_k = len(a) + k
        a_k = sp.approx(A_k, n_k)
        codes = [b for b in sp.below_fin(a_k)
                 if len(b) > len(a) and is_initial_segment(a, b)
                 and depth(A_k, b, n_k).finite and depth(A_k, b, n_k).m == n_k]
        codes.sort(key=lambda b: (b == a_k, b))
        prev_b, prev_A, C = a_k, A_k, A_k
        for b in codes:
            if calls >= budget:
                return ExtractionFailure("budget exhausted", k)
            # amalgamate: [prev_b, C] inside [prev_b, prev_A], C in [a_k, C_old]
            C_new = sp.graft(a_k, sp.cut(prev_A, a_k))
            if not (in_open(C_new, a_k, C, n_k + 2).yes
                    and le_bounded(sp.cut(C_new, prev_b), prev_A, n_k + 2).yes):
                return ExtractionFailure("amalgamation not certified", k)
            C = C_new
            d = tuple(b[:-1])
            if d not in runs:
                return ExtractionFailure(f"no coded run for {sp.encode(d)}", k)
            t_b = runs[d].copy()
            if not t_b.play(PlayerII(b, sp.graft(b, sp.cut(C, b)))).accepted:
                return ExtractionFailure("coded move for II was not legal", k, _lines(t_b))
            calls += 1
            try:
                reply = strat(config, t_b, _rng(seed, t_b.round + 1, "I"))
            except (UsageError, InvalidInput, Exhausted) as e:
                return ExtractionFailure(f"strategy failed: {e}", k, _lines(t_b))
            if not t_b.play(reply).accepted:
                return ExtractionFailure("strategy forfeits on a coded run", k, _lines(t_b))
            runs[b] = t_b
            prev_b, prev_A = b, reply.A
        try:
            fusion = push(fusion, n_k, prev_A)
        except StepRejected as e:
            return ExtractionFailure(f"fusion step rejected: {e}", k)
        A_k = prev_A
    return ExtractedWitness(sp.approx(A_k, depth_goal), A_k, fusion, calls)


# ------------------------------------------------------------ E_{f,g}

@dataclass
class EfgResult:
    E: object
    prefix: tuple
    certificates: list
    kept: int       # size of the set O of approximations with a usable W entry
    levels: int     # length of the D chain

    @property
    def ok(self):
        return all(c["ok"] for c in self.certificates)

    def to_dict(self):
        return {"prefix": list(self.prefix), "kept": self.kept, "levels": self.levels,
                "certificates": self.certificates}


def default_efg_family(arena: BasicOpen, horizon: int = HORIZON, budget: int = 256):
    """Objects of [a, B]: one starting with each one-step extension, plus cheap variants."""
    a, B = tuple(arena.base), arena.envelope
    sp = B.space
    out = []
    for p in enum_extensions(arena, len(a) + 1, horizon):
        out.append(sp.graft(p, sp.cut(B, p)))
    for X in sp.family([sp.graft(a, sp.cut(B, a))], budget):
        out.append(X)
    return out


def _containment(q, E, G, horizon, extra=2):
    """Extensions of q in E (up to |q|+extra, below the horizon) that are missing from G."""
    missing, checked = [], 0
    for L in range(len(q) + 1, len(q) + extra + 1):
        have = set(enum_extensions(BasicOpen(q, G), L, horizon))
        for c in enum_extensions(BasicOpen(q, E), L, horizon):
            checked += 1
            if c not in have:
                missing.append(c)
    return missing, checked


def e_fg_construct(arena: BasicOpen, f, g, witness_family=None, budget: int = 256,
                   horizon: int = HORIZON):
    """Build E in [a, B] such that every one-step q of [a, E] has an A with
    f(A) = q and [q, E] inside [q, g(A)], with a certificate per q.

    Steps: tables W_p of the values g(A) with f(A) = p; for each level n a
    pass over the p of depth |a| + n that shrinks D whenever some W_p entry
    fits inside the current D; diagonalization of the D chain; a pigeonhole
    on the set O of p that found an entry; certificates checked by
    enumerating extensions below the horizon.
    """
    from .axioms import check_a4

    a, B = tuple(arena.base), arena.envelope
    sp = B.space
    if sp is not ELLENTUCK:
        raise UsageError("e_fg_construct diagonalizes on the Ellentuck instance")
    base = depth_exact(B, a)
    if base is None or not sp.open_nonempty(a, B):
        raise UsageError("arena [a, B] is empty")
    fam = default_efg_family(arena, horizon, budget) if witness_family is None else list(witness_family)
    bound = len(a) + 4

    tables = {}
    for A in fam[:budget]:
        try:
            if not in_open(A, a, B, bound).yes:
                continue
            p = tuple(f(A))
            G = g(A)
            if not (len(p) == len(a) + 1 and is_initial_segment(a, p) and in_open(G, p, A, bound).yes):
                raise UsageError(f"f/g hypotheses fail on {A.spec}")
        except Exhausted:
            continue
        tables.setdefault(p, []).append((A, G))
    if not tables:
        return Inconclusive("W-tables")

    ones = enum_extensions(BasicOpen(a, B), len(a) + 1, horizon)
    levels = {}
    for p in ones:
        levels.setdefault(depth_exact(B, p) - base, []).append(p)
    top = max(levels) if levels else 0

    chain = [sp.graft(a, sp.cut(B, a))]
    chosen = {}
    for n in range(1, top + 1):
        D = chain[-1]
        for p in levels.get(n, []):
            for A, G in tables.get(p, []):
                if in_open(G, a, D, bound).yes:
                    D = G
                    chosen[p] = (A, G)
                    break
        chain.append(D)

    def link(n):
        return chain[min(n, len(chain) - 1)]

    try:
        D_inf = diagonalize(a, B, link, bound)
    except InvalidInput as e:
        return Inconclusive(f"diagonalize: {e}")

    # beyond the chain nothing was decided; those q are never certified
    def in_O(p):
        d = depth_exact(B, p)
        return p in chosen if d is not None and d - base <= top else True

    rep = check_a4(sp, a, D_inf, in_O, budget, horizon)
    if not rep.ok:
        return Inconclusive("pigeonhole on O")
    if rep.witness["side"] != "in":
        return Inconclusive("pigeonhole on O landed outside O")
    E = rep.witness_object

    certs = []
    for q in enum_extensions(BasicOpen(a, E), len(a) + 1, horizon):
        entry = chosen.get(q)
        if entry is None:
            certs.append({"q": list(q), "ok": False, "reason": "no A recorded for q"})
            continue
        A, G = entry
        missing, checked = _containment(q, E, G, horizon)
        nonempty = sp.open_nonempty(q, E)
        certs.append({"q": list(q), "A": A.spec, "gA": G.spec, "checked": checked,
                      "ok": tuple(f(A)) == q and not missing and nonempty})
    return EfgResult(E, E.prefix(len(a) + 8), certs, len(chosen), len(chain))


# ------------------------------------------------------- classical game

@dataclass(frozen=True)
class ClassicalI:
    M: object
    player = "I"


@dataclass(frozen=True)
class ClassicalII:
    n: int
    N: object
    player = "II"


def classical_game(payoff, N, s=(), max_rounds: int = 8, bound: int = 16) -> GameConfig:
    """The abstract game equivalent to the classical one on (payoff, N, s)."""
    s = tuple(s)
    sp = N.space
    if sp is not ELLENTUCK:
        raise UsageError("the classical game lives on the Ellentuck instance")
    if any(not N.contains(x) for x in s):
        raise UsageError("s must be a subset of N")
    return GameConfig(BasicOpen(s, sp.graft(s, sp.cut(N, s))), payoff, max_rounds, bound)


class ClassicalReferee:
    """Checks the classical rules directly and mirrors every move into the
    abstract game, so both referees can be compared move by move."""

    def __init__(self, payoff, N, s=(), max_rounds=8, bound=16, seed=0):
        self.s = tuple(s)
        self.N0 = N
        self.config = classical_game(payoff, N, s, max_rounds, bound)
        self.abstract = GameTranscript(self.config, seed)
        self.picks = []   # n_1, n_2, ...
        self.M = None     # I's last set
        self.Nk = None    # II's last set
        self.log = []     # (move, classical verdict, abstract verdict)
        self.outcome = None

    @property
    def a(self):
        return self.s + tuple(self.picks)

    def check(self, move) -> Verdict:
        sp, bound = ELLENTUCK, self.config.bound
        if move.player == "I":
            if self.Nk is None:
                ok = le_bounded(move.M, sp.cut(self.N0, self.s), bound).yes
                return ACCEPTED if ok else Verdict("i-classical")
            return ACCEPTED if le_bounded(move.M, self.Nk, bound).yes else Verdict("iv-classical")
        if not self.M.contains(move.n):
            return Verdict("ii-classical")
        if not le_bounded(move.N, Cut(sp, move.n, self.M), bound).yes:
            return Verdict("iii-classical")
        return ACCEPTED

    def to_abstract(self, move):
        sp = ELLENTUCK
        a = self.a
        if move.player == "I":
            low = [x for x in move.M.prefix(len(a) + 1) if a and x <= max(a)]
            return PlayerI(sp.graft(tuple(sorted(set(a) | set(low))), move.M))
        new = a + (move.n,)
        return PlayerII(new, sp.graft(new, move.N) if new == tuple(sorted(set(new))) else move.N)

    def play(self, move):
        verdict = self.check(move)
        mirrored = self.abstract.play(self.to_abstract(move))
        self.log.append((move, verdict, mirrored))
        if verdict.accepted:
            if move.player == "I":
                self.M = move.M
            else:
                self.picks.append(move.n)
                self.Nk = move.N
        else:
            self.outcome = f"Forfeit({move.player})"
        return verdict, mirrored

    def decide(self):
        d = self.config.payoff.depth
        if self.outcome is None and len(self.a) >= d:
            self.outcome = "WinI" if self.N_infinity()[:d] in self.config.payoff else "WinII"
        self.abstract.decide()
        return self.outcome

    def N_infinity(self):
        """s together with II's picks, in increasing order."""
        return tuple(sorted(set(self.s) | set(self.picks)))


def random_classical_I(ref, rng):
    sp = ELLENTUCK
    src = sp.cut(ref.N0, ref.s) if ref.Nk is None else ref.Nk
    return ClassicalI(_thin(sp, src, rng))


def random_classical_II(ref, rng):
    sp = ELLENTUCK
    n = ref.M.element(rng.randrange(3))
    return ClassicalII(n, _thin(sp, Cut(sp, n, ref.M), rng))


def run_classical(payoff, N, s, strat_i, strat_ii, max_rounds=4, seed=0) -> ClassicalReferee:
    """Play the classical game, mirroring each move to the abstract referee."""
    ref = ClassicalReferee(payoff, N, s, max_rounds, seed=seed)
    if ref.decide():
        return ref
    for k in range(1, max_rounds + 1):
        for player, strat in (("I", strat_i), ("II", strat_ii)):
            verdict, _ = ref.play(strat(ref, _rng(seed, k, player)))
            if not verdict.accepted:
                return ref
        if ref.decide():
            return ref
    ref.outcome = "Undecided(depth)"
    if ref.abstract.outcome is None:
        ref.abstract.outcome = "Undecided(depth)"
    return ref
