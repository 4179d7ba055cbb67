"""Parser for the object-spec mini-language (grammar in README.md)."""
from __future__ import annotations

import json
import math
import re

from .core import Arith, Cut, Every, Filter, PredStream, Prefix, UsageError

PREDICATES = {
    "even": lambda n: n % 2 == 0,
    "odd": lambda n: n % 2 == 1,
    "squares": lambda n: math.isqrt(n) ** 2 == n,
    "pow2": lambda n: n > 0 and n & (n - 1) == 0,
    "triangular": lambda n: math.isqrt(8 * n + 1) ** 2 == 8 * n + 1,
    "primes": lambda n: n > 1 and all(n % p for p in range(2, math.isqrt(n) + 1)),
}

_MOD = re.compile(r"mod(\d+)r(\d+)$")


def register_predicate(name, pred):
    """Register a pure predicate on naturals for ``pred:`` and ``filter:``.

    The predicate must hold for infinitely many naturals.
    """
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        raise UsageError(f"bad predicate name {name!r}")
    PREDICATES[name] = pred


def predicate(name):
    if name in PREDICATES:
        return PREDICATES[name]
    m = _MOD.match(name)
    if m:  # modKrR: residue R modulo K
        k, r = int(m.group(1)), int(m.group(2))
        if k >= 1 and r < k:
            return lambda n: n % k == r
    raise UsageError(f"unknown predicate {name!r}")


def _int(text, what):
    if not re.fullmatch(r"\d+", text):
        raise UsageError(f"{what}: expected a natural number, got {text!r}")
    return int(text)


def _split_list(text, what):
    """Split '[...]+rest' into the decoded list and 'rest'."""
    try:
        value, end = json.JSONDecoder().raw_decode(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{what}: bad list ({e.msg})") from None
    if not isinstance(value, list) or text[end:end + 1] != "+":
        raise UsageError(f"{what}: expected '[...]+<spec>'")
    return value, text[end + 1:]


def parse_object(spec: str, space=None):
    """Build an object from its spec string.

    ``blocks:``-prefixed specs give block-space objects; everything else is an
    Ellentuck object.
    """
    from .ellentuck import ELLENTUCK
    from .milliken import MILLIKEN, parse_blocks
    spec = spec.strip()
    if spec.startswith("blocks:"):
        return parse_blocks(spec[len("blocks:"):], space or MILLIKEN)
    return _parse_sets(spec, space or ELLENTUCK)


def _parse_sets(spec, space):
    head, _, rest = spec.partition(":")
    if spec == "naturals":
        return Arith(space, 0, 1)
    if spec == "evens":
        return Arith(space, 0, 2)
    if spec == "odds":
        return Arith(space, 1, 2)
    if head == "arith":
        start, _, step = rest.partition(":")
        return Arith(space, _int(start, "arith start"), _int(step, "arith step"))
    if head == "tail":
        return Arith(space, _int(rest, "tail"), 1)
    if head == "pred":
        return PredStream(space, rest, predicate(rest))
    if head == "prefix":
        items, tail = _split_list(rest, "prefix")
        if not all(isinstance(x, int) and x >= 0 for x in items):
            raise UsageError("prefix: entries must be naturals")
        if list(items) != sorted(set(items)):
            raise UsageError("prefix: entries must be strictly increasing")
        tail_obj = _parse_sets(tail, space)
        return Prefix(space, tuple(items), tail_obj) if items else tail_obj
    if head == "cut":
        floor, _, tail = rest.partition(":")
        return Cut(space, _int(floor, "cut"), _parse_sets(tail, space))
    if head == "every":
        k, _, rest2 = rest.partition(":")
        off, _, tail = rest2.partition(":")
        k, off = _int(k, "every step"), _int(off, "every offset")
        if k < 1 or off >= k:
            raise UsageError("every: need k >= 1 and offset < k")
        return Every(space, k, off, _parse_sets(tail, space))
    if head == "filter":
        name, _, tail = rest.partition(":")
        return Filter(space, predicate(name), _parse_sets(tail, space), name=name)
    raise UsageError(f"unrecognised object spec {spec!r}")
