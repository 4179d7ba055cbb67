"""Objects, approximations and the depth/enumeration calculus.

An approximation is a plain tuple: a tuple of ints for the Ellentuck space,
a tuple of blocks (sorted int tuples) for the block space.  Infinite objects
are lazily generated streams described by small expression nodes, so that
``A <= B`` can be certified structurally instead of by inspecting the whole
stream.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

# how many parent elements a filtering stream may skip before giving up
SCAN_LIMIT = 200_000


class UsageError(ValueError):
    """A caller broke a documented precondition."""


class InvalidInput(ValueError):
    """A supplied object or chain is not what the operation requires."""


class Exhausted(RuntimeError):
    """A bounded search ran past its horizon."""

    def __init__(self, message, horizon=None):
        super().__init__(message)
        self.horizon = horizon


# ---------------------------------------------------------------- results

@dataclass(frozen=True)
class Trilean:
    value: str  # "yes" | "no" | "unknown"
    bound: Optional[int] = None

    @property
    def yes(self):
        return self.value == "yes"

    @property
    def no(self):
        return self.value == "no"

    @property
    def unknown(self):
        return self.value == "unknown"

    def __repr__(self):
        if self.unknown:
            return f"Unknown({self.bound})"
        return "Yes" if self.yes else "No"


YES = Trilean("yes")
NO = Trilean("no")


def Unknown(bound):
    return Trilean("unknown", bound)


@dataclass(frozen=True)
class Finite:
    m: int
    finite = True

    def __int__(self):
        return self.m


@dataclass(frozen=True)
class NotWithin:
    bound: int
    finite = False


DepthResult = Finite | NotWithin


@dataclass(frozen=True)
class BasicOpen:
    """The basic open set [base, envelope]."""
    base: tuple
    envelope: "SpaceObject"

    @property
    def space(self):
        return self.envelope.space


# ---------------------------------------------------------------- objects

class SpaceObject:
    """A lazily generated infinite object.

    Subclasses implement ``_generate`` (the element stream, strictly increasing
    in the space's order) and ``inner`` (the spec text without namespace).
    Elements are memoized on first use; nothing else is ever mutated.
    """

    def __init__(self, space):
        self.space = space
        self._cache: list = []
        self._gen: Optional[Iterator] = None

    # stream access
    def _generate(self) -> Iterator:
        raise NotImplementedError

    def element(self, i: int):
        cache = self._cache
        if i < len(cache):
            return cache[i]
        if self._gen is None:
            # fresh generator, or one rebuilt after an earlier failure
            self._gen = self._generate()
            for _ in range(len(cache)):
                next(self._gen)
        try:
            while len(cache) <= i:
                cache.append(next(self._gen))
        except BaseException:
            self._gen = None
            raise
        return cache[i]

    def prefix(self, n: int) -> tuple:
        if n > 0:
            self.element(n - 1)
        return tuple(self._cache[:n])

    def elements(self) -> Iterator:
        i = 0
        while True:
            yield self.element(i)
            i += 1

    def elements_above(self, m) -> Iterator:
        lo = self.space.lo
        # skip the memoized part by bisection; elements increase in lo
        i = bisect_right(self._cache, m, key=lo)
        while True:
            x = self.element(i)
            if lo(x) > m:
                yield x
            i += 1

    def contains(self, x) -> bool:
        """Is ``x`` one of the stream's elements (exact, by scanning)."""
        lo, hi = self.space.lo, self.space.hi
        for y in self.elements():
            if y == x:
                return True
            if lo(y) > hi(x) or hi(y) >= hi(x):
                return False
        return False  # pragma: no cover

    # description
    @property
    def inner(self) -> str:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        return self.space.spec_prefix + self.inner

    @property
    def parseable(self) -> bool:
        return True

    def __repr__(self):
        return self.spec


class Arith(SpaceObject):
    """start, start+step, start+2*step, ... (ints)."""

    def __init__(self, space, start: int, step: int):
        if start < 0 or step < 1:
            raise UsageError("arith needs start >= 0 and step >= 1")
        super().__init__(space)
        self.start, self.step = start, step

    def _generate(self):
        x = self.start
        while True:
            yield x
            x += self.step

    def element(self, i):
        return self.start + i * self.step

    def prefix(self, n):
        return tuple(self.start + i * self.step for i in range(n))

    def contains(self, x):
        return x >= self.start and (x - self.start) % self.step == 0

    def elements_above(self, m):
        x = self.first_above(m)
        while True:
            yield x
            x += self.step

    def index_of(self, x):
        return (x - self.start) // self.step

    def first_above(self, m):
        if m < self.start:
            return self.start
        k = (m - self.start) // self.step + 1
        return self.start + k * self.step

    @property
    def inner(self):
        s, d = self.start, self.step
        if (s, d) == (0, 1):
            return "naturals"
        if (s, d) == (0, 2):
            return "evens"
        if (s, d) == (1, 2):
            return "odds"
        if d == 1:
            return f"tail:{s}"
        return f"arith:{s}:{d}"


class PredStream(SpaceObject):
    """All naturals satisfying a registered predicate."""

    def __init__(self, space, name: str, pred: Callable[[int], bool]):
        super().__init__(space)
        self.name, self.pred = name, pred

    def _generate(self):
        x, misses = 0, 0
        while True:
            if self.pred(x):
                misses = 0
                yield x
            else:
                misses += 1
                if misses > SCAN_LIMIT:
                    raise Exhausted(f"pred:{self.name} found nothing in {SCAN_LIMIT} steps", SCAN_LIMIT)
            x += 1

    def contains(self, x):
        return x >= 0 and self.pred(x)

    @property
    def inner(self):
        return f"pred:{self.name}"


class Prefix(SpaceObject):
    """Explicit finite head followed by the elements of ``tail`` above it."""

    def __init__(self, space, head: tuple, tail: SpaceObject):
        super().__init__(space)
        space.check_approx(head)
        self.head, self.tail = tuple(head), tail
        self._floor = space.content_max(self.head)

    def _generate(self):
        yield from self.head
        yield from self.tail.elements_above(self._floor)

    def contains(self, x):
        if x in self.head:
            return True
        return self.space.lo(x) > self._floor and self.tail.contains(x)

    @property
    def inner(self):
        return f"prefix:{self.space.encode(self.head, compact=True)}+{self.tail.inner}"

    @property
    def parseable(self):
        return self.tail.parseable


class Cut(SpaceObject):
    """Elements of ``parent`` lying strictly above ``floor``."""

    def __init__(self, space, floor: int, parent: SpaceObject):
        super().__init__(space)
        self.floor, self.parent = floor, parent

    def _generate(self):
        return self.parent.elements_above(self.floor)

    def contains(self, x):
        return self.space.lo(x) > self.floor and self.parent.contains(x)

    @property
    def inner(self):
        return f"cut:{self.floor}:{self.parent.inner}"

    @property
    def parseable(self):
        return self.parent.parseable


class Every(SpaceObject):
    """Elements of ``parent`` whose index is congruent to ``offset`` mod ``k``."""

    def __init__(self, space, k: int, offset: int, parent: SpaceObject):
        if k < 1 or not 0 <= offset < k:
            raise UsageError("every needs k >= 1 and 0 <= offset < k")
        super().__init__(space)
        self.k, self.offset, self.parent = k, offset, parent

    def element(self, i):
        return self.parent.element(self.offset + i * self.k)

    def prefix(self, n):
        return tuple(self.element(i) for i in range(n))

    def _generate(self):  # pragma: no cover - element() is overridden
        i = 0
        while True:
            yield self.element(i)
            i += 1

    @property
    def inner(self):
        return f"every:{self.k}:{self.offset}:{self.parent.inner}"

    @property
    def parseable(self):
        return self.parent.parseable


class Filter(SpaceObject):
    """Elements of ``parent`` accepted by a predicate.

    Named filters use the predicate registry and round-trip through the spec
    language; anonymous ones (``name=None``) are internal and carry a label.
    The predicate must accept infinitely many elements; a long run of
    rejections raises ``Exhausted``.
    """

    def __init__(self, space, pred, parent: SpaceObject, name=None, label=None, scan_limit=SCAN_LIMIT):
        super().__init__(space)
        self.pred, self.parent, self.name = pred, parent, name
        self.label = label or name
        self.scan_limit = scan_limit

    def _generate(self):
        misses = 0
        for x in self.parent.elements():
            if self.pred(x):
                misses = 0
                yield x
            else:
                misses += 1
                if misses > self.scan_limit:
                    raise Exhausted(f"filter {self.label} rejected {self.scan_limit} elements in a row",
                                    self.scan_limit)

    def contains(self, x):
        return self.pred(x) and self.parent.contains(x)

    @property
    def inner(self):
        return f"filter:{self.label}:{self.parent.inner}"

    @property
    def parseable(self):
        return self.name is not None and self.parent.parseable


class Lazy(SpaceObject):
    """An object given by an arbitrary pure element generator.

    ``below`` lists objects this one is known to lie below, which is what the
    construction (a fusion limit, a diagonalization) guarantees.
    """

    def __init__(self, space, label: str, generate: Callable[[], Iterator], below: Sequence[SpaceObject] = ()):
        super().__init__(space)
        self.label, self._make, self.below = label, generate, tuple(below)

    def _generate(self):
        return self._make()

    @property
    def inner(self):
        return self.label

    @property
    def parseable(self):
        return False


# ---------------------------------------------------------------- spaces

class Space:
    """A stream-shaped topological Ramsey space instance.

    Objects are increasing streams of *elements*; ``lo``/``hi`` give the least
    and greatest natural number an element involves.  Instances override the
    finitization order and the ways elements may be combined.
    """

    name = "abstract"
    spec_prefix = ""
    complete_members = False  # True when members_of can list [n, B] exhaustively

    # element geometry
    def lo(self, x) -> int:
        raise NotImplementedError

    def hi(self, x) -> int:
        raise NotImplementedError

    def content_max(self, a) -> int:
        return self.hi(a[-1]) if a else -1

    def check_approx(self, a):
        for x, y in zip(a, a[1:]):
            if not self.hi(x) < self.lo(y):
                raise UsageError(f"approximation {a!r} is not increasing")

    # approximations
    def empty(self) -> tuple:
        return ()

    def approx(self, A: SpaceObject, n: int) -> tuple:
        return A.prefix(n)

    def is_initial(self, a, b) -> bool:
        return len(a) <= len(b) and tuple(b[:len(a)]) == tuple(a)

    def le_fin(self, a, b) -> bool:
        raise NotImplementedError

    def below_fin(self, b) -> list:
        """Every approximation ``a`` with ``le_fin(a, b)``."""
        raise NotImplementedError

    def covered(self, B: SpaceObject, x) -> bool:
        """Can element ``x`` occur in some A <= B?"""
        raise NotImplementedError

    def combine(self, atoms: list, count: int) -> Iterable[tuple]:
        """Increasing sequences of ``count`` elements built from ``atoms``."""
        raise NotImplementedError

    def universal(self, obj) -> bool:
        """Is every object of the space below ``obj``?"""
        return False

    def encode(self, a, compact=False):
        raise NotImplementedError

    def decode(self, data) -> tuple:
        raise NotImplementedError

    # constructions shared by the witness families
    def graft(self, a, B: SpaceObject) -> SpaceObject:
        """The largest member of [a, B]: ``a`` followed by B above ``a``."""
        return Prefix(self, tuple(a), B) if a else B

    def cut(self, A: SpaceObject, a) -> SpaceObject:
        m = self.content_max(a)
        return Cut(self, m, A) if m >= 0 else A

    def open_nonempty(self, a, B: SpaceObject) -> bool:
        return all(self.covered(B, x) for x in a)

    def certify_le(self, A: SpaceObject, B: SpaceObject) -> bool:
        return _certify_above(self, A, B, -1)

    def family(self, objects: Sequence[SpaceObject], budget: int) -> list:
        """Witness family: the samples closed under a few cheap constructors."""
        out, seen = [], set()

        def add(x):
            if len(out) < budget and x.spec not in seen:
                seen.add(x.spec)
                out.append(x)

        for A in objects:
            add(A)
        for A in objects:
            add(Every(self, 2, 0, A))
            add(Every(self, 2, 1, A))
            for k in (1, 2, 3):
                add(self.graft(A.prefix(k), Every(self, 2, 1, self.cut(A, A.prefix(k)))))
                add(self.cut(A, A.prefix(k)))
        return out

    def extensions(self, a, B, n, element_bound) -> list:
        """r_n''[a, B] restricted to content below ``element_bound``, sorted."""
        if not self.open_nonempty(a, B):
            return []
        if n == len(a):
            return [a]
        floor = self.content_max(a)
        atoms = []
        for x in B.elements_above(floor):
            if self.lo(x) >= element_bound:
                break
            if self.hi(x) < element_bound:
                atoms.append(x)
        return sorted({a + tail for tail in self.combine(atoms, n - len(a))})

    def strong_included(self, b, B1, B2, A, m, bound) -> Trilean:
        """Sufficient test for <b,B1>^m_A being inside <b,B2>^m_A."""
        if le_bounded(B1, B2, bound).yes:
            return YES
        return Unknown(bound)

    def pigeonhole_candidates(self, a, B, n, coloring, element_bound) -> list:
        """Instance-specific guesses for an A.4 witness in [n, B]."""
        return []

    def extension_horizon(self, B: SpaceObject, a) -> int:
        """Index past which no prefix of B can newly satisfy ``le_fin(a, .)``."""
        m = self.content_max(a)
        i = 0
        while self.lo(B.element(i)) <= m:
            i += 1
        return i + 1


def _certify_above(space, X, Y, m) -> bool:
    """Certify that every element of X above ``m`` can occur below Y.

    Purely structural: walks the construction trees of both objects.  False
    means "no certificate", not "not below".
    """
    if X is Y or (X.parseable and Y.parseable and X.spec == Y.spec):
        return True
    if space.universal(Y):
        return True
    # structure on the left
    if isinstance(X, Prefix):
        if all(space.covered(Y, x) for x in X.head if space.lo(x) > m):
            if _certify_above(space, X.tail, Y, max(m, X._floor)):
                return True
    elif isinstance(X, Cut):
        if _certify_above(space, X.parent, Y, max(m, X.floor)):
            return True
    elif isinstance(X, (Every, Filter)) or getattr(X, "condenses_parent", False):
        if _certify_above(space, X.parent, Y, m):
            return True
    elif isinstance(X, Lazy):
        if any(_certify_above(space, b, Y, m) for b in X.below):
            return True
    # structure on the right
    if isinstance(Y, Prefix):
        h = Y._floor
        ok = True
        for x in X.elements_above(m):
            if space.lo(x) > h:
                break
            if not space.covered(Y, x):
                ok = False
                break
        if ok and _certify_above(space, X, Y.tail, max(m, h)):
            return True
    elif isinstance(Y, Cut):
        if m < Y.floor:
            first = next(X.elements_above(m))
            if space.lo(first) <= Y.floor:
                return False
        if _certify_above(space, X, Y.parent, max(m, Y.floor)):
            return True
    elif isinstance(Y, Filter) and isinstance(X, Filter) and X.name and X.name == Y.name:
        if _certify_above(space, X.parent, Y.parent, m):
            return True
    if isinstance(X, Arith) and isinstance(Y, Arith):
        x0 = X.first_above(m)
        return X.step % Y.step == 0 and Y.contains(x0)
    return False


# ---------------------------------------------------------------- operations

def _space_of_approx(a):
    from .ellentuck import ELLENTUCK
    from .milliken import MILLIKEN
    kinds = {type(x) for x in a}
    if not kinds:
        return None
    if kinds <= {int}:
        return ELLENTUCK
    if kinds <= {tuple}:
        return MILLIKEN
    raise UsageError(f"approximation {a!r} mixes element kinds")


def approx(A: SpaceObject, n: int) -> tuple:
    """The n-th approximation r_n(A)."""
    if n < 0:
        raise UsageError("approximation index must be >= 0")
    return A.space.approx(A, n)


def le_fin(a, b, space=None) -> bool:
    """The finitization order; both arguments must come from one instance."""
    if space is None:
        sa, sb = _space_of_approx(a), _space_of_approx(b)
        if sa is not None and sb is not None and sa is not sb:
            raise UsageError("approximations come from different spaces")
        space = sa or sb
        if space is None:  # both empty
            return True
    return space.le_fin(tuple(a), tuple(b))


def depth(B: SpaceObject, a, bound: int) -> DepthResult:
    """Least n <= bound with a <=_fin r_n(B), or NotWithin(bound)."""
    space = B.space
    a = tuple(a)
    for n in range(bound + 1):
        if space.le_fin(a, space.approx(B, n)):
            return Finite(n)
    return NotWithin(bound)


def depth_exact(B: SpaceObject, a) -> Optional[int]:
    """Depth decided using the instance horizon; None means infinite."""
    space = B.space
    h = space.extension_horizon(B, a)
    r = depth(B, a, h)
    return r.m if r.finite else None


def le_bounded(A: SpaceObject, B: SpaceObject, depth_bound: int) -> Trilean:
    """Bounded semi-decision of A <= B.

    No when an element of r_depth_bound(A) cannot occur below B; Yes when
    additionally the instance certifies the whole tail; Unknown otherwise.
    """
    space = A.space
    if A is B:
        return YES
    for x in space.approx(A, depth_bound):
        if not space.covered(B, x):
            return NO
    if space.certify_le(A, B):
        return YES
    return Unknown(depth_bound)


def in_open(A: SpaceObject, a, B: SpaceObject, bound: int) -> Trilean:
    """Membership of A in [a, B]."""
    space = A.space
    if space.approx(A, len(a)) != tuple(a):
        return NO
    return le_bounded(A, B, max(bound, len(a)))


def enum_extensions(open_: BasicOpen, n: int, element_bound: int) -> list:
    """Members of r_n''[a, B] whose content lies below ``element_bound``."""
    a, B = tuple(open_.base), open_.envelope
    if n < len(a):
        raise UsageError("n must be at least |a|")
    return B.space.extensions(a, B, n, element_bound)


def amalgam_enum(b, B: SpaceObject, A: SpaceObject, m: int, element_bound: int, bound=None) -> list:
    """One-step extensions c of b inside B with depth_A(c) > m."""
    b = tuple(b)
    bound = m + len(b) + 2 if bound is None else bound
    if not le_bounded(B, A, bound).yes:
        raise UsageError("amalgam_enum needs B <= A certified")
    k = depth(A, b, m)
    if not k.finite:
        raise UsageError(f"amalgam_enum needs depth_A(b) <= m = {m}")
    return [c for c in enum_extensions(BasicOpen(b, B), len(b) + 1, element_bound)
            if not depth(A, c, m).finite]


def is_initial_segment(a, b) -> bool:
    return len(a) <= len(b) and tuple(b[:len(a)]) == tuple(a)

