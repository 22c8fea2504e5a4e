"""Convergence structures on finite point sets.

Subsets of a carrier are plain ``int`` bitmasks (bit ``i`` set iff the
``i``-th declared point is a member).  Every filter on a finite set is the
principal filter ``{A}^`` of a nonempty set ``A``, so a convergence is fully
described by the table ``A -> lim {A}^`` over nonempty masks; the improper
filter (``A = 0``) is never a valid argument.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    CarrierMismatch,
    CharacterizationMismatch,
    EmptyFilterBase,
    EmptyList,
    MissingEntry,
    MonotonicityViolation,
    NotATopology,
    NotReflexive,
    NotSurjective,
    PointAxiomViolation,
)

Subset = int


# ---------------------------------------------------------------------------
# bitmask helpers

def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` (including 0 and ``mask``), descending."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def mesh(a: Subset, b: Subset) -> bool:
    """Principal filters ``{a}^`` and ``{b}^`` mesh iff ``a`` and ``b`` meet."""
    return (a & b) != 0


# ---------------------------------------------------------------------------
# carriers

@dataclass(frozen=True)
class PointSet:
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate point names in {self.names}")

    @classmethod
    def of(cls, *names: str) -> "PointSet":
        return cls(tuple(names))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> Subset:
        return (1 << len(self.names)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown point {name!r}") from None

    def mask(self, names: Iterable[str]) -> Subset:
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def members(self, mask: Subset) -> tuple[str, ...]:
        return tuple(self.names[i] for i in bits(mask))

    def fmt(self, mask: Subset) -> str:
        return "{" + ",".join(self.members(mask)) + "}"

    def nonempty(self) -> range:
        return range(1, self.full + 1)

    def __len__(self) -> int:
        return len(self.names)


# ---------------------------------------------------------------------------
# convergences

@dataclass(frozen=True, eq=False)
class FiniteConvergence:
    """A convergence on a finite carrier.

    ``table[A]`` is ``lim {A}^`` for every nonempty mask ``A``; ``table[0]``
    holds the full carrier (the improper filter converges everywhere) and is
    never consulted by the public operations.
    """

    carrier: PointSet
    table: tuple[int, ...]
    finite_depth_hint: bool = field(default=False)

    def __eq__(self, other):
        if not isinstance(other, FiniteConvergence):
            return NotImplemented
        return self.carrier == other.carrier and self.table == other.table

    def __hash__(self):
        return hash((self.carrier, self.table))

    def __repr__(self):
        rows = ", ".join(
            f"{self.carrier.fmt(a)}->{self.carrier.fmt(self.table[a])}"
            for a in self.carrier.nonempty()
        )
        return f"FiniteConvergence({self.carrier.names}, {rows})"

    @property
    def n(self) -> int:
        return self.carrier.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.carrier.names

    @property
    def full(self) -> Subset:
        return self.carrier.full

    def lim(self, a: Subset) -> Subset:
        if a == 0:
            raise EmptyFilterBase()
        return self.table[a]

    @cached_property
    def singletons(self) -> tuple[int, ...]:
        return tuple(self.table[1 << i] for i in range(self.n))

    @cached_property
    def adh(self) -> tuple[int, ...]:
        """``adh[S]`` is the union of ``lim {x}^`` over ``x`` in ``S``."""
        out = [0] * (self.full + 1)
        sing = self.singletons
        for s in range(1, self.full + 1):
            low = s & -s
            out[s] = out[s ^ low] | sing[low.bit_length() - 1]
        return tuple(out)

    @cached_property
    def closed_flags(self) -> tuple[bool, ...]:
        adh = self.adh
        return tuple((adh[s] & ~s) == 0 for s in range(self.full + 1))

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        return tuple(s for s, ok in enumerate(self.closed_flags) if ok)

    @cached_property
    def open_sets(self) -> tuple[int, ...]:
        full = self.full
        return tuple(sorted(full ^ c for c in self.closed_sets))

    def closure(self, s: Subset) -> Subset:
        """Smallest closed superset; adherence iterated to a fixpoint."""
        adh = self.adh
        while True:
            t = s | adh[s]
            if t == s:
                return s
            s = t

    def interior(self, s: Subset) -> Subset:
        return self.full ^ self.closure(self.full ^ s)

    def specialization(self, x: int, y: int) -> bool:
        """``x -> y``, i.e. ``y`` is a limit of ``{x}^``."""
        return bool(self.singletons[x] >> y & 1)


def _depth_is_finite(table: Sequence[int], n: int) -> bool:
    full = (1 << n) - 1
    sing = [table[1 << i] for i in range(n)]
    meet = [full] * (full + 1)
    for a in range(1, full + 1):
        low = a & -a
        meet[a] = meet[a ^ low] & sing[low.bit_length() - 1]
        if meet[a] != table[a]:
            return False
    return True


def _validate(carrier: PointSet, table: Sequence[int]) -> None:
    full = carrier.full
    for i in range(carrier.n):
        if not table[1 << i] >> i & 1:
            raise PointAxiomViolation(carrier.names[i])
    for a in range(1, full + 1):
        if table[a] & ~full:
            raise ValueError(f"limit of {carrier.fmt(a)} leaves the carrier")
        missing = full & ~a
        for i in bits(missing):
            b = a | (1 << i)
            if table[b] & ~table[a]:
                raise MonotonicityViolation(carrier.fmt(a), carrier.fmt(b))


def _make(carrier: PointSet, table: Sequence[int], validate: bool = True) -> FiniteConvergence:
    table = list(table)
    table[0] = carrier.full
    if validate:
        _validate(carrier, table)
    return FiniteConvergence(carrier, tuple(table), _depth_is_finite(table, carrier.n))


def build_convergence(carrier: PointSet, limits: Mapping[int, int] | Sequence[int]) -> FiniteConvergence:
    """Validate a limit table given for every nonempty subset.

    ``limits`` is either a mapping from nonempty masks to masks or a sequence
    indexed by mask (entry 0 ignored).
    """
    full = carrier.full
    table = [full] * (full + 1)
    if isinstance(limits, Mapping):
        for a in range(1, full + 1):
            if a not in limits:
                raise MissingEntry(carrier.fmt(a))
            table[a] = limits[a]
    else:
        if len(limits) != full + 1:
            raise MissingEntry(f"table of length {len(limits)} (expected {full + 1})")
        table = list(limits)
    return _make(carrier, table)


def build_finite_depth(carrier: PointSet, singleton_limits: Sequence[int]) -> FiniteConvergence:
    """Finitely deep convergence from the limits of the principal ultrafilters.

    ``singleton_limits[i]`` is the mask of ``lim {x_i}^``; it must contain
    ``x_i``.  Larger sets get the intersection of their points' limits.
    """
    if len(singleton_limits) != carrier.n:
        raise MissingEntry(f"{len(singleton_limits)} singleton limits for {carrier.n} points")
    for i, m in enumerate(singleton_limits):
        if not m >> i & 1:
            raise NotReflexive(carrier.names[i])
    full = carrier.full
    table = [full] * (full + 1)
    for a in range(1, full + 1):
        low = a & -a
        table[a] = table[a ^ low] & singleton_limits[low.bit_length() - 1]
    table[0] = full
    return FiniteConvergence(carrier, tuple(table), True)


def from_arrows(carrier: PointSet, arrows: Iterable[tuple[str, str]]) -> FiniteConvergence:
    """Finitely deep convergence from a diagram ``x -> y`` (loops implicit)."""
    sing = [1 << i for i in range(carrier.n)]
    for x, y in arrows:
        sing[carrier.index(x)] |= 1 << carrier.index(y)
    return build_finite_depth(carrier, sing)


def discrete(names: Sequence[str]) -> FiniteConvergence:
    carrier = PointSet(tuple(names))
    return build_finite_depth(carrier, [1 << i for i in range(carrier.n)])


def antidiscrete(names: Sequence[str]) -> FiniteConvergence:
    carrier = PointSet(tuple(names))
    return build_finite_depth(carrier, [carrier.full] * carrier.n)


# ---------------------------------------------------------------------------
# basic operations

def limit(conv: FiniteConvergence, a: Subset) -> Subset:
    return conv.lim(a)


def adherence_by_definition(conv: FiniteConvergence, b: Subset) -> Subset:
    if b == 0:
        raise EmptyFilterBase()
    out = 0
    for a in conv.carrier.nonempty():
        if a & b:
            out |= conv.table[a]
    return out


def adherence_by_points(conv: FiniteConvergence, b: Subset) -> Subset:
    if b == 0:
        raise EmptyFilterBase()
    out = 0
    for i in bits(b):
        out |= conv.singletons[i]
    return out


def adherence(conv: FiniteConvergence, b: Subset) -> Subset:
    """Union of the limits of all filters meshing ``{b}^``."""
    by_def = adherence_by_definition(conv, b)
    if by_def != adherence_by_points(conv, b):
        raise CharacterizationMismatch(f"adherence of {conv.carrier.fmt(b)}")
    return by_def


@dataclass(frozen=True)
class SetStatus:
    closed: bool
    open: bool


def set_status(conv: FiniteConvergence, s: Subset) -> SetStatus:
    """Closedness and openness of ``s`` by direct scan over all filters."""
    closed = all(conv.table[a] & ~s == 0 for a in submasks(s) if a)
    is_open = all(
        a & ~s == 0
        for a in conv.carrier.nonempty()
        if conv.table[a] & s
    )
    return SetStatus(closed, is_open)


# ---------------------------------------------------------------------------
# topologies

@dataclass(frozen=True, eq=False)
class FiniteTopology:
    carrier: PointSet
    opens: frozenset[int]

    def __post_init__(self):
        opens = frozenset(self.opens)
        object.__setattr__(self, "opens", opens)
        full = self.carrier.full
        if 0 not in opens or full not in opens:
            raise NotATopology("the empty set and the carrier must be open")
        for u in opens:
            if u & ~full:
                raise NotATopology("open set leaves the carrier")
            for v in opens:
                if (u | v) not in opens or (u & v) not in opens:
                    raise NotATopology(
                        f"not closed under union/intersection: {self.carrier.fmt(u)}, {self.carrier.fmt(v)}"
                    )

    def __eq__(self, other):
        if not isinstance(other, FiniteTopology):
            return NotImplemented
        return self.carrier == other.carrier and self.opens == other.opens

    def __hash__(self):
        return hash((self.carrier, self.opens))

    def __repr__(self):
        return f"FiniteTopology({self.carrier.names}, {[self.carrier.fmt(o) for o in self.sorted_opens]})"

    @cached_property
    def sorted_opens(self) -> tuple[int, ...]:
        return tuple(sorted(self.opens))

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.carrier.full ^ o for o in self.opens))

    @cached_property
    def neighborhoods(self) -> tuple[int, ...]:
        """Smallest open set containing each point."""
        out = []
        for i in range(self.carrier.n):
            u = self.carrier.full
            for o in self.opens:
                if o >> i & 1:
                    u &= o
            out.append(u)
        return tuple(out)

    def closure(self, s: Subset) -> Subset:
        c = self.carrier.full
        for d in self.closed_sets:
            if s & ~d == 0:
                c &= d
        return c

    def open_hull(self, s: Subset) -> Subset:
        u = self.carrier.full
        for o in self.opens:
            if s & ~o == 0:
                u &= o
        return u

    def is_t0(self) -> bool:
        nb = self.neighborhoods
        return len(set(nb)) == len(nb)


def topology_from_opens(carrier: PointSet, opens: Iterable[int]) -> FiniteTopology:
    return FiniteTopology(carrier, frozenset(opens))


def topology_generated(carrier: PointSet, subbase: Iterable[int]) -> FiniteTopology:
    """Topology generated by a family of subsets (closed under finite unions and intersections)."""
    full = carrier.full
    fam = {0, full} | set(subbase)
    changed = True
    while changed:
        changed = False
        for u, v in itertools.combinations(list(fam), 2):
            for w in (u | v, u & v):
                if w not in fam:
                    fam.add(w)
                    changed = True
    return FiniteTopology(carrier, frozenset(fam))


def conv_of_topology(top: FiniteTopology) -> FiniteConvergence:
    """``x`` is a limit of ``{A}^`` iff every open set around ``x`` contains ``A``."""
    nb = top.neighborhoods
    full = top.carrier.full
    table = [full] * (full + 1)
    for a in range(1, full + 1):
        table[a] = sum(1 << i for i, u in enumerate(nb) if a & ~u == 0)
    return FiniteConvergence(top.carrier, tuple(table), True)


def topological_modification(conv: FiniteConvergence) -> FiniteTopology:
    return FiniteTopology(conv.carrier, frozenset(conv.open_sets))


def finite_depth_modification(conv: FiniteConvergence) -> FiniteConvergence:
    return build_finite_depth(conv.carrier, conv.singletons)


def discrete_topology(names: Sequence[str]) -> FiniteTopology:
    carrier = PointSet(tuple(names))
    return FiniteTopology(carrier, frozenset(range(carrier.full + 1)))


def antidiscrete_topology(names: Sequence[str]) -> FiniteTopology:
    carrier = PointSet(tuple(names))
    return FiniteTopology(carrier, frozenset({0, carrier.full}))


# ---------------------------------------------------------------------------
# the lattice of convergences on a fixed carrier

FINER, COARSER, EQUAL, INCOMPARABLE = "finer", "coarser", "equal", "incomparable"


def _same_carrier(*convs: FiniteConvergence) -> None:
    first = convs[0].carrier
    for c in convs[1:]:
        if c.carrier != first:
            raise CarrierMismatch(f"{first.names} != {c.carrier.names}")


def is_finer(a: FiniteConvergence, b: FiniteConvergence) -> bool:
    """``a >= b``: every limit for ``a`` is a limit for ``b``."""
    _same_carrier(a, b)
    return all(x & ~y == 0 for x, y in zip(a.table, b.table))


def compare(a: FiniteConvergence, b: FiniteConvergence) -> str:
    ge = is_finer(a, b)
    le = is_finer(b, a)
    if ge and le:
        return EQUAL
    if ge:
        return FINER
    if le:
        return COARSER
    return INCOMPARABLE


def sup_conv(convs: Sequence[FiniteConvergence]) -> FiniteConvergence:
    if not convs:
        raise EmptyList("supremum of an empty list")
    _same_carrier(*convs)
    table = list(convs[0].table)
    for c in convs[1:]:
        table = [x & y for x, y in zip(table, c.table)]
    return _make(convs[0].carrier, table, validate=False)


def inf_conv(convs: Sequence[FiniteConvergence]) -> FiniteConvergence:
    if not convs:
        raise EmptyList("infimum of an empty list")
    _same_carrier(*convs)
    table = list(convs[0].table)
    for c in convs[1:]:
        table = [x | y for x, y in zip(table, c.table)]
    return _make(convs[0].carrier, table, validate=False)


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True)
class SpaceMap:
    source: PointSet
    target: PointSet
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.source.n:
            raise ValueError("map table must cover the whole source")
        if any(not 0 <= t < self.target.n for t in self.table):
            raise ValueError("map value outside the target")

    @classmethod
    def from_names(cls, source: PointSet, target: PointSet, pairs: Mapping[str, str]) -> "SpaceMap":
        return cls(source, target, tuple(target.index(pairs[x]) for x in source.names))

    def __call__(self, i: int) -> int:
        return self.table[i]

    def image(self, a: Subset) -> Subset:
        out = 0
        for i in bits(a):
            out |= 1 << self.table[i]
        return out

    def preimage(self, b: Subset) -> Subset:
        return sum(1 << i for i, t in enumerate(self.table) if b >> t & 1)

    def is_onto(self) -> bool:
        return self.image(self.source.full) == self.target.full

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def inverse(self) -> "SpaceMap":
        if not (self.is_injective() and self.is_onto()):
            raise ValueError("only bijections have an inverse")
        inv = [0] * self.target.n
        for i, t in enumerate(self.table):
            inv[t] = i
        return SpaceMap(self.target, self.source, tuple(inv))

    def compose(self, inner: "SpaceMap") -> "SpaceMap":
        """``self o inner``."""
        return SpaceMap(inner.source, self.target, tuple(self.table[t] for t in inner.table))


def identity_map(carrier: PointSet) -> SpaceMap:
    return SpaceMap(carrier, carrier, tuple(range(carrier.n)))


def is_continuous(f: SpaceMap, xi: FiniteConvergence, tau: FiniteConvergence) -> bool:
    if f.source != xi.carrier or f.target != tau.carrier:
        raise CarrierMismatch("map does not match the given spaces")
    return all(
        f.image(xi.table[a]) & ~tau.table[f.image(a)] == 0 for a in xi.carrier.nonempty()
    )


def is_open_map(f: SpaceMap, xi: FiniteConvergence, tau: FiniteConvergence) -> bool:
    opens = set(tau.open_sets)
    return all(f.image(o) in opens for o in xi.open_sets)


def is_closed_map(f: SpaceMap, xi: FiniteConvergence, tau: FiniteConvergence) -> bool:
    flags = tau.closed_flags
    return all(flags[f.image(c)] for c in xi.closed_sets)


def initial_conv(f: SpaceMap, tau: FiniteConvergence) -> FiniteConvergence:
    """Coarsest convergence on the source making ``f`` continuous into ``tau``."""
    if f.target != tau.carrier:
        raise CarrierMismatch("map target does not match")
    src = f.source
    table = [src.full] * (src.full + 1)
    for a in src.nonempty():
        table[a] = f.preimage(tau.table[f.image(a)])
    return _make(src, table, validate=False)


def final_conv(f: SpaceMap, xi: FiniteConvergence) -> FiniteConvergence:
    """Finest convergence on the target making ``f`` continuous from ``xi``.

    ``lim(B)`` collects ``f(lim A)`` over every ``A`` whose image contains
    ``B`` (these are the filters whose image is coarser than ``{B}^``); points
    outside the image only get the point axiom.
    """
    if f.source != xi.carrier:
        raise CarrierMismatch("map source does not match")
    tgt = f.target
    table = [0] * (tgt.full + 1)
    for i in range(tgt.n):
        table[1 << i] = 1 << i
    images = [(f.image(a), f.image(xi.table[a])) for a in xi.carrier.nonempty()]
    for b in tgt.nonempty():
        acc = table[b]
        for fa, flim in images:
            if b & ~fa == 0:
                acc |= flim
        table[b] = acc
    return _make(tgt, table, validate=False)


def subspace(conv: FiniteConvergence, s: Subset) -> FiniteConvergence:
    """Induced convergence on ``s`` (initial along the inclusion)."""
    sub = PointSet(conv.carrier.members(s))
    inc = SpaceMap(sub, conv.carrier, tuple(bits(s)))
    return initial_conv(inc, conv)


def product(convs: Sequence[FiniteConvergence]) -> FiniteConvergence:
    """Product convergence: supremum of the initial convergences along the projections."""
    if not convs:
        raise EmptyList("product of no spaces")
    tuples = list(itertools.product(*(range(c.n) for c in convs)))
    names = tuple(
        "(" + ",".join(c.names[i] for c, i in zip(convs, t)) + ")" for t in tuples
    )
    carrier = PointSet(names)
    initials = [
        initial_conv(SpaceMap(carrier, c.carrier, tuple(t[k] for t in tuples)), c)
        for k, c in enumerate(convs)
    ]
    return sup_conv(initials)


def quotient(conv: FiniteConvergence, f: SpaceMap) -> FiniteConvergence:
    if not f.is_onto():
        raise NotSurjective("quotient map must be onto")
    return final_conv(f, conv)


def is_dense(conv: FiniteConvergence, a: Subset) -> bool:
    """Every point is a limit of some filter containing ``a``."""
    reach = 0
    for b in submasks(a):
        if b:
            reach |= conv.table[b]
    if (reach == conv.full) != (conv.n == 0 or (a != 0 and conv.adh[a] == conv.full)):
        raise CharacterizationMismatch(f"density of {conv.carrier.fmt(a)}")
    return reach == conv.full


# ---------------------------------------------------------------------------
# homeomorphisms

def _signature(conv: FiniteConvergence, i: int) -> tuple[int, int, int]:
    bit = 1 << i
    into = sum(1 for m in conv.singletons if m & bit)
    conv_count = sum(1 for a in conv.carrier.nonempty() if conv.table[a] & bit)
    return (conv.singletons[i].bit_count(), into, conv_count)


def find_homeomorphism(a: FiniteConvergence, b: FiniteConvergence) -> SpaceMap | None:
    """Lexicographically first bijection ``phi`` with ``phi`` and its inverse continuous."""
    n = a.n
    if n != b.n or len(a.closed_sets) != len(b.closed_sets):
        return None
    sig_a = [_signature(a, i) for i in range(n)]
    sig_b = [_signature(b, j) for j in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    assign = [-1] * n
    used = [False] * n
    sa, sb = a.singletons, b.singletons

    def consistent(i: int, j: int) -> bool:
        for k in range(i):
            m = assign[k]
            if bool(sa[i] >> k & 1) != bool(sb[j] >> m & 1):
                return False
            if bool(sa[k] >> i & 1) != bool(sb[m] >> j & 1):
                return False
        return True

    def search(i: int) -> SpaceMap | None:
        if i == n:
            phi = SpaceMap(a.carrier, b.carrier, tuple(assign))
            if is_continuous(phi, a, b) and is_continuous(phi.inverse(), b, a):
                return phi
            return None
        for j in range(n):
            if used[j] or sig_a[i] != sig_b[j] or not consistent(i, j):
                continue
            assign[i] = j
            used[j] = True
            found = search(i + 1)
            if found is not None:
                return found
            used[j] = False
        assign[i] = -1
        return None

    return search(0)


def relabel(conv: FiniteConvergence, names: Sequence[str]) -> FiniteConvergence:
    """Same table, new point names (positionally)."""
    return FiniteConvergence(PointSet(tuple(names)), conv.table, conv.finite_depth_hint)


def transport(conv: FiniteConvergence, phi: SpaceMap) -> FiniteConvergence:
    """Push ``conv`` along a bijection ``phi`` onto ``phi.target``."""
    tgt = phi.target
    inv = phi.inverse()
    table = [tgt.full] * (tgt.full + 1)
    for b in tgt.nonempty():
        table[b] = phi.image(conv.table[inv.image(b)])
    return FiniteConvergence(tgt, tuple(table), conv.finite_depth_hint)
