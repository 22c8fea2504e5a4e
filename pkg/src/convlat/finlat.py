"""Finite lattices and finite convergence lattices.

Elements are referred to by index.  Every filter on a finite lattice is the
principal filter of its least element, so a convergence lattice is a lattice
together with an antitone map ``lam`` where ``lam[l]`` stands for the limit
of the principal filter of ``l``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (
    CharacterizationMismatch,
    JoinMissing,
    LatticeError,
    MeetMissing,
    NoPseudocomplement,
    NotAntitone,
    NotAPartialOrder,
    NotMonotone,
)
from .fincov import FiniteConvergence, PointSet, SpaceMap, bits


class Category(str, enum.Enum):
    LAT = "lat"
    FRM = "frm"
    COFRM = "cofrm"


class ZKind(str, enum.Enum):
    OPEN = "open"
    CLOSED = "closed"
    COMPLEMENTED = "complemented"
    DOUBLE_PSEUDOCOMPLEMENT = "double_pseudocomplement"


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    names: tuple[str, ...]
    up: tuple[int, ...]  # up[i]: bitmask of the j with i <= j

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.names == other.names and self.up == other.up

    def __hash__(self):
        return hash((self.names, self.up))

    def __repr__(self):
        return f"FiniteLattice({self.names})"

    def __len__(self):
        return len(self.names)

    @property
    def size(self) -> int:
        return len(self.names)

    @cached_property
    def down(self) -> tuple[int, ...]:
        d = [0] * self.size
        for i, u in enumerate(self.up):
            for j in bits(u):
                d[j] |= 1 << i
        return tuple(d)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r}") from None

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for a in range(self.size):
            rows.append(tuple(self._glb(a, b) for b in range(self.size)))
        return tuple(rows)

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for a in range(self.size):
            rows.append(tuple(self._lub(a, b) for b in range(self.size)))
        return tuple(rows)

    def _glb(self, a: int, b: int) -> int:
        lower = self.down[a] & self.down[b]
        for g in bits(lower):
            if lower & ~self.down[g] == 0:
                return g
        raise MeetMissing(self.names[a], self.names[b])

    def _lub(self, a: int, b: int) -> int:
        upper = self.up[a] & self.up[b]
        for g in bits(upper):
            if upper & ~self.up[g] == 0:
                return g
        raise JoinMissing(self.names[a], self.names[b])

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet_all(self, elems: Iterable[int]) -> int:
        m = self.top
        for e in elems:
            m = self.meet_table[m][e]
        return m

    def join_all(self, elems: Iterable[int]) -> int:
        j = self.bottom
        for e in elems:
            j = self.join_table[j][e]
        return j

    @cached_property
    def bottom(self) -> int:
        every = (1 << self.size) - 1
        return next(i for i in range(self.size) if self.up[i] == every)

    @cached_property
    def top(self) -> int:
        every = (1 << self.size) - 1
        return next(i for i in range(self.size) if self.down[i] == every)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.size), key=lambda i: (self.down[i].bit_count(), i)))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for a in range(self.size):
            for b in bits(self.up[a] & ~(1 << a)):
                between = self.up[a] & self.down[b] & ~((1 << a) | (1 << b))
                if not between:
                    out.append((a, b))
        return tuple(out)

    # -- primality --------------------------------------------------------

    def is_join_prime(self, e: int) -> bool:
        up = self.up[e]
        jt = self.join_table
        n = self.size
        for a in range(n):
            if up >> a & 1:
                continue
            for b in range(a, n):
                if not up >> b & 1 and up >> jt[a][b] & 1:
                    return False
        return True

    def is_prime_filter(self, p: int) -> bool:
        """``up(p)`` is proper and contains one of ``a, b`` whenever it contains ``a v b``."""
        if p == self.bottom:
            return False
        return self.is_join_prime(p)

    def is_completely_prime_filter(self, p: int) -> bool:
        """Proper, and no family of non-members has its join inside ``up(p)``.

        A family of non-members has a join in the filter iff the join of *all*
        non-members does, since joins grow with the family.
        """
        if p == self.bottom:
            return False
        outside = [e for e in range(self.size) if not self.up[p] >> e & 1]
        return not self.up[p] >> self.join_all(outside) & 1

    @cached_property
    def prime_reps(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.size) if self.is_prime_filter(p))

    @cached_property
    def completely_prime_reps(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.size) if self.is_completely_prime_filter(p))

    @cached_property
    def join_prime_reps(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.size) if p != self.bottom and self.is_join_prime(p))

    def point_reps(self, cat: Category) -> tuple[int, ...]:
        if cat is Category.LAT:
            return self.prime_reps
        if cat is Category.FRM:
            return self.completely_prime_reps
        return self.join_prime_reps

    # -- complements --------------------------------------------------------

    def pseudocomplement(self, e: int) -> int:
        disjoint = [x for x in range(self.size) if self.meet_table[x][e] == self.bottom]
        j = self.join_all(disjoint)
        if self.meet_table[j][e] != self.bottom:
            raise NoPseudocomplement(self.names[e])
        return j

    def is_complemented(self, e: int) -> bool:
        return any(
            self.meet_table[e][y] == self.bottom and self.join_table[e][y] == self.top
            for y in range(self.size)
        )

    def is_distributive(self) -> bool:
        m, j = self.meet_table, self.join_table
        r = range(self.size)
        return all(m[x][j[y][z]] == j[m[x][y]][m[x][z]] for x in r for y in r for z in r)

    # -- filters --------------------------------------------------------------

    def principal_filters(self) -> list[int]:
        return list(self.up)

    def is_filter(self, members: int) -> bool:
        """Nonempty, upward closed and closed under binary meets."""
        if not members:
            return False
        for a in bits(members):
            if self.up[a] & ~members:
                return False
            for b in bits(members):
                if not members >> self.meet_table[a][b] & 1:
                    return False
        return True


def build_lattice(elements: Sequence[str], leq: Sequence[Sequence[bool]]) -> FiniteLattice:
    """Validate a partial order given as a boolean matrix and check it is a lattice."""
    n = len(elements)
    if len(set(elements)) != n:
        raise NotAPartialOrder("duplicate element names")
    if n == 0:
        raise NotAPartialOrder("a lattice needs at least one element")
    for a in range(n):
        if not leq[a][a]:
            raise NotAPartialOrder(f"not reflexive at {elements[a]}")
        for b in range(n):
            if a != b and leq[a][b] and leq[b][a]:
                raise NotAPartialOrder(f"not antisymmetric: {elements[a]}, {elements[b]}")
            for c in range(n):
                if leq[a][b] and leq[b][c] and not leq[a][c]:
                    raise NotAPartialOrder(
                        f"not transitive: {elements[a]} <= {elements[b]} <= {elements[c]}"
                    )
    up = tuple(sum(1 << b for b in range(n) if leq[a][b]) for a in range(n))
    lat = FiniteLattice(tuple(elements), up)
    lat.meet_table
    lat.join_table
    return lat


def lattice_from_covers(elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> FiniteLattice:
    """Lattice from generating pairs ``a <= b`` (reflexive-transitive closure taken)."""
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    rel = [[a == b for b in range(n)] for a in range(n)]
    for a, b in pairs:
        rel[idx[a]][idx[b]] = True
    for k in range(n):
        for a in range(n):
            if rel[a][k]:
                for b in range(n):
                    if rel[k][b]:
                        rel[a][b] = True
    return build_lattice(elements, rel)


def chain(k: int) -> FiniteLattice:
    names = [f"c{i}" for i in range(k)]
    return lattice_from_covers(names, [(names[i], names[i + 1]) for i in range(k - 1)])


def subset_name(carrier: PointSet, mask: int) -> str:
    return carrier.fmt(mask)


@lru_cache(maxsize=None)
def boolean_lattice(names: tuple[str, ...]) -> FiniteLattice:
    """The powerset of ``names`` ordered by inclusion; element index = mask."""
    carrier = PointSet(names)
    full = carrier.full
    up = tuple(sum(1 << b for b in range(full + 1) if a & ~b == 0) for a in range(full + 1))
    lat = FiniteLattice(tuple(carrier.fmt(m) for m in range(full + 1)), up)
    lat.__dict__["meet_table"] = tuple(tuple(a & b for b in range(full + 1)) for a in range(full + 1))
    lat.__dict__["join_table"] = tuple(tuple(a | b for b in range(full + 1)) for a in range(full + 1))
    return lat


# ---------------------------------------------------------------------------
# convergence lattices

@dataclass(frozen=True, eq=False)
class FiniteConvLattice:
    lattice: FiniteLattice
    lam: tuple[int, ...]
    carrier: PointSet | None = field(default=None)  # set for powerset lattices

    def __eq__(self, other):
        if not isinstance(other, FiniteConvLattice):
            return NotImplemented
        return self.lattice == other.lattice and self.lam == other.lam

    def __hash__(self):
        return hash((self.lattice, self.lam))

    def __repr__(self):
        names = self.lattice.names
        return "FiniteConvLattice(" + ", ".join(f"{names[i]}->{names[v]}" for i, v in enumerate(self.lam)) + ")"

    @property
    def size(self) -> int:
        return self.lattice.size

    @cached_property
    def closed_mask(self) -> int:
        a = _closed_membership(self)
        if a != _closed_mesh(self):
            raise CharacterizationMismatch("closed elements: membership and mesh forms disagree")
        return a

    @cached_property
    def open_mask(self) -> int:
        a = _open_membership(self)
        if a != _open_mesh(self):
            raise CharacterizationMismatch("open elements: membership and mesh forms disagree")
        return a

    def is_closed(self, e: int) -> bool:
        return bool(self.closed_mask >> e & 1)

    def is_open(self, e: int) -> bool:
        return bool(self.open_mask >> e & 1)

    @cached_property
    def has_closed_limits(self) -> bool:
        return all(self.is_closed(self.lam[e]) for e in range(self.size))


def build_conv_lattice(lattice: FiniteLattice, lam: Mapping[str, str] | Sequence[int]) -> FiniteConvLattice:
    """Attach an antitone limit map; the improper filter is sent to the top."""
    if isinstance(lam, Mapping):
        table = [lattice.top] * lattice.size
        for e in range(lattice.size):
            if lattice.names[e] in lam:
                table[e] = lattice.index(lam[lattice.names[e]])
            elif e != lattice.bottom:
                raise LatticeError(f"no limit given for {lattice.names[e]}")
    else:
        table = list(lam)
        if len(table) != lattice.size:
            raise LatticeError("limit table must cover every element")
    if table[lattice.bottom] != lattice.top:
        raise LatticeError("the improper filter must converge to the top element")
    for a, b in lattice.covers:
        if not lattice.leq(table[b], table[a]):
            raise NotAntitone(f"{lattice.names[a]} <= {lattice.names[b]} but lim does not reverse")
    return FiniteConvLattice(lattice, tuple(table))


def powerset_lattice(conv: FiniteConvergence) -> FiniteConvLattice:
    lat = boolean_lattice(conv.names)
    return FiniteConvLattice(lat, conv.table, conv.carrier)


# ---------------------------------------------------------------------------
# closed and open elements

def _closed_membership(L: FiniteConvLattice) -> int:
    lat, lam = L.lattice, L.lam
    out = 0
    for e in range(L.size):
        if all(lat.leq(lam[m], e) for m in bits(lat.down[e]) if m != lat.bottom):
            out |= 1 << e
    return out


def _closed_mesh(L: FiniteConvLattice) -> int:
    # e closed iff lim F <= e for every proper filter F having e in its grill
    lat, lam = L.lattice, L.lam
    meet = lat.meet_table
    out = 0
    for e in range(L.size):
        ok = True
        for m in range(L.size):
            if m == lat.bottom:
                continue
            in_grill = all(meet[e][f] != lat.bottom for f in bits(lat.up[m]))
            if in_grill and not lat.leq(lam[m], e):
                ok = False
                break
        if ok:
            out |= 1 << e
    return out


def _open_membership(L: FiniteConvLattice) -> int:
    lat, lam = L.lattice, L.lam
    meet = lat.meet_table
    out = 0
    for e in range(L.size):
        if all(
            lat.leq(m, e)
            for m in range(L.size)
            if m != lat.bottom and meet[lam[m]][e] != lat.bottom
        ):
            out |= 1 << e
    return out


def _open_mesh(L: FiniteConvLattice) -> int:
    # e open iff for every proper filter F: up(lim F) meshes up(e) => e in F
    lat, lam = L.lattice, L.lam
    meet = lat.meet_table
    out = 0
    for e in range(L.size):
        ok = True
        for m in range(L.size):
            if m == lat.bottom:
                continue
            meshes = all(
                meet[a][b] != lat.bottom for a in bits(lat.up[lam[m]]) for b in bits(lat.up[e])
            )
            if meshes and not lat.up[m] >> e & 1:
                ok = False
                break
        if ok:
            out |= 1 << e
    return out


def closed_elements(L: FiniteConvLattice) -> tuple[int, ...]:
    return tuple(bits(L.closed_mask))


def open_elements(L: FiniteConvLattice) -> tuple[int, ...]:
    return tuple(bits(L.open_mask))


def closed_elements_membership(L): return tuple(bits(_closed_membership(L)))
def closed_elements_mesh(L): return tuple(bits(_closed_mesh(L)))
def open_elements_membership(L): return tuple(bits(_open_membership(L)))
def open_elements_mesh(L): return tuple(bits(_open_mesh(L)))


def z_family(L: FiniteConvLattice, kind: ZKind | str) -> tuple[int, ...]:
    kind = ZKind(kind)
    lat = L.lattice
    if kind is ZKind.OPEN:
        return open_elements(L)
    if kind is ZKind.CLOSED:
        return closed_elements(L)
    if kind is ZKind.COMPLEMENTED:
        return tuple(e for e in range(L.size) if lat.is_complemented(e))
    pc = [lat.pseudocomplement(e) for e in range(L.size)]
    return tuple(e for e in range(L.size) if pc[pc[e]] == e)


def z_regularity_witness(L: FiniteConvLattice, family: Iterable[int]) -> int | None:
    lat = L.lattice
    fam = list(family)
    for e in range(L.size):
        if e == lat.bottom:
            continue
        trace = [z for z in fam if lat.leq(e, z)]
        m = lat.meet_all(trace)
        if L.lam[e] != L.lam[m]:
            return e
    return None


def is_z_regular_lattice(L: FiniteConvLattice, family: Iterable[int]) -> bool:
    return z_regularity_witness(L, family) is None


# ---------------------------------------------------------------------------
# lattice maps

@dataclass(frozen=True)
class LatticeMap:
    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __call__(self, e: int) -> int:
        return self.table[e]

    def is_monotone(self) -> bool:
        return all(self.target.leq(self.table[a], self.table[b]) for a, b in self.source.covers)

    def is_homomorphism(self) -> bool:
        s, t, f = self.source, self.target, self.table
        r = range(s.size)
        return all(
            f[s.meet(a, b)] == t.meet(f[a], f[b]) and f[s.join(a, b)] == t.join(f[a], f[b])
            for a in r for b in r
        )

    def preimage_of_filter(self, m: int) -> int:
        """Members ``l`` with ``phi(l)`` in ``up(m)``, as a bitmask."""
        return sum(1 << e for e in range(self.source.size) if self.target.leq(m, self.table[e]))


def identity_lattice_map(lat: FiniteLattice) -> LatticeMap:
    return LatticeMap(lat, lat, tuple(range(lat.size)))


def powerset_map(f: SpaceMap) -> LatticeMap:
    """``B -> f^{-1}(B)`` from the powerset of the target to that of the source."""
    src = boolean_lattice(f.target.names)
    dst = boolean_lattice(f.source.names)
    return LatticeMap(src, dst, tuple(f.preimage(b) for b in range(f.target.full + 1)))


@dataclass
class ContinuityReport:
    continuous: bool
    skipped: list[int] = field(default_factory=list)  # filters of the target whose preimage is no filter
    witness: int | None = None


def lattice_continuity(phi: LatticeMap, src: FiniteConvLattice, dst: FiniteConvLattice) -> ContinuityReport:
    """Check ``lim' F <= phi(lim phi^{-1}(F))`` over the proper filters ``F`` of ``dst``."""
    if not phi.is_monotone():
        raise NotMonotone("lattice map is not monotone")
    s, t = src.lattice, dst.lattice
    report = ContinuityReport(True)
    for m in range(t.size):
        if m == t.bottom:
            continue
        pre = phi.preimage_of_filter(m)
        if not s.is_filter(pre):
            report.skipped.append(m)
            continue
        p = s.meet_all(bits(pre))
        if not t.leq(dst.lam[m], phi(src.lam[p])):
            report.continuous = False
            report.witness = m
            break
    return report


def is_continuous_lattice_morphism(phi: LatticeMap, src: FiniteConvLattice, dst: FiniteConvLattice) -> bool:
    return lattice_continuity(phi, src, dst).continuous


# ---------------------------------------------------------------------------
# brute-force filter enumeration (used as an oracle)

def all_filters(lat: FiniteLattice) -> list[int]:
    if lat.size > 16:
        raise LatticeError("filter enumeration is capped at 16 elements")
    return [s for s in range(1, 1 << lat.size) if lat.is_filter(s)]


def antitone_maps(lat: FiniteLattice) -> list[tuple[int, ...]]:
    """Every antitone ``lam`` with ``lam(bottom) = top``, in lexicographic order of the linear extension."""
    order = [e for e in lat.linear_extension if e != lat.bottom]
    lower_covers = {b: [a for a, bb in lat.covers if bb == b] for b in range(lat.size)}
    table = [lat.top] * lat.size
    out: list[tuple[int, ...]] = []

    def rec(k: int):
        if k == len(order):
            out.append(tuple(table))
            return
        e = order[k]
        bound = (1 << lat.size) - 1
        for a in lower_covers[e]:
            bound &= lat.down[table[a]]
        for v in bits(bound):
            table[e] = v
            rec(k + 1)
        table[e] = lat.top

    rec(0)
    return out


def product_lattice(a: FiniteLattice, b: FiniteLattice) -> FiniteLattice:
    pairs = list(itertools.product(range(a.size), range(b.size)))
    names = [f"{a.names[i]}.{b.names[j]}" for i, j in pairs]
    rel = [[a.leq(i, k) and b.leq(j, l) for (k, l) in pairs] for (i, j) in pairs]
    return build_lattice(names, rel)
