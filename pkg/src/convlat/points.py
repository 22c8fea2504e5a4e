"""Points of a finite convergence lattice and the spaces built from them.

A point is a proper filter ``up(p)`` that is prime (in the sense of the
chosen category) and contains its own limit, i.e. ``p <= lam(p)``.  Points
are stored by their least element ``p``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import CharacterizationMismatch, EmptyFilterBase, NotAPoint
from .fincov import (
    FiniteConvergence,
    FiniteTopology,
    PointSet,
    SpaceMap,
    bits,
    conv_of_topology,
    final_conv,
    topological_modification,
    topology_generated,
    _make,
)
from .finlat import Category, FiniteConvLattice, LatticeMap


@dataclass(frozen=True)
class LatticePoint:
    rep: int
    category: Category


def is_point(L: FiniteConvLattice, p: int, cat: Category = Category.LAT) -> bool:
    lat = L.lattice
    return p in lat.point_reps(Category(cat)) and lat.leq(p, L.lam[p])


def extract_points(L: FiniteConvLattice, cat: Category | str = Category.LAT) -> list[LatticePoint]:
    cat = Category(cat)
    lat = L.lattice
    return [LatticePoint(p, cat) for p in lat.point_reps(cat) if lat.leq(p, L.lam[p])]


def _point_names(L: FiniteConvLattice, reps: list[int]) -> tuple[str, ...]:
    names = []
    for p in reps:
        raw = L.lattice.names[p]
        name = re.sub(r"[{}\s]", "", raw).replace(",", "_") or "bot"
        names.append(name)
    if len(set(names)) != len(names):
        names = [f"{n}~{i}" for i, n in enumerate(names)]
    return tuple(names)


@dataclass(frozen=True, eq=False)
class PointSpace:
    base: FiniteConvLattice
    category: Category
    points: tuple[LatticePoint, ...]
    conv: FiniteConvergence
    bullet_table: tuple[int, ...]  # element -> mask of points below it

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(p.rep for p in self.points)

    @property
    def n(self) -> int:
        return len(self.points)


def bullet(ps: PointSpace, e: int) -> int:
    """Points whose filter contains ``e``."""
    return ps.bullet_table[e]


def circle(ps: PointSpace, f: int) -> tuple[int, int]:
    """Elements ``e`` whose bullet contains the point set ``f``.

    Returns ``(members, least)`` where ``members`` is a bitmask over lattice
    elements and ``least`` its minimum (the trace is always a principal filter).
    """
    if f == 0:
        raise EmptyFilterBase()
    lat = ps.base.lattice
    members = 0
    for e in range(lat.size):
        if f & ~ps.bullet_table[e] == 0:
            members |= 1 << e
    least = lat.meet_all(bits(members))
    if lat.up[least] != members:
        raise CharacterizationMismatch("circle of a point set is not a principal filter")
    return members, least


def pt_space(L: FiniteConvLattice, cat: Category | str = Category.LAT) -> PointSpace:
    cat = Category(cat)
    lat = L.lattice
    pts = extract_points(L, cat)
    reps = [p.rep for p in pts]
    carrier = PointSet(_point_names(L, reps))
    bullet_table = tuple(
        sum(1 << k for k, p in enumerate(reps) if lat.leq(p, e)) for e in range(lat.size)
    )
    full = carrier.full
    # the circle of {F}^ is up(join F); its limit is lam(join F)
    join = [lat.bottom] * (full + 1)
    table = [full] * (full + 1)
    for f in range(1, full + 1):
        low = f & -f
        join[f] = lat.join(join[f ^ low], reps[low.bit_length() - 1])
        table[f] = bullet_table[L.lam[join[f]]]
    conv = _make(carrier, table, validate=True)
    return PointSpace(L, cat, tuple(pts), conv, bullet_table)


def pt_morphism(phi: LatticeMap, src: PointSpace, dst: PointSpace) -> SpaceMap:
    """``pt(phi)``: sends the point ``up(p')`` of ``dst`` to the point ``phi^{-1}(up(p'))`` of ``src``.

    ``phi`` goes from ``src.base`` to ``dst.base``.
    """
    lat = src.base.lattice
    index = {p: k for k, p in enumerate(src.reps)}
    out = []
    for p2 in dst.reps:
        pre = phi.preimage_of_filter(p2)
        if not lat.is_filter(pre):
            raise NotAPoint(f"preimage of up({dst.base.lattice.names[p2]}) is not a filter")
        least = lat.meet_all(bits(pre))
        if least not in index:
            raise NotAPoint(f"preimage of up({dst.base.lattice.names[p2]}) is up({lat.names[least]}), not a point")
        out.append(index[least])
    return SpaceMap(dst.conv.carrier, src.conv.carrier, tuple(out))


# ---------------------------------------------------------------------------
# the quotient by equal limits

@dataclass(frozen=True)
class QuotientMap:
    class_rep: tuple[int, ...]  # class -> its common lam-value
    q: SpaceMap                  # pt L -> classes

    def members(self, k: int) -> int:
        return self.q.preimage(1 << k)


def quotient_map(ps: PointSpace) -> QuotientMap:
    lam = ps.base.lam
    values = sorted({lam[p] for p in ps.reps})
    pos = {v: k for k, v in enumerate(values)}
    names = _point_names(ps.base, values)
    target = PointSet(names)
    q = SpaceMap(ps.conv.carrier, target, tuple(pos[lam[p]] for p in ps.reps))
    return QuotientMap(tuple(values), q)


def pt_prime(ps: PointSpace) -> tuple[FiniteConvergence, QuotientMap]:
    qm = quotient_map(ps)
    return final_conv(qm.q, ps.conv), qm


def down_in_classes(qm: QuotientMap, L: FiniteConvLattice, c: int) -> int:
    """Classes whose lam-value lies below ``c``."""
    lat = L.lattice
    return sum(1 << k for k, v in enumerate(qm.class_rep) if lat.leq(v, c))


# ---------------------------------------------------------------------------
# enough closed / open elements

@dataclass(frozen=True)
class EnoughElements:
    enough_closed: bool
    enough_open: bool
    missing_closed: tuple[int, ...] = ()
    missing_open: tuple[int, ...] = ()


def enough_elements(L: FiniteConvLattice, ps: PointSpace | None = None) -> EnoughElements:
    ps = ps or pt_space(L)
    closed_images = {ps.bullet_table[c] for c in bits(L.closed_mask)}
    open_images = {ps.bullet_table[u] for u in bits(L.open_mask)}
    miss_c = tuple(c for c in ps.conv.closed_sets if c not in closed_images)
    miss_o = tuple(o for o in ps.conv.open_sets if o not in open_images)
    return EnoughElements(not miss_c, not miss_o, miss_c, miss_o)


@dataclass
class UpperTopologyReport:
    enough_closed: bool
    holds: bool | None            # None when the hypothesis fails
    family: tuple[int, ...] = ()  # complements of down-sets of closed elements
    family_is_topology: bool | None = None
    modification: tuple[int, ...] = ()


def upper_topology_check(L: FiniteConvLattice, ps: PointSpace | None = None) -> UpperTopologyReport:
    """Compare the topological modification of pt'L with the sets pt'L minus down(c), c closed."""
    ps = ps or pt_space(L)
    conv2, qm = pt_prime(ps)
    enough = enough_elements(L, ps).enough_closed
    full = conv2.full
    family = tuple(sorted({full & ~down_in_classes(qm, L, c) for c in bits(L.closed_mask)}))
    tmod = topological_modification(conv2)
    if not enough:
        return UpperTopologyReport(False, None, family, None, tmod.sorted_opens)
    generated = topology_generated(conv2.carrier, family)
    raw_ok = set(family) == set(generated.opens)
    return UpperTopologyReport(
        True, generated == tmod and raw_ok, family, raw_ok, tmod.sorted_opens
    )
