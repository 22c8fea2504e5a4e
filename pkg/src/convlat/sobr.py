"""Irreducible closed sets and the sobrification of finite topological spaces."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CharacterizationMismatch
from .fincov import (
    FiniteConvergence,
    FiniteTopology,
    PointSet,
    SpaceMap,
    Subset,
    bits,
    conv_of_topology,
    find_homeomorphism,
    initial_conv,
    is_continuous,
    is_dense,
    topological_modification,
)
from .finlat import powerset_lattice
from .points import pt_prime, pt_space
from .props import holds, is_irreducible, PropertyId


def _c_irreducible_closed_cover(closed: tuple[int, ...], c: Subset) -> bool:
    for d in closed:
        if c & ~d == 0:
            continue
        for f in closed:
            if c & ~(d | f) == 0 and c & ~f:
                return False
    return True


def _c_irreducible_open_pairs(opens: tuple[int, ...], c: Subset) -> bool:
    meeting = [o for o in opens if o & c]
    return all(o & u & c for o in meeting for u in meeting)


def is_c_irreducible(conv: FiniteConvergence | FiniteTopology, c: Subset) -> bool:
    """No two closed sets cover ``c`` unless one of them already does."""
    if isinstance(conv, FiniteTopology):
        closed, opens = conv.closed_sets, conv.sorted_opens
    else:
        closed, opens = conv.closed_sets, conv.open_sets
    a = _c_irreducible_closed_cover(closed, c)
    if a != _c_irreducible_open_pairs(opens, c):
        raise CharacterizationMismatch("closed-cover and open-pair forms of irreducibility disagree")
    return a


def irreducible_closed_sets(top: FiniteTopology) -> list[int]:
    return [c for c in top.closed_sets if c and is_c_irreducible(top, c)]


@dataclass(frozen=True, eq=False)
class Sobrification:
    base: FiniteTopology
    s_points: tuple[int, ...]    # irreducible closed subsets of the base
    s_opens: frozenset[int]      # masks over s_points
    e: tuple[int, ...]           # point -> index of its closure
    topology: FiniteTopology

    @property
    def conv(self) -> FiniteConvergence:
        return conv_of_topology(self.topology)

    def hull(self, o: Subset) -> int:
        """The open set of irreducible closed sets meeting ``o``."""
        return sum(1 << k for k, c in enumerate(self.s_points) if c & o)


def sobrify(top: FiniteTopology) -> Sobrification:
    closures = [top.closure(1 << i) for i in range(top.carrier.n)]
    irr = irreducible_closed_sets(top)
    first = {}
    for i, c in enumerate(closures):
        first.setdefault(c, i)
    if set(irr) != set(first):
        raise CharacterizationMismatch("irreducible closed sets are not the point closures")
    s_points = tuple(sorted(irr, key=lambda c: first[c]))
    names = tuple(top.carrier.names[first[c]] for c in s_points)
    carrier = PointSet(names)

    def hull(o: int) -> int:
        return sum(1 << k for k, c in enumerate(s_points) if c & o)

    opens = sorted(top.opens)
    for o in opens:
        for u in opens:
            if hull(o & u) != hull(o) & hull(u):
                raise CharacterizationMismatch("hull of an intersection differs from the intersection of hulls")
    s_opens = frozenset(hull(o) for o in opens)
    pos = {c: k for k, c in enumerate(s_points)}
    e = tuple(pos[c] for c in closures)
    return Sobrification(top, s_points, s_opens, e, FiniteTopology(carrier, s_opens))


@dataclass
class SobrificationReport:
    homeomorphic: bool
    canonical_homeomorphism: bool
    e_matches: bool
    pt_prime_sober_topological: bool
    t0: bool
    dense: bool | None = None
    embedding: bool | None = None
    notes: list[str] | None = None

    @property
    def ok(self) -> bool:
        base = self.homeomorphic and self.canonical_homeomorphism and self.e_matches
        base = base and self.pt_prime_sober_topological
        if self.t0:
            base = base and bool(self.dense) and bool(self.embedding)
        return base


def verify_sobrification_theorem(top: FiniteTopology) -> SobrificationReport:
    conv = conv_of_topology(top)
    L = powerset_lattice(conv)
    ps = pt_space(L)
    pconv, qm = pt_prime(ps)
    s = sobrify(top)
    sconv = s.conv

    homeo = find_homeomorphism(pconv, sconv) is not None
    # classes are indexed by their lam-value, which is a point closure
    pos = {c: k for k, c in enumerate(s.s_points)}
    canonical_ok = all(v in pos for v in qm.class_rep)
    if canonical_ok:
        phi = SpaceMap(pconv.carrier, sconv.carrier, tuple(pos[v] for v in qm.class_rep))
        canonical_ok = (
            phi.is_injective() and phi.is_onto()
            and is_continuous(phi, pconv, sconv) and is_continuous(phi.inverse(), sconv, pconv)
        )
    # h: x -> up({x}); points of P(X) are listed in mask order, i.e. by x
    point_of = {p: k for k, p in enumerate(ps.reps)}
    h = [point_of[1 << i] for i in range(top.carrier.n)]
    e_ok = canonical_ok and all(
        pos[qm.class_rep[qm.q(h[i])]] == s.e[i] for i in range(top.carrier.n)
    )
    sober_top = holds(pconv, PropertyId.TOPOLOGICAL) and holds(pconv, PropertyId.SOBER)

    t0 = top.is_t0()
    report = SobrificationReport(homeo, canonical_ok, e_ok, sober_top, t0)
    emap = SpaceMap(top.carrier, sconv.carrier, s.e)
    report.dense = is_dense(sconv, emap.image(top.carrier.full))
    if t0:
        report.embedding = (
            emap.is_injective()
            and is_continuous(emap, conv, sconv)
            and initial_conv(emap, sconv) == conv
        )
    else:
        report.notes = ["e is not injective on a non-T0 space; embedding clause skipped"]
    return report


# ---------------------------------------------------------------------------
# c-irreducible sets in convergence spaces

def cirreducible_witness(
    conv: FiniteConvergence, c: Subset, tconv: FiniteConvergence | None = None
) -> int | None:
    """A point ``x`` whose limit under the topological modification is the closure of ``c``.

    Points whose closure contains ``c`` are tried first, then the rest.
    """
    if tconv is None:
        tconv = conv_of_topology(topological_modification(conv))
    target = conv.closure(c)
    n = conv.n
    preferred = [i for i in range(n) if c & ~conv.closure(1 << i) == 0]
    for i in preferred + [i for i in range(n) if i not in preferred]:
        if tconv.table[1 << i] == target and is_irreducible(tconv, 1 << i):
            return i
    return None


def limits_of_irreducibles_are_c_irreducible(conv: FiniteConvergence) -> int | None:
    """Least irreducible ``A`` whose limit is not c-irreducible, or None."""
    for a in conv.carrier.nonempty():
        if is_irreducible(conv, a) and not is_c_irreducible(conv, conv.table[a]):
            return a
    return None


def closure_of_irreducible_limits(conv: FiniteConvergence) -> int | None:
    """Least irreducible ``A`` with ``cl(lim A)`` different from its limit under the topological modification."""
    tconv = conv_of_topology(topological_modification(conv))
    for a in conv.carrier.nonempty():
        if is_irreducible(conv, a) and conv.closure(conv.table[a]) != tconv.table[a]:
            return a
    return None
