"""Separation, sobriety and closedness properties of finite convergences.

Each checker returns ``(verdict, witness)``.  A witness is a tuple of subset
masks (points are given as singleton masks) naming the least violation in
mask order; it is ``None`` exactly when the verdict is true.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import CharacterizationMismatch, EmptyFilterBase, UnknownProperty
from .fincov import (
    FiniteConvergence,
    Subset,
    bits,
    conv_of_topology,
    topological_modification,
)

Witness = tuple[int, ...] | None


class PropertyId(str, enum.Enum):
    T0 = "t0"
    T1 = "t1"
    S0 = "s0"
    TD = "td"
    ANTISYMMETRIC = "antisymmetric"
    AAS = "aas"
    SOBER = "sober"
    WEAKLY_SOBER = "weakly_sober"
    QUASI_SOBER = "quasi_sober"
    WEAKLY_QUASI_SOBER = "weakly_quasi_sober"
    CLOSED_LIMITS = "closed_limits"
    CLOSED_ULTRAFILTER_LIMITS = "closed_ultrafilter_limits"
    CLOSED_IRREDUCIBLE_LIMITS = "closed_irreducible_limits"
    CLOSED_IRREDUCIBLE_ULTRAFILTER_LIMITS = "closed_irreducible_ultrafilter_limits"
    CLOSED_PRINCIPAL_LIMITS = "closed_principal_limits"
    CLOSED_ADHERENCES = "closed_adherences"
    PSEUDOTOPOLOGICAL = "pseudotopological"
    TOPOLOGICAL = "topological"
    FINITE_DEPTH = "finite_depth"

    @classmethod
    def parse(cls, text: str) -> "PropertyId":
        key = text.strip().lower().replace("-", "_")
        for p in cls:
            if p.value == key or p.name.lower() == key:
                return p
        raise UnknownProperty(text)


P = PropertyId


# ---------------------------------------------------------------------------
# filters with special behaviour

def is_irreducible(conv: FiniteConvergence, a: Subset) -> bool:
    """``{a}^`` contains its own limit set."""
    if a == 0:
        raise EmptyFilterBase()
    return a & ~conv.table[a] == 0


def irreducible_sets(conv: FiniteConvergence) -> list[int]:
    t = conv.table
    return [a for a in conv.carrier.nonempty() if a & ~t[a] == 0]


def ultrafilters(conv: FiniteConvergence) -> list[int]:
    """Ultrafilters of a finite set, as the masks of their generators."""
    return [1 << i for i in range(conv.n)]


def generic_points(conv: FiniteConvergence, a: Subset) -> list[int]:
    """Points ``x`` whose principal ultrafilter has the same limit as ``{a}^``."""
    target = conv.lim(a)
    return [i for i, s in enumerate(conv.singletons) if s == target]


def is_compact_filter(conv: FiniteConvergence, a: Subset) -> bool:
    if a == 0:
        raise EmptyFilterBase()
    adh = conv.adh
    return all(adh[b] & a for b in conv.carrier.nonempty() if b & a)


def is_compactoid_filter(conv: FiniteConvergence, a: Subset) -> bool:
    if a == 0:
        raise EmptyFilterBase()
    adh = conv.adh
    return all(adh[b] for b in conv.carrier.nonempty() if b & a)


def all_filters_compact(conv: FiniteConvergence) -> bool:
    return all(is_compact_filter(conv, a) for a in conv.carrier.nonempty())


# ---------------------------------------------------------------------------
# checkers

def _t0(c: FiniteConvergence) -> tuple[bool, Witness]:
    cols = [0] * c.n
    for a in c.carrier.nonempty():
        lim = c.table[a]
        for i in bits(lim):
            cols[i] |= 1 << a
    seen: dict[int, int] = {}
    for i, col in enumerate(cols):
        if col in seen:
            return False, (1 << seen[col], 1 << i)
        seen[col] = i
    return True, None


def _t1(c):
    for i, s in enumerate(c.singletons):
        if s != 1 << i:
            return False, (1 << i,)
    return True, None


def _s0(c):
    adh = c.adh
    for a in c.carrier.nonempty():
        lim = c.table[a]
        extra = adh[lim] & ~lim
        if extra:
            t = extra & -extra
            x = next(i for i in bits(lim) if c.singletons[i] & t)
            return False, (a, 1 << x, t)
    return True, None


def _td_filters(c):
    sing = c.singletons
    for i in range(c.n):
        x = 1 << i
        for a in c.carrier.nonempty():
            if c.table[a] & x and sing[i] & a & ~x:
                return False, (x, a)
    return True, None


def _td_ultrafilters(c):
    sing = c.singletons
    for i in range(c.n):
        x = 1 << i
        for u in ultrafilters(c):
            if c.table[u] & x and sing[i] & u & ~x:
                return False, (x, u)
    return True, None


def _td(c):
    verdict = _td_filters(c)
    if verdict[0] != _td_ultrafilters(c)[0]:
        raise CharacterizationMismatch("filter and ultrafilter forms of TD disagree")
    return verdict


def _antisymmetric(c):
    sing = c.singletons
    for i in range(c.n):
        for j in range(i + 1, c.n):
            if sing[i] >> j & 1 and sing[j] >> i & 1:
                return False, (1 << i, 1 << j)
    return True, None


def _aas(c):
    seen: dict[int, int] = {}
    for i, s in enumerate(c.singletons):
        if s in seen:
            return False, (1 << seen[s], 1 << i)
        seen[s] = i
    return True, None


def _generic_counts(c, candidates, unique):
    sing = c.singletons
    counts: dict[int, int] = {}
    for s in sing:
        counts[s] = counts.get(s, 0) + 1
    for a in candidates:
        k = counts.get(c.table[a], 0)
        if k == 0 or (unique and k > 1):
            return False, (a,)
    return True, None


def _sober(c):
    return _generic_counts(c, irreducible_sets(c), True)


def _quasi_sober(c):
    return _generic_counts(c, irreducible_sets(c), False)


def _irreducible_ultrafilters(c):
    return [u for u in ultrafilters(c) if u & ~c.table[u] == 0]


def _weakly_sober(c):
    return _generic_counts(c, _irreducible_ultrafilters(c), True)


def _weakly_quasi_sober(c):
    return _generic_counts(c, _irreducible_ultrafilters(c), False)


def _closed_for(c, filters):
    closed = c.closed_flags
    for a in filters:
        if not closed[c.table[a]]:
            return False, (a,)
    return True, None


def _closed_limits(c):
    return _closed_for(c, c.carrier.nonempty())


def _closed_ultra(c):
    return _closed_for(c, ultrafilters(c))


def _closed_irreducible(c):
    return _closed_for(c, irreducible_sets(c))


def _closed_irreducible_ultra(c):
    return _closed_for(c, _irreducible_ultrafilters(c))


def _closed_principal(c):
    closed = c.closed_flags
    for i, s in enumerate(c.singletons):
        if not closed[s]:
            return False, (1 << i,)
    return True, None


def _closed_adherences(c):
    closed = c.closed_flags
    adh = c.adh
    for a in c.carrier.nonempty():
        if not closed[adh[a]]:
            return False, (a,)
    return True, None


def _finite_depth(c):
    t = c.table
    full = c.full
    for a in range(1, full + 1):
        for b in range(a + 1, full + 1):
            if t[a | b] != t[a] & t[b]:
                return False, (a, b)
    return True, None


def _pseudotopological(c):
    # lim {A}^ must contain the meet of the limits of the ultrafilters finer than it
    result: tuple[bool, Witness] = (True, None)
    sing = c.singletons
    for a in c.carrier.nonempty():
        meet = c.full
        for i in bits(a):
            meet &= sing[i]
        if meet & ~c.table[a]:
            result = (False, (a,))
            break
    if result[0] != c.finite_depth_hint or result[0] != _finite_depth(c)[0]:
        raise CharacterizationMismatch("pseudotopological and finite depth disagree on a finite carrier")
    return result


def _topological(c):
    opens = c.open_sets
    result: tuple[bool, Witness] = (True, None)
    for a in c.carrier.nonempty():
        hull = c.full
        for o in opens:
            if a & ~o == 0:
                hull &= o
        if c.table[a] != c.table[hull]:
            result = (False, (a,))
            break
    if result[0] != (conv_of_topology(topological_modification(c)) == c):
        raise CharacterizationMismatch("open-regularity and topologicity disagree")
    return result


CHECKERS: dict[PropertyId, Callable[[FiniteConvergence], tuple[bool, Witness]]] = {
    P.T0: _t0,
    P.T1: _t1,
    P.S0: _s0,
    P.TD: _td,
    P.ANTISYMMETRIC: _antisymmetric,
    P.AAS: _aas,
    P.SOBER: _sober,
    P.WEAKLY_SOBER: _weakly_sober,
    P.QUASI_SOBER: _quasi_sober,
    P.WEAKLY_QUASI_SOBER: _weakly_quasi_sober,
    P.CLOSED_LIMITS: _closed_limits,
    P.CLOSED_ULTRAFILTER_LIMITS: _closed_ultra,
    P.CLOSED_IRREDUCIBLE_LIMITS: _closed_irreducible,
    P.CLOSED_IRREDUCIBLE_ULTRAFILTER_LIMITS: _closed_irreducible_ultra,
    P.CLOSED_PRINCIPAL_LIMITS: _closed_principal,
    P.CLOSED_ADHERENCES: _closed_adherences,
    P.PSEUDOTOPOLOGICAL: _pseudotopological,
    P.TOPOLOGICAL: _topological,
    P.FINITE_DEPTH: _finite_depth,
}


def check_property(conv: FiniteConvergence, prop: PropertyId | str) -> tuple[bool, Witness]:
    if not isinstance(prop, PropertyId):
        prop = PropertyId.parse(prop)
    try:
        checker = CHECKERS[prop]
    except KeyError:
        raise UnknownProperty(str(prop)) from None
    return checker(conv)


def holds(conv: FiniteConvergence, prop: PropertyId | str) -> bool:
    return check_property(conv, prop)[0]


@dataclass
class PropertyReport:
    verdicts: dict[PropertyId, bool] = field(default_factory=dict)
    witnesses: dict[PropertyId, Witness] = field(default_factory=dict)

    def failed(self) -> list[PropertyId]:
        return [p for p, v in self.verdicts.items() if not v]

    def render(self, conv: FiniteConvergence) -> list[str]:
        lines = []
        for p, v in self.verdicts.items():
            line = f"{p.value}={'true' if v else 'false'}"
            w = self.witnesses.get(p)
            if w is not None:
                line += "  witness " + " ".join(conv.carrier.fmt(m) for m in w)
            lines.append(line)
        return lines


def check_properties(conv: FiniteConvergence, props: Iterable[PropertyId | str] | None = None) -> PropertyReport:
    report = PropertyReport()
    for p in (list(PropertyId) if props is None else props):
        pid = p if isinstance(p, PropertyId) else PropertyId.parse(p)
        verdict, witness = check_property(conv, pid)
        report.verdicts[pid] = verdict
        report.witnesses[pid] = witness
    return report


# ---------------------------------------------------------------------------
# weak-diagonal implication diagram (nodes restricted to those defined above)

# (hypotheses, conclusion)
IMPLICATION_EDGES: tuple[tuple[tuple[PropertyId, ...], PropertyId], ...] = (
    ((P.TOPOLOGICAL,), P.CLOSED_LIMITS),
    ((P.TOPOLOGICAL,), P.CLOSED_ADHERENCES),
    ((P.CLOSED_ADHERENCES,), P.CLOSED_ULTRAFILTER_LIMITS),
    ((P.T1,), P.S0),
    ((P.CLOSED_LIMITS,), P.CLOSED_ULTRAFILTER_LIMITS),
    ((P.CLOSED_LIMITS,), P.S0),
    ((P.CLOSED_LIMITS,), P.CLOSED_IRREDUCIBLE_LIMITS),
    ((P.CLOSED_IRREDUCIBLE_LIMITS,), P.CLOSED_IRREDUCIBLE_ULTRAFILTER_LIMITS),
    ((P.CLOSED_IRREDUCIBLE_ULTRAFILTER_LIMITS,), P.CLOSED_PRINCIPAL_LIMITS),
    ((P.S0,), P.CLOSED_PRINCIPAL_LIMITS),
    ((P.PSEUDOTOPOLOGICAL, P.CLOSED_ULTRAFILTER_LIMITS), P.CLOSED_LIMITS),
    ((P.PSEUDOTOPOLOGICAL, P.CLOSED_IRREDUCIBLE_ULTRAFILTER_LIMITS), P.CLOSED_IRREDUCIBLE_LIMITS),
    ((P.T1,), P.TD),
    ((P.TD,), P.T0),
)


# ---------------------------------------------------------------------------
# specialization relation

@dataclass(frozen=True)
class Specialization:
    pairs: frozenset[tuple[int, int]]
    reflexive: bool
    transitive: bool
    antisymmetric: bool


def specialization_preorder(conv: FiniteConvergence) -> Specialization:
    """The relation ``x -> y`` iff ``y`` is a limit of ``{x}^``."""
    sing = conv.singletons
    pairs = frozenset((i, j) for i in range(conv.n) for j in bits(sing[i]))
    reflexive = all((i, i) in pairs for i in range(conv.n))
    transitive = all(
        (i, k) in pairs for (i, j) in pairs for k in bits(sing[j])
    )
    antisymmetric = all(i == j or (j, i) not in pairs for (i, j) in pairs)
    return Specialization(pairs, reflexive, transitive, antisymmetric)


# ---------------------------------------------------------------------------
# regularity with respect to a family of subsets

def trace_generator(conv: FiniteConvergence, family: Sequence[int], a: Subset) -> Subset:
    """Generator of the filter spanned by the members of ``family`` containing ``a``."""
    m = conv.full
    for z in family:
        if a & ~z == 0:
            m &= z
    return m


def z_regularity_witness(conv: FiniteConvergence, family: Iterable[int]) -> Witness:
    fam = list(family)
    for a in conv.carrier.nonempty():
        if conv.table[a] != conv.table[trace_generator(conv, fam, a)]:
            return (a,)
    return None


def is_z_regular_space(conv: FiniteConvergence, family: Iterable[int]) -> bool:
    return z_regularity_witness(conv, family) is None
