"""Exhaustive enumeration of small convergences, topologies and convergence lattices,
plus implication surveys over those universes."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import TooLarge
from .fincov import (
    FiniteConvergence,
    FiniteTopology,
    PointSet,
    _make,
    bits,
    build_finite_depth,
)
from .finlat import (
    FiniteConvLattice,
    FiniteLattice,
    antitone_maps,
    boolean_lattice,
    chain,
    lattice_from_covers,
    powerset_lattice,
    product_lattice,
)
from .props import PropertyId, holds

DEFAULT_NAMES = ("a", "b", "c", "d", "e")


class Mode(str, enum.Enum):
    FINITE_DEPTH = "fd"
    FULL = "full"


MAX_N = {Mode.FINITE_DEPTH: 5, Mode.FULL: 3}


@dataclass(frozen=True)
class EnumSpec:
    n: int
    mode: Mode = Mode.FINITE_DEPTH
    filters: tuple[PropertyId, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.n < 0 or self.n > MAX_N[self.mode]:
            raise TooLarge(f"{self.mode.value} enumeration supports n <= {MAX_N[self.mode]}")

    @property
    def carrier(self) -> PointSet:
        return PointSet(DEFAULT_NAMES[: self.n])


def _fd_spaces(carrier: PointSet) -> Iterator[FiniteConvergence]:
    n = carrier.n
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for code in range(1 << len(pairs)):
        rel = [1 << i for i in range(n)]
        for k in bits(code):
            i, j = pairs[k]
            rel[i] |= 1 << j
        yield build_finite_depth(carrier, rel)


def _full_spaces(carrier: PointSet) -> Iterator[FiniteConvergence]:
    full = carrier.full
    order = sorted(range(1, full + 1), key=lambda a: (-a.bit_count(), a))
    table = [full] * (full + 1)

    def rec(k: int) -> Iterator[FiniteConvergence]:
        if k == len(order):
            yield _make(carrier, table, validate=False)
            return
        a = order[k]
        low = a if a.bit_count() == 1 else 0
        for i in range(carrier.n):
            if not a >> i & 1:
                low |= table[a | (1 << i)]
        free = full & ~low
        for extra in _submasks_ascending(free):
            table[a] = low | extra
            yield from rec(k + 1)
        table[a] = full

    yield from rec(0)


def _submasks_ascending(mask: int) -> Iterator[int]:
    positions = list(bits(mask))
    for code in range(1 << len(positions)):
        yield sum(1 << positions[k] for k in bits(code))


def enumerate_spaces(spec: EnumSpec) -> Iterator[FiniteConvergence]:
    """Every labeled convergence of the given kind, in a fixed order."""
    gen = _fd_spaces(spec.carrier) if spec.mode is Mode.FINITE_DEPTH else _full_spaces(spec.carrier)
    for conv in gen:
        if all(holds(conv, p) for p in spec.filters):
            yield conv


@lru_cache(maxsize=None)
def universe(n: int, mode: Mode | str = Mode.FINITE_DEPTH) -> tuple[FiniteConvergence, ...]:
    return tuple(enumerate_spaces(EnumSpec(n, Mode(mode))))


def enumerate_topologies(n: int) -> list[FiniteTopology]:
    """All labeled topologies on ``n`` points, by brute force over families of subsets."""
    if n > 4:
        raise TooLarge("topology enumeration supports n <= 4")
    carrier = PointSet(DEFAULT_NAMES[:n])
    full = carrier.full
    middle = [s for s in range(1, full)]
    out = []
    for code in range(1 << len(middle)):
        fam = {0, full} | {middle[k] for k in bits(code)}
        if all((u | v) in fam and (u & v) in fam for u in fam for v in fam):
            out.append(FiniteTopology(carrier, frozenset(fam)))
    return out


# ---------------------------------------------------------------------------
# implication surveys

Condition = PropertyId | tuple[PropertyId, ...]


def _as_tuple(c: Condition) -> tuple[PropertyId, ...]:
    return c if isinstance(c, tuple) else (c,)


def condition_name(c: Condition) -> str:
    return "&".join(p.value for p in _as_tuple(c))


@dataclass
class Survey:
    size: int
    conditions: list[Condition]
    counterexamples: dict[tuple[int, int], FiniteConvergence | None] = field(default_factory=dict)
    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    def implies(self, p: Condition, q: Condition) -> bool:
        return self.counterexample(p, q) is None

    def counterexample(self, p: Condition, q: Condition) -> FiniteConvergence | None:
        return self.counterexamples[(self.conditions.index(p), self.conditions.index(q))]

    def failures(self, p: Condition, q: Condition) -> int:
        return self.counts[(self.conditions.index(p), self.conditions.index(q))]


def survey(spaces: Iterable[FiniteConvergence] | EnumSpec, conditions: Sequence[Condition]) -> Survey:
    """Implication matrix with the first counterexample (in enumeration order) for each pair."""
    if isinstance(spaces, EnumSpec):
        spaces = enumerate_spaces(spaces)
    conds = list(conditions)
    atoms = sorted({p for c in conds for p in _as_tuple(c)}, key=lambda p: p.value)
    k = len(conds)
    result = Survey(0, conds)
    for i in range(k):
        for j in range(k):
            result.counterexamples[(i, j)] = None
            result.counts[(i, j)] = 0
    for conv in spaces:
        result.size += 1
        v = {p: holds(conv, p) for p in atoms}
        truth = [all(v[p] for p in _as_tuple(c)) for c in conds]
        for i in range(k):
            if not truth[i]:
                continue
            for j in range(k):
                if not truth[j]:
                    result.counts[(i, j)] += 1
                    if result.counterexamples[(i, j)] is None:
                        result.counterexamples[(i, j)] = conv
    return result


# ---------------------------------------------------------------------------
# convergence lattices

def m3() -> FiniteLattice:
    return lattice_from_covers(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"), ("a", "top"), ("b", "top"), ("c", "top")],
    )


def n5() -> FiniteLattice:
    return lattice_from_covers(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")],
    )


def diamond_stack(k: int) -> FiniteLattice:
    """``k`` copies of the four-element Boolean lattice glued top-to-bottom."""
    names = ["m0"]
    pairs = []
    for i in range(k):
        lo, hi = f"m{i}", f"m{i + 1}"
        a, b = f"a{i}", f"b{i}"
        names += [a, b, hi]
        pairs += [(lo, a), (lo, b), (a, hi), (b, hi)]
    return lattice_from_covers(names, pairs)


def lattice_catalog(size_cap: int = 16) -> list[tuple[str, FiniteLattice]]:
    items = [(f"chain{k}", chain(k)) for k in range(1, 7)]
    items += [
        ("bool2", boolean_lattice(("p", "q"))),
        ("chain2xchain3", product_lattice(chain(2), chain(3))),
        ("chain2xchain4", product_lattice(chain(2), chain(4))),
        ("bool3", boolean_lattice(("p", "q", "r"))),
        ("M3", m3()),
        ("N5", n5()),
        ("diamond2", diamond_stack(2)),
    ]
    return [(name, lat) for name, lat in items if lat.size <= size_cap]


@dataclass(frozen=True)
class GeneratedLattice:
    source: str
    lattice: FiniteConvLattice


def generate_conv_lattices(size_cap: int = 16) -> Iterator[GeneratedLattice]:
    """Every antitone limit map on each catalog lattice, then the powerset lattices of
    all convergences on at most three points."""
    if size_cap > 16:
        raise TooLarge("lattice generation is capped at 16 elements")
    for name, lat in lattice_catalog(size_cap):
        for lam in antitone_maps(lat):
            yield GeneratedLattice(name, FiniteConvLattice(lat, lam))
    for n in range(0, 4):
        if (1 << n) > size_cap:
            break
        for conv in universe(n, Mode.FULL):
            yield GeneratedLattice(f"P(full{n})", powerset_lattice(conv))
