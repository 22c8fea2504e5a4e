"""Named small spaces used throughout the test-suite and the verification suites.

``E1`` .. ``E7`` are the seven worked examples of the theory (multiple
generic points, S0 without T0, sober but not of finite depth, sober of finite
depth but not T0, weakly sober but not sober, sober with non-sober
topological modification, and the T_D three-cycle).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .fincov import (
    FiniteConvergence,
    FiniteTopology,
    PointSet,
    build_convergence,
    build_finite_depth,
    conv_of_topology,
    from_arrows,
    topology_from_opens,
)
from .finlat import FiniteConvLattice, build_conv_lattice, chain


def _fd(names: str, limits: dict[str, str]) -> FiniteConvergence:
    carrier = PointSet(tuple(names.split()))
    rel = [carrier.mask(limits.get(x, x).split()) for x in carrier.names]
    return build_finite_depth(carrier, rel)


def multigeneric() -> FiniteConvergence:
    return from_arrows(PointSet.of("x", "y", "z"), [("z", "x"), ("x", "y"), ("y", "x")])


def multigeneric_s0() -> FiniteConvergence:
    return from_arrows(PointSet.of("x", "y", "z"), [("x", "y"), ("y", "x")])


def finite_depth_not_sober() -> FiniteConvergence:
    carrier = PointSet.of("x", "y", "s", "t")
    m = carrier.mask
    table = {a: 0 for a in carrier.nonempty()}
    table[m("x")] = m("x y s".split())
    table[m("y")] = m("x y t".split())
    table[m("s")] = m("s")
    table[m("t")] = m("t")
    return build_convergence(carrier, table)


def sober_fd_not_t0() -> FiniteConvergence:
    return _fd("x y z s t", {"x": "x y z s", "y": "x y z t", "z": "x y z"})


def weakly_sober_not_sober() -> FiniteConvergence:
    return _fd("x y t s w z", {"x": "x y s t", "y": "x y t w", "z": "z x"})


def sober_topmod_not_sober() -> FiniteConvergence:
    return _fd("x y z", {"x": "x y", "y": "x y z", "z": "y z"})


def td_cycle() -> FiniteConvergence:
    return _fd("x y z", {"x": "x y", "y": "y z", "z": "z x"})


def sierpinski() -> FiniteTopology:
    carrier = PointSet.of("0", "1")
    return topology_from_opens(carrier, [0, carrier.mask(["1"]), carrier.full])


def chain3_trivial() -> FiniteConvLattice:
    lat = chain(3)
    return build_conv_lattice(lat, [lat.top] * 3)


EXAMPLES = {
    "E1": multigeneric,
    "E2": multigeneric_s0,
    "E3": finite_depth_not_sober,
    "E4": sober_fd_not_t0,
    "E5": weakly_sober_not_sober,
    "E6": sober_topmod_not_sober,
    "E7": td_cycle,
}


def example(name: str) -> FiniteConvergence:
    return EXAMPLES[name]()


@dataclass(frozen=True)
class Claim:
    """A stated fact about one example, checked by the ``paper_examples`` suite."""

    key: str
    expected: object
    note: str = ""


@dataclass
class Profile:
    name: str
    claims: list[Claim] = field(default_factory=list)


def _sets(conv: FiniteConvergence, *groups: str) -> frozenset[int]:
    return frozenset(conv.carrier.mask(g.split()) for g in groups)


def profiles() -> dict[str, Profile]:
    """Expected property profile of each example.

    Keys are either a property id (``t0``, ``sober``, ...) or one of the
    computed facts understood by :func:`convlat.suites.evaluate_claim`.
    """
    e = {k: f() for k, f in EXAMPLES.items()}
    m = {k: c.carrier.mask for k, c in e.items()}
    out: dict[str, Profile] = {}

    out["E1"] = Profile("E1", [
        Claim("t0", True), Claim("s0", False), Claim("aas", False),
        Claim("quasi_sober", True), Claim("weakly_sober", False),
        Claim("finite_depth", True), Claim("td", False),
        Claim("lim:x y z", m["E1"](["x"])), Claim("lim:y z", m["E1"](["x"])),
        Claim("lim:x z", m["E1"](["x"])), Claim("lim:z", m["E1"](["z", "x"])),
        Claim("lim:x y", m["E1"](["x", "y"])),
    ])
    out["E2"] = Profile("E2", [
        Claim("s0", True), Claim("t0", False), Claim("aas", False),
        Claim("quasi_sober", True), Claim("weakly_sober", False),
        Claim("finite_depth", True), Claim("td", False),
        Claim("lim:x y z", 0), Claim("lim:y z", 0), Claim("lim:x z", 0),
        Claim("lim:x y", m["E2"](["x", "y"])),
    ])
    out["E3"] = Profile("E3", [
        Claim("finite_depth", False), Claim("sober", True), Claim("t0", False),
        Claim("td", False),
        Claim("fd_mod.lim:x y", m["E3"](["x", "y"])),
        Claim("fd_mod.irreducible:x y", True),
        Claim("fd_mod.sober", False),
    ])
    out["E4"] = Profile("E4", [
        Claim("finite_depth", True), Claim("sober", True), Claim("t0", False),
        Claim("td", False),
        Claim("lim:x y", m["E4"]("x y z".split())), Claim("lim:x z", m["E4"]("x y z".split())),
        Claim("lim:y z", m["E4"]("x y z".split())), Claim("lim:x y z", m["E4"]("x y z".split())),
        Claim("generic:x y", m["E4"](["z"])), Claim("generic:x z", m["E4"](["z"])),
        Claim("generic:y z", m["E4"](["z"])), Claim("generic:x y z", m["E4"](["z"])),
    ])
    out["E5"] = Profile("E5", [
        Claim("t0", True), Claim("weakly_sober", True), Claim("finite_depth", True),
        Claim("sober", False), Claim("td", False),
        Claim("irreducible:x y", True), Claim("generic:x y", 0),
    ])
    out["E6"] = Profile("E6", [
        Claim("t0", True), Claim("sober", True), Claim("finite_depth", True),
        Claim("td", False),
        Claim("lim:x y", m["E6"](["x", "y"])), Claim("lim:x z", m["E6"](["y"])),
        Claim("lim:x y z", m["E6"](["y"])), Claim("lim:y z", m["E6"](["y", "z"])),
        Claim("irreducibles", _sets(e["E6"], "x", "y", "z", "x y", "y z")),
        Claim("generic:x", m["E6"](["x"])), Claim("generic:x y", m["E6"](["x"])),
        Claim("generic:y", m["E6"](["y"])), Claim("generic:z", m["E6"](["z"])),
        Claim("generic:y z", m["E6"](["z"])),
        Claim("top_mod.antidiscrete", True), Claim("top_mod.t0", False),
        Claim("top_mod.sober", False),
    ])
    out["E7"] = Profile("E7", [
        Claim("finite_depth", True), Claim("td", True),
        Claim("top_mod.antidiscrete", True), Claim("top_mod.t0", False),
        Claim("top_mod.td", False),
    ])
    return out
