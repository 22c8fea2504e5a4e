import itertools

import pytest
from hypothesis import given, settings, strategies as st

from convlat.errors import JoinMissing, LatticeError, NotAPartialOrder, NotAntitone, NotMonotone
from convlat.fincov import SpaceMap, bits, conv_of_topology, discrete, is_continuous
from convlat.fixtures import chain3_trivial, example
from convlat.finlat import (
    Category,
    LatticeMap,
    ZKind,
    all_filters,
    antitone_maps,
    boolean_lattice,
    build_conv_lattice,
    build_lattice,
    chain,
    closed_elements,
    closed_elements_membership,
    closed_elements_mesh,
    identity_lattice_map,
    is_z_regular_lattice,
    lattice_continuity,
    lattice_from_covers,
    open_elements,
    open_elements_membership,
    open_elements_mesh,
    powerset_lattice,
    powerset_map,
    product_lattice,
    z_family,
)
from convlat.miner import Mode, enumerate_topologies, lattice_catalog, m3, n5, universe
from convlat.props import PropertyId as P, holds

SMALL = [chain(1), chain(2), chain(3), chain(4), boolean_lattice(("p", "q")), m3(), n5(),
         product_lattice(chain(2), chain(3))]


# --- construction -------------------------------------------------------------

def test_chain_and_diamond_are_lattices():
    c = chain(3)
    assert c.size == 3 and c.bottom == 0 and c.top == 2
    assert m3().size == 5


def test_missing_join():
    with pytest.raises(JoinMissing):
        lattice_from_covers(["bot", "a", "b"], [("bot", "a"), ("bot", "b")])


def test_not_a_partial_order():
    with pytest.raises(NotAPartialOrder):
        build_lattice(["a", "b"], [[True, True], [True, True]])
    with pytest.raises(NotAPartialOrder):
        build_lattice(["a", "b", "c"], [[True, True, False], [False, True, True], [False, False, True]])


@pytest.mark.parametrize("lat", SMALL, ids=repr)
def test_meet_and_join_are_bounds(lat):
    r = range(lat.size)
    for a, b in itertools.product(r, r):
        m, j = lat.meet(a, b), lat.join(a, b)
        assert lat.leq(m, a) and lat.leq(m, b) and lat.leq(a, j) and lat.leq(b, j)
        for c in r:
            if lat.leq(c, a) and lat.leq(c, b):
                assert lat.leq(c, m)
            if lat.leq(a, c) and lat.leq(b, c):
                assert lat.leq(j, c)


def test_distributivity():
    assert boolean_lattice(("p", "q", "r")).is_distributive()
    assert not m3().is_distributive()
    assert not n5().is_distributive()


@pytest.mark.parametrize("lat", SMALL, ids=repr)
def test_filters_are_principal(lat):
    assert sorted(all_filters(lat)) == sorted(lat.principal_filters())


# --- primality ------------------------------------------------------------------

def brute_prime(lat, p):
    up = lat.up[p]
    if p == lat.bottom:
        return False
    return all(up >> a & 1 or up >> b & 1 for a in range(lat.size) for b in range(lat.size)
               if up >> lat.join(a, b) & 1)


def brute_completely_prime(lat, p):
    up = lat.up[p]
    if p == lat.bottom:
        return False
    outside = [e for e in range(lat.size) if not up >> e & 1]
    for k in range(len(outside) + 1):
        for fam in itertools.combinations(outside, k):
            if up >> lat.join_all(fam) & 1:
                return False
    return True


@pytest.mark.parametrize("lat", SMALL, ids=repr)
def test_primality_matches_brute_force(lat):
    assert lat.prime_reps == tuple(p for p in range(lat.size) if brute_prime(lat, p))
    assert lat.completely_prime_reps == tuple(p for p in range(lat.size) if brute_completely_prime(lat, p))


def test_categories_coincide_on_catalog():
    for _, lat in lattice_catalog():
        assert lat.point_reps(Category.LAT) == lat.point_reps(Category.FRM) == lat.point_reps(Category.COFRM)


def test_every_proper_filter_of_a_chain_is_prime():
    c = chain(3)
    assert c.is_prime_filter(1) and c.is_prime_filter(2)
    assert not c.is_prime_filter(0)


def test_prime_filters_of_two_point_powerset():
    lat = boolean_lattice(("x", "y"))
    assert lat.is_prime_filter(0b01)
    assert not lat.is_prime_filter(0b11)


def test_pseudocomplements():
    lat = boolean_lattice(("p", "q", "r"))
    assert all(lat.pseudocomplement(e) == 7 ^ e for e in range(8))
    assert set(z_family(powerset_lattice(discrete(["a", "b", "c"])), ZKind.DOUBLE_PSEUDOCOMPLEMENT)) == set(range(8))


# --- convergence lattices ------------------------------------------------------------

def test_chain3_trivial_limits():
    L = chain3_trivial()
    assert L.lam == (2, 2, 2)


def test_limit_map_must_be_antitone():
    with pytest.raises(NotAntitone):
        build_conv_lattice(chain(3), [2, 0, 2])
    with pytest.raises(LatticeError):
        build_conv_lattice(chain(2), [0, 1])


def brute_antitone_count(lat):
    others = [e for e in range(lat.size) if e != lat.bottom]
    count = 0
    for values in itertools.product(range(lat.size), repeat=len(others)):
        lam = [lat.top] * lat.size
        for e, v in zip(others, values):
            lam[e] = v
        if all(lat.leq(lam[b], lam[a]) for a in range(lat.size) for b in range(lat.size) if lat.leq(a, b)):
            count += 1
    return count


@pytest.mark.parametrize("lat", [chain(2), chain(3), chain(4), boolean_lattice(("p", "q")), m3(), n5()], ids=repr)
def test_antitone_map_enumeration(lat):
    maps = antitone_maps(lat)
    assert len(maps) == len(set(maps)) == brute_antitone_count(lat)


def test_powerset_lattice_of_point():
    L = powerset_lattice(discrete(["a"]))
    assert L.size == 2 and L.lam[1] == 1


def test_powerset_lattice_of_e1():
    e1 = example("E1")
    L = powerset_lattice(e1)
    assert L.size == 8
    assert all(L.lam[a] == e1.table[a] for a in range(1, 8))


@settings(max_examples=200)
@given(st.sampled_from(universe(3, Mode.FULL)))
def test_closed_and_open_elements_of_powerset_are_closed_and_open_sets(conv):
    L = powerset_lattice(conv)
    assert closed_elements(L) == tuple(sorted(conv.closed_sets))
    assert open_elements(L) == tuple(sorted(conv.open_sets))
    assert closed_elements_membership(L) == closed_elements_mesh(L)
    assert open_elements_membership(L) == open_elements_mesh(L)


def test_closed_and_open_forms_agree_on_generated_lattices():
    for _, lat in lattice_catalog(8):
        for lam in antitone_maps(lat)[::7]:
            L = build_conv_lattice(lat, lam)
            assert closed_elements_membership(L) == closed_elements_mesh(L)
            assert open_elements_membership(L) == open_elements_mesh(L)


def test_z_families():
    e6 = example("E6")
    L = powerset_lattice(e6)
    assert set(z_family(L, ZKind.COMPLEMENTED)) == set(range(8))
    assert not is_z_regular_lattice(L, open_elements(L))
    assert is_z_regular_lattice(L, range(L.size))
    for top in enumerate_topologies(3):
        T = powerset_lattice(conv_of_topology(top))
        assert set(z_family(T, ZKind.OPEN)) == set(top.opens)
        assert is_z_regular_lattice(T, open_elements(T))


# --- lattice maps -----------------------------------------------------------------------

def test_powerset_maps():
    src = discrete(["a", "b"])
    ident = powerset_map(SpaceMap(src.carrier, src.carrier, (0, 1)))
    assert ident.table == (0, 1, 2, 3)
    const = powerset_map(SpaceMap(src.carrier, src.carrier, (1, 1)))
    assert const.table == (0, 0, 3, 3)
    one = discrete(["a"])
    inc = powerset_map(SpaceMap(one.carrier, src.carrier, (0,)))
    assert inc.table == (0, 1, 0, 1)


def test_identity_is_continuous_lattice_map():
    L = chain3_trivial()
    assert lattice_continuity(identity_lattice_map(L.lattice), L, L).continuous


def test_lattice_map_must_be_monotone():
    L = chain3_trivial()
    phi = LatticeMap(L.lattice, L.lattice, (2, 1, 0))
    with pytest.raises(NotMonotone):
        lattice_continuity(phi, L, L)


def test_powerset_map_continuity_matches_space_continuity():
    spaces = universe(2, Mode.FULL)
    seen = set()
    for xi in spaces:
        for tau in spaces:
            for table in itertools.product(range(2), repeat=2):
                f = SpaceMap(xi.carrier, tau.carrier, table)
                phi = powerset_map(f)
                report = lattice_continuity(phi, powerset_lattice(tau), powerset_lattice(xi))
                expected = is_continuous(f, xi, tau)
                assert report.continuous == expected
                seen.add(expected)
    assert seen == {True, False}


def test_product_lattice():
    p = product_lattice(chain(2), chain(3))
    assert p.size == 6 and p.is_distributive()
