import itertools

import pytest
from hypothesis import given, settings, strategies as st

from convlat.errors import EmptyFilterBase, NotAPoint
from convlat.fincov import (
    PointSet,
    SpaceMap,
    bits,
    conv_of_topology,
    discrete,
    find_homeomorphism,
    is_continuous,
)
from convlat.fixtures import chain3_trivial, example, sierpinski
from convlat.finlat import (
    Category,
    LatticeMap,
    antitone_maps,
    build_conv_lattice,
    chain,
    powerset_lattice,
    powerset_map,
)
from convlat.miner import Mode, enumerate_topologies, lattice_catalog, universe
from convlat.points import (
    bullet,
    circle,
    enough_elements,
    extract_points,
    is_point,
    pt_morphism,
    pt_prime,
    pt_space,
    quotient_map,
    upper_topology_check,
)
from convlat.props import PropertyId as P, holds

full3 = st.sampled_from(universe(3, Mode.FULL))


def catalog_lattices(cap=8, step=3):
    for name, lat in lattice_catalog(cap):
        for lam in antitone_maps(lat)[::step]:
            yield build_conv_lattice(lat, lam)


def test_points_of_powerset_of_e1_are_singletons():
    L = powerset_lattice(example("E1"))
    for cat in Category:
        assert [p.rep for p in extract_points(L, cat)] == [1, 2, 4]


def test_points_of_chain3():
    L = chain3_trivial()
    assert [p.rep for p in extract_points(L)] == [1, 2]
    assert is_point(L, 1) and not is_point(L, 0)


def test_bullets():
    ps = pt_space(powerset_lattice(discrete(["x", "y"])))
    assert bullet(ps, 0b01) == 0b01
    assert bullet(ps, 0b11) == 0b11
    assert bullet(ps, 0) == 0


def test_circle_of_a_point_is_the_point():
    L = chain3_trivial()
    ps = pt_space(L)
    for k, p in enumerate(ps.reps):
        assert circle(ps, 1 << k)[1] == p
    with pytest.raises(EmptyFilterBase):
        circle(ps, 0)


def test_lattice_without_points():
    lat = chain(1)
    L = build_conv_lattice(lat, [0])
    ps = pt_space(L)
    assert ps.n == 0 and ps.conv.n == 0


@settings(max_examples=200)
@given(full3)
def test_pt_of_powerset_is_the_space(conv):
    for cat in Category:
        ps = pt_space(powerset_lattice(conv), cat)
        assert ps.reps == tuple(1 << i for i in range(conv.n))
        assert ps.conv.table == conv.table


def brute_pt_limits(L, reps):
    """lim of {F}^ in pt L straight from the definition: points containing lam(join F)."""
    lat = L.lattice
    n = len(reps)
    table = [(1 << n) - 1] * (1 << n)
    for f in range(1, 1 << n):
        j = lat.join_all(reps[k] for k in bits(f))
        table[f] = sum(1 << k for k, p in enumerate(reps) if lat.leq(p, L.lam[j]))
    return tuple(table)


def test_pt_limits_match_definition_on_catalog():
    count = 0
    for L in catalog_lattices():
        ps = pt_space(L)
        assert ps.conv.table == brute_pt_limits(L, list(ps.reps))
        count += 1
    assert count > 100


def brute_quotient_limits(ps, q, target_n):
    """Final convergence: B converges to y when some A with q(A) inside B... read off filter images."""
    conv = ps.conv
    table = [0] * (1 << target_n)
    for i in range(target_n):
        table[1 << i] = 1 << i
    for b in range(1, 1 << target_n):
        for a in range(1, conv.full + 1):
            # q({A}^) is {q(A)}^, which is coarser than {B}^ when B is inside q(A)
            if b & ~q.image(a) == 0:
                table[b] |= q.image(conv.table[a])
    return tuple(table[1:])


def test_pt_prime_is_the_final_convergence():
    for L in catalog_lattices():
        ps = pt_space(L)
        conv2, qm = pt_prime(ps)
        assert conv2.table[1:] == brute_quotient_limits(ps, qm.q, conv2.n)
        assert is_continuous(qm.q, ps.conv, conv2)


def test_chain3_points_collapse():
    ps = pt_space(chain3_trivial())
    conv2, qm = pt_prime(ps)
    assert conv2.n == 1
    assert qm.class_rep == (2,)


def test_pt_prime_of_sierpinski():
    conv = conv_of_topology(sierpinski())
    conv2, _ = pt_prime(pt_space(powerset_lattice(conv)))
    assert find_homeomorphism(conv2, conv) is not None


def test_injective_limits_give_isomorphic_pt_prime():
    for L in catalog_lattices():
        ps = pt_space(L)
        if len({L.lam[p] for p in ps.reps}) != ps.n:
            continue
        conv2, qm = pt_prime(ps)
        q = qm.q
        assert q.is_injective() and q.is_onto()
        assert is_continuous(q, ps.conv, conv2) and is_continuous(q.inverse(), conv2, ps.conv)


def test_pt_morphism_of_identity():
    L = powerset_lattice(example("E6"))
    ps = pt_space(L)
    f = pt_morphism(LatticeMap(L.lattice, L.lattice, tuple(range(L.size))), ps, ps)
    assert f.table == (0, 1, 2)


@settings(max_examples=100)
@given(full3, full3, st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_pt_of_powerset_map_is_the_map(xi, tau, table):
    f = SpaceMap(xi.carrier, tau.carrier, tuple(table))
    phi = powerset_map(f)
    src, dst = pt_space(powerset_lattice(tau)), pt_space(powerset_lattice(xi))
    g = pt_morphism(phi, src, dst)
    assert g.table == f.table
    assert is_continuous(g, dst.conv, src.conv) == is_continuous(f, xi, tau)


def test_pt_morphism_rejects_non_point_preimages():
    # bottom-preserving constant map to the top: the preimage of a point filter is everything
    lat = chain(3)
    L = build_conv_lattice(lat, [2, 2, 2])
    ps = pt_space(L)
    phi = LatticeMap(lat, lat, (0, 0, 0))
    with pytest.raises(NotAPoint):
        pt_morphism(phi, ps, ps)


def test_quotient_classes_are_sorted_limit_values():
    for L in catalog_lattices():
        ps = pt_space(L)
        qm = quotient_map(ps)
        assert list(qm.class_rep) == sorted(set(qm.class_rep))
        for k in range(len(qm.class_rep)):
            assert all(L.lam[ps.reps[x]] == qm.class_rep[k] for x in bits(qm.members(k)))


def test_powerset_lattices_have_enough_elements():
    for conv in universe(3, Mode.FINITE_DEPTH):
        e = enough_elements(powerset_lattice(conv))
        assert e.enough_closed and e.enough_open


def test_upper_topology_on_powerset_of_topologies():
    for top in enumerate_topologies(3):
        report = upper_topology_check(powerset_lattice(conv_of_topology(top)))
        assert report.enough_closed and report.holds


def test_upper_topology_hypothesis_reported():
    missing = []
    for L in catalog_lattices(16, 1):
        report = upper_topology_check(L)
        if not report.enough_closed:
            missing.append(L)
            assert report.holds is None
        else:
            assert report.holds
    assert missing


def test_one_point_lattice_case():
    L = build_conv_lattice(chain(2), [1, 1])
    report = upper_topology_check(L)
    assert report.enough_closed and report.holds
