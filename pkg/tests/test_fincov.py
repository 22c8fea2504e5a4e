import itertools

import pytest
from hypothesis import given, settings, strategies as st

from convlat.errors import MissingEntry, MonotonicityViolation, NotReflexive, NotSurjective, PointAxiomViolation
from convlat.fincov import (
    PointSet,
    SpaceMap,
    adherence,
    adherence_by_definition,
    adherence_by_points,
    antidiscrete,
    antidiscrete_topology,
    bits,
    build_convergence,
    build_finite_depth,
    compare,
    conv_of_topology,
    discrete,
    discrete_topology,
    final_conv,
    find_homeomorphism,
    finite_depth_modification,
    identity_map,
    initial_conv,
    is_continuous,
    is_dense,
    is_finer,
    mesh,
    product,
    quotient,
    set_status,
    subspace,
    sup_conv,
    inf_conv,
    topological_modification,
    transport,
)
from convlat.fixtures import example, sierpinski
from convlat.miner import Mode, enumerate_topologies, universe
from convlat.props import PropertyId as P, holds

full3 = st.sampled_from(universe(3, Mode.FULL))
fd4 = st.sampled_from(universe(4, Mode.FINITE_DEPTH))
any_space = st.one_of(full3, fd4)


def m(conv, *names):
    return conv.carrier.mask(names)


# --- construction -----------------------------------------------------------

def test_e6_table_is_finitely_deep():
    e6 = example("E6")
    assert e6.finite_depth_hint
    assert e6.lim(m(e6, "x")) == m(e6, "x", "y")
    assert e6.lim(m(e6, "y")) == e6.full
    assert e6.lim(m(e6, "x", "z")) == m(e6, "y")


def test_e3_table_is_not_finitely_deep():
    e3 = example("E3")
    assert not e3.finite_depth_hint
    assert e3.lim(m(e3, "x", "y")) == 0


def test_point_axiom_enforced():
    carrier = PointSet.of("x", "y")
    with pytest.raises(PointAxiomViolation):
        build_convergence(carrier, {1: 0, 2: 2, 3: 0})


def test_monotonicity_enforced():
    carrier = PointSet.of("x", "y")
    with pytest.raises(MonotonicityViolation):
        build_convergence(carrier, {1: 1, 2: 2, 3: 3})


def test_missing_entry():
    carrier = PointSet.of("x", "y")
    with pytest.raises(MissingEntry):
        build_convergence(carrier, {1: 1, 2: 2})


def test_finite_depth_needs_reflexive_relation():
    with pytest.raises(NotReflexive):
        build_finite_depth(PointSet.of("a", "b"), [1, 1])


def test_arrows_of_multigeneric_example():
    e1 = example("E1")
    assert e1.lim(e1.full) == m(e1, "x")
    assert e1.lim(m(e1, "z")) == m(e1, "z", "x")


def test_discrete_and_antidiscrete():
    d = discrete(["a", "b"])
    assert d.table[1:] == (1, 2, 0)
    a = antidiscrete(["a", "b"])
    assert a.table[1:] == (3, 3, 3)


# --- counts (independent oracles) -------------------------------------------

def count_full_tables(n):
    """Count antitone limit tables with the point axiom by nesting over subset sizes."""
    full = (1 << n) - 1
    subsets = sorted(range(1, full + 1), key=lambda a: (a.bit_count(), a))

    def rec(k, table):
        if k == len(subsets):
            return 1
        a = subsets[k]
        bound = full
        for i in bits(a):
            if a != 1 << i:
                bound &= table[a & ~(1 << i)]
        must = a if a.bit_count() == 1 else 0
        total = 0
        for v in range(full + 1):
            if v & ~bound == 0 and v & must == must:
                table[a] = v
                total += rec(k + 1, table)
        return total

    return rec(0, {})


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_full_universe_size_matches_oracle(n):
    assert len(universe(n, Mode.FULL)) == count_full_tables(n)


def test_full_universe_sizes_frozen():
    assert [len(universe(n, Mode.FULL)) for n in range(4)] == [1, 1, 9, 2744]


@pytest.mark.parametrize("n, size", [(2, 4), (3, 64), (4, 4096)])
def test_finite_depth_universe_sizes(n, size):
    assert len(universe(n, Mode.FINITE_DEPTH)) == size


def test_full_universe_has_no_duplicates():
    spaces = universe(3, Mode.FULL)
    assert len(set(spaces)) == len(spaces)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_topology_counts(n, count):
    tops = enumerate_topologies(n)
    assert len(tops) == count
    # labeled topologies are the topological finite-depth convergences
    as_convs = {conv_of_topology(t) for t in tops}
    assert as_convs == {c for c in universe(n, Mode.FINITE_DEPTH) if holds(c, P.TOPOLOGICAL)}


# --- limits, adherence, closure ---------------------------------------------

@settings(max_examples=200)
@given(any_space, st.data())
def test_adherence_forms_agree(conv, data):
    b = data.draw(st.integers(1, conv.full))
    assert adherence_by_definition(conv, b) == adherence_by_points(conv, b) == adherence(conv, b)


def test_adherence_examples():
    e6 = example("E6")
    assert adherence(e6, m(e6, "x")) == m(e6, "x", "y")
    assert adherence(antidiscrete(["a", "b"]), 1) == 3
    assert adherence(discrete(["a", "b"]), 3) == 3


def test_mesh():
    assert mesh(0b1, 0b11)
    assert not mesh(0b1, 0b10)
    assert not mesh(0, 0b11)


def test_set_status():
    e6 = example("E6")
    assert not set_status(e6, m(e6, "x", "y")).closed
    s = set_status(e6, 0)
    assert s.closed and s.open
    d = discrete(["a", "b", "c"])
    assert all(set_status(d, s).closed and set_status(d, s).open for s in range(8))


@settings(max_examples=200)
@given(any_space)
def test_closed_sets_form_a_topology(conv):
    closed = set(conv.closed_sets)
    assert 0 in closed and conv.full in closed
    for a, b in itertools.combinations(closed, 2):
        assert a | b in closed and a & b in closed


@settings(max_examples=200)
@given(any_space, st.data())
def test_closure_is_a_closure_operator(conv, data):
    s = data.draw(st.integers(0, conv.full))
    c = conv.closure(s)
    assert s & ~c == 0
    assert conv.closure(c) == c
    assert conv.closed_flags[c]


# --- modifications ------------------------------------------------------------

def test_topological_modifications_of_examples_are_antidiscrete():
    for name in ("E6", "E7"):
        conv = example(name)
        assert topological_modification(conv).opens == frozenset({0, conv.full})


def test_topological_modification_fixes_topologies():
    for top in enumerate_topologies(3):
        assert topological_modification(conv_of_topology(top)) == top


def test_finite_depth_modification_of_e3():
    e3 = example("E3")
    fd = finite_depth_modification(e3)
    assert fd.lim(m(e3, "x", "y")) == m(e3, "x", "y")
    assert finite_depth_modification(example("E6")) == example("E6")


@settings(max_examples=200)
@given(full3)
def test_modifications_are_coarser(conv):
    tmod = conv_of_topology(topological_modification(conv))
    assert is_finer(conv, tmod)
    assert is_finer(conv, finite_depth_modification(conv))
    assert is_finer(finite_depth_modification(conv), tmod)


def test_topology_convergences():
    top = sierpinski()
    conv = conv_of_topology(top)
    assert conv.lim(m(conv, "1")) == conv.full
    assert conv.lim(m(conv, "0")) == m(conv, "0")
    assert conv.lim(conv.full) == m(conv, "0")
    assert conv_of_topology(discrete_topology(["a", "b"])) == discrete(["a", "b"])
    assert conv_of_topology(antidiscrete_topology(["a", "b"])) == antidiscrete(["a", "b"])


# --- order and lattice of convergences ----------------------------------------

def test_compare():
    d, a = discrete(["a", "b"]), antidiscrete(["a", "b"])
    assert is_finer(d, a) and not is_finer(a, d)
    assert compare(d, d) == "equal"


@settings(max_examples=100)
@given(full3, full3)
def test_sup_and_inf_are_bounds(a, b):
    sup, inf = sup_conv([a, b]), inf_conv([a, b])
    assert is_finer(sup, a) and is_finer(sup, b)
    assert is_finer(a, inf) and is_finer(b, inf)


# --- maps -----------------------------------------------------------------------

@settings(max_examples=200)
@given(any_space)
def test_identity_is_continuous(conv):
    assert is_continuous(identity_map(conv.carrier), conv, conv)


@settings(max_examples=100)
@given(full3, st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_initial_and_final_convergences(conv, table):
    f = SpaceMap(conv.carrier, conv.carrier, tuple(table))
    init = initial_conv(f, conv)
    assert is_continuous(f, init, conv)
    fin = final_conv(f, conv)
    assert is_continuous(f, conv, fin)
    # initial is the coarsest, final the finest such convergence
    for other in universe(3, Mode.FULL)[::37]:
        if is_continuous(f, other, conv):
            assert is_finer(other, init)
        if is_continuous(f, conv, other):
            assert is_finer(fin, other)


def test_quotient_needs_onto_map():
    conv = discrete(["a", "b"])
    with pytest.raises(NotSurjective):
        quotient(conv, SpaceMap(conv.carrier, conv.carrier, (0, 0)))


def test_subspace_of_discrete_is_discrete():
    conv = discrete(["a", "b", "c"])
    assert subspace(conv, 0b101) == discrete(["a", "c"])


def test_subspace_removing_a_point_from_a_limit():
    # on E6, drop y from lim{y} = {x, y, z}: the remaining pair is discrete
    e6 = example("E6")
    sub = subspace(e6, m(e6, "x", "z"))
    assert sub.names == ("x", "z")
    assert sub.table[1:] == (1, 2, 0)


def test_product_of_points():
    p = product([discrete(["a"]), discrete(["b"])])
    assert p.n == 1 and p.table[1] == 1


def test_product_projections_continuous():
    a, b = example("E7"), sierpinski()
    bconv = conv_of_topology(b)
    p = product([a, bconv])
    for k, c in enumerate((a, bconv)):
        proj = SpaceMap(p.carrier, c.carrier, tuple(i // 2 if k == 0 else i % 2 for i in range(p.n)))
        assert is_continuous(proj, p, c)


def test_density():
    conv = conv_of_topology(sierpinski())
    assert is_dense(conv, m(conv, "1"))
    assert not is_dense(conv, m(conv, "0"))


# --- homeomorphisms ---------------------------------------------------------------

def brute_force_homeomorphic(a, b):
    if a.n != b.n:
        return False
    for perm in itertools.permutations(range(a.n)):
        f = SpaceMap(a.carrier, b.carrier, perm)
        if is_continuous(f, a, b) and is_continuous(f.inverse(), b, a):
            return True
    return False


@settings(max_examples=300)
@given(full3, full3)
def test_find_homeomorphism_matches_brute_force(a, b):
    assert (find_homeomorphism(a, b) is not None) == brute_force_homeomorphic(a, b)


@settings(max_examples=100)
@given(fd4, st.permutations(range(4)))
def test_transported_space_is_homeomorphic(conv, perm):
    phi = SpaceMap(conv.carrier, conv.carrier, tuple(perm))
    moved = transport(conv, phi)
    h = find_homeomorphism(conv, moved)
    assert h is not None
    assert is_continuous(h, conv, moved) and is_continuous(h.inverse(), moved, conv)
