"""Named verification suites.

Each suite runs a family of checks over a fixed universe of finite
structures (the worked examples, exhaustive enumerations, generated
convergence lattices) and returns a :class:`SuiteResult`.  Reports are
line-oriented: ``#`` header lines (degenerate cases, hypothesis counts),
one ``SUITE <name> PASS|FAIL <cases> <failures>`` verdict line, then one
serialized witness per failure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .dsl import render_lattice, render_space, render_topology
from .errors import CharacterizationMismatch, UnknownSuite
from .fincov import (
    FiniteConvergence,
    FiniteTopology,
    PointSet,
    SpaceMap,
    adherence_by_definition,
    adherence_by_points,
    bits,
    conv_of_topology,
    finite_depth_modification,
    find_homeomorphism,
    initial_conv,
    is_closed_map,
    is_continuous,
    is_dense,
    is_finer,
    is_open_map,
    product,
    subspace,
    topological_modification,
)
from .finlat import (
    Category,
    FiniteConvLattice,
    _closed_membership,
    _closed_mesh,
    _open_membership,
    _open_mesh,
    is_z_regular_lattice,
    open_elements,
    closed_elements,
    powerset_lattice,
)
from .fixtures import EXAMPLES, profiles
from .miner import Mode, enumerate_topologies, generate_conv_lattices, universe
from .points import (
    PointSpace,
    QuotientMap,
    circle,
    down_in_classes,
    enough_elements,
    pt_prime,
    pt_space,
    quotient_map,
    upper_topology_check,
)
from .props import (
    IMPLICATION_EDGES,
    PropertyId as P,
    _td_filters,
    _td_ultrafilters,
    generic_points,
    holds,
    irreducible_sets,
    is_compact_filter,
    is_irreducible,
    is_z_regular_space,
    specialization_preorder,
)
from .sobr import (
    _c_irreducible_closed_cover,
    _c_irreducible_open_pairs,
    cirreducible_witness,
    is_c_irreducible,
    sobrify,
    verify_sobrification_theorem,
)

MAX_WITNESSES = 10


@dataclass
class Failure:
    claim: str
    witness: str = ""


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    unmet: dict[str, int] = field(default_factory=dict)  # hypothesis name -> instances failing it

    @property
    def passed(self) -> bool:
        return not self.failures

    def verdict(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"SUITE {self.name} {status} {self.cases} {len(self.failures)}"

    def report(self) -> str:
        lines = [f"# {n}" for n in self.notes]
        for hyp, k in self.unmet.items():
            lines.append(f"# hypothesis unmet ({hyp}): {k} of {self.cases}")
        lines.append(self.verdict())
        for f in self.failures[:MAX_WITNESSES]:
            lines.append(f"# failure: {f.claim}")
            if f.witness:
                lines.append(f.witness)
        if len(self.failures) > MAX_WITNESSES:
            lines.append(f"# ... {len(self.failures) - MAX_WITNESSES} more failures")
        return "\n".join(lines)


class _Run:
    """Accumulates checks for one suite."""

    def __init__(self, name: str):
        self.result = SuiteResult(name)

    def case(self, k: int = 1) -> None:
        self.result.cases += k

    def note(self, text: str) -> None:
        self.result.notes.append(text)

    def unmet(self, hyp: str) -> None:
        self.result.unmet[hyp] = self.result.unmet.get(hyp, 0) + 1

    def hyp(self, name: str) -> None:
        self.result.unmet.setdefault(name, 0)

    def check(self, ok: bool, claim: str, witness: Callable[[], str] | str = "") -> bool:
        if not ok:
            text = witness() if callable(witness) else witness
            self.result.failures.append(Failure(claim, text))
        return ok

    def guarded(self, fn: Callable[[], None], claim: str, witness: Callable[[], str] | str = "") -> None:
        """Run ``fn``; an internal cross-check mismatch counts as a failure."""
        try:
            fn()
        except CharacterizationMismatch as exc:
            self.check(False, f"{claim}: {exc}", witness)


def _ws(conv: FiniteConvergence, name: str = "W") -> str:
    return render_space(name, conv)


def _wl(L: FiniteConvLattice, source: str = "", name: str = "L") -> str:
    head = f"# from {source}\n" if source else ""
    return head + render_lattice(name, L)


def _wt(top: FiniteTopology, name: str = "T") -> str:
    return render_topology(name, top)


# ---------------------------------------------------------------------------
# universes

def fd_spaces(max_n: int = 4) -> Iterator[FiniteConvergence]:
    for n in range(max_n + 1):
        yield from universe(n, Mode.FINITE_DEPTH)


def full_spaces(max_n: int = 3) -> Iterator[FiniteConvergence]:
    for n in range(max_n + 1):
        yield from universe(n, Mode.FULL)


def small_spaces() -> Iterator[FiniteConvergence]:
    """Finite-depth spaces on at most four points, then all convergences on at most three."""
    yield from fd_spaces(4)
    yield from full_spaces(3)


@lru_cache(maxsize=None)
def topologies(max_n: int = 4) -> tuple[FiniteTopology, ...]:
    return tuple(t for n in range(max_n + 1) for t in enumerate_topologies(n))


@dataclass(frozen=True, eq=False)
class LatticeCase:
    source: str
    lattice: FiniteConvLattice
    ps: PointSpace
    conv2: FiniteConvergence
    qm: QuotientMap


@lru_cache(maxsize=None)
def lattice_cases() -> tuple[LatticeCase, ...]:
    out = []
    for g in generate_conv_lattices():
        ps = pt_space(g.lattice)
        conv2, qm = pt_prime(ps)
        out.append(LatticeCase(g.source, g.lattice, ps, conv2, qm))
    return tuple(out)


# ---------------------------------------------------------------------------
# the worked examples

def evaluate_claim(conv: FiniteConvergence, key: str) -> object:
    """Compute the fact named by ``key`` (see :func:`convlat.fixtures.profiles`)."""
    if key.startswith("fd_mod."):
        return evaluate_claim(finite_depth_modification(conv), key[len("fd_mod."):])
    if key == "top_mod.antidiscrete":
        return topological_modification(conv).opens == frozenset({0, conv.full})
    if key.startswith("top_mod."):
        return evaluate_claim(conv_of_topology(topological_modification(conv)), key[len("top_mod."):])
    if ":" in key:
        kind, names = key.split(":", 1)
        a = conv.carrier.mask(names.split())
        if kind == "lim":
            return conv.table[a]
        if kind == "generic":
            return sum(1 << i for i in generic_points(conv, a))
        if kind == "irreducible":
            return is_irreducible(conv, a)
        raise KeyError(key)
    if key == "irreducibles":
        return frozenset(irreducible_sets(conv))
    return holds(conv, key)


def suite_paper_examples() -> SuiteResult:
    run = _Run("paper_examples")
    profs = profiles()
    for name, make in EXAMPLES.items():
        conv = make()
        run.case()
        for claim in profs[name].claims:
            got = evaluate_claim(conv, claim.key)
            run.check(got == claim.expected, f"{name} {claim.key}: expected {claim.expected!r}, got {got!r}",
                      lambda: _ws(conv, name))
    return run.result


# ---------------------------------------------------------------------------
# implication diagram

NON_IMPLICATIONS = ((P.T0, P.TD), (P.TD, P.T1), (P.S0, P.CLOSED_LIMITS))


def _edge_name(edge) -> str:
    ante, cons = edge
    return "&".join(p.value for p in ante) + " => " + cons.value


def suite_figure1() -> SuiteResult:
    run = _Run("figure1")
    atoms = sorted({p for a, c in IMPLICATION_EDGES for p in (*a, c)} | {p for pair in NON_IMPLICATIONS for p in pair},
                   key=lambda p: p.value)
    universes = [
        ("finite depth, 3 points", universe(3, Mode.FINITE_DEPTH)),
        ("finite depth, 4 points", universe(4, Mode.FINITE_DEPTH)),
        ("all convergences, 3 points", universe(3, Mode.FULL)),
    ]
    witnesses: dict[tuple[P, P], FiniteConvergence | None] = {pair: None for pair in NON_IMPLICATIONS}
    converse = {(P.CLOSED_ULTRAFILTER_LIMITS, P.CLOSED_LIMITS): 0,
                (P.CLOSED_IRREDUCIBLE_ULTRAFILTER_LIMITS, P.CLOSED_IRREDUCIBLE_LIMITS): 0}
    for label, spaces in universes:
        first_bad: dict[int, FiniteConvergence] = {}
        for conv in spaces:
            run.case()
            v = {p: holds(conv, p) for p in atoms}
            for k, (ante, cons) in enumerate(IMPLICATION_EDGES):
                if all(v[p] for p in ante) and not v[cons] and k not in first_bad:
                    first_bad[k] = conv
            for pair in NON_IMPLICATIONS:
                if witnesses[pair] is None and v[pair[0]] and not v[pair[1]]:
                    witnesses[pair] = conv
            for a, b in converse:
                if v[a] and not v[b]:
                    converse[(a, b)] += 1
        for k, conv in sorted(first_bad.items()):
            run.check(False, f"{_edge_name(IMPLICATION_EDGES[k])} on {label}", lambda: _ws(conv))
    for (p, q), w in witnesses.items():
        if w is None:
            run.check(False, f"no witness for {p.value} =/=> {q.value} on any enumerated universe")
        else:
            run.note(f"witness for {p.value} =/=> {q.value}: " + _ws(w).replace("\n", " "))
    for (a, b), k in converse.items():
        run.note(f"without pseudotopologicity {a.value} =/=> {b.value}: {k} counterexamples among all convergences on 3 points")
    return run.result


# ---------------------------------------------------------------------------
# sobriety variants

def suite_wsober_equiv() -> SuiteResult:
    run = _Run("wsober_equiv")
    run.hyp("limits of principal ultrafilters closed")
    for conv in small_spaces():
        run.case()
        ws, wqs = holds(conv, P.WEAKLY_SOBER), holds(conv, P.WEAKLY_QUASI_SOBER)
        aas, anti, t0 = holds(conv, P.AAS), holds(conv, P.ANTISYMMETRIC), holds(conv, P.T0)
        w = lambda: _ws(conv)
        run.check(ws == (wqs and aas), "weakly sober <=> weakly quasi-sober & aas", w)
        run.check(not anti or t0, "antisymmetric => T0", w)
        if holds(conv, P.CLOSED_PRINCIPAL_LIMITS):
            run.check(ws == (wqs and anti) == (wqs and aas),
                      "closed principal limits: weakly sober, wqs & antisymmetric, wqs & aas agree", w)
            run.check(not ws or t0, "closed principal limits & weakly sober => T0", w)
            sing = conv.singletons
            for i, j in itertools.combinations(range(conv.n), 2):
                both = sing[i] >> j & 1 and sing[j] >> i & 1
                run.check(bool(both) == (sing[i] == sing[j]),
                          "closed principal limits: mutual limits <=> equal limits", w)
        else:
            run.unmet("limits of principal ultrafilters closed")
        if holds(conv, P.T0) and holds(conv, P.S0):
            run.check(anti, "T0 & S0 => antisymmetric", w)
        if ws and holds(conv, P.CLOSED_IRREDUCIBLE_LIMITS):
            run.check(holds(conv, P.SOBER), "weakly sober & closed irreducible limits => sober", w)
        if ws and holds(conv, P.TOPOLOGICAL):
            run.check(holds(conv, P.SOBER), "weakly sober topological => sober", w)
    return run.result


def suite_finer_sober() -> SuiteResult:
    """Inheritance of (weak) sobriety by finer convergences."""
    run = _Run("finer_sober")
    props = (P.SOBER, P.WEAKLY_SOBER)
    for conv in small_spaces():
        run.case()
        tconv = conv_of_topology(topological_modification(conv))
        for p in props:
            if holds(tconv, p):
                run.check(holds(conv, p), f"topological modification {p.value} => {p.value}", lambda: _ws(conv))
    pools = [universe(n, Mode.FINITE_DEPTH) for n in range(4)] + [universe(n, Mode.FULL) for n in range(3)]
    for pool in pools:
        for tau in pool:
            sober_tau = {p: holds(tau, p) for p in props}
            if not any(sober_tau.values()):
                continue
            top_tau = holds(tau, P.TOPOLOGICAL)
            for xi in pool:
                if xi is tau or not is_finer(xi, tau):
                    continue
                run.case()
                for p in props:
                    if sober_tau[p] and not holds(xi, p):
                        kind = "topological " if top_tau else ""
                        run.check(False, f"finer than a {kind}{p.value} convergence => {p.value}",
                                  lambda: _ws(xi, "Finer") + "\n" + _ws(tau, "Coarser"))
    return run.result


# ---------------------------------------------------------------------------
# points of powerset lattices

def suite_pt_identification() -> SuiteResult:
    run = _Run("pt_identification")
    for conv in itertools.chain(fd_spaces(4), full_spaces(3)):
        L = powerset_lattice(conv)
        for cat in Category:
            run.case()
            w = lambda: f"# category {cat.value}\n" + _ws(conv)
            ps = pt_space(L, cat)
            if not run.check(ps.reps == tuple(1 << i for i in range(conv.n)),
                             f"points of the powerset lattice are the singletons ({cat.value})", w):
                continue
            h = SpaceMap(conv.carrier, ps.conv.carrier, tuple(range(conv.n)))
            homeo = (is_continuous(h, conv, ps.conv) and is_continuous(h.inverse(), ps.conv, conv))
            run.check(homeo and ps.conv.table == conv.table,
                      f"x -> up(x) is a homeomorphism onto pt ({cat.value})", w)
            run.check(is_dense(ps.conv, h.image(conv.full)), f"image of x -> up(x) is dense ({cat.value})", w)
            if holds(conv, P.CLOSED_IRREDUCIBLE_ULTRAFILTER_LIMITS):
                run.check(holds(ps.conv, P.WEAKLY_SOBER) == holds(conv, P.AAS),
                          "pt(P X) weakly sober <=> distinct points have distinct limits", w)
    return run.result


# ---------------------------------------------------------------------------
# points of convergence lattices

def aas_in_lattice(L: FiniteConvLattice, reps: Iterable[int]) -> bool:
    """For points up(p), up(q): lam(p) ^ lam(q) in up(p) n up(q) forces p = q."""
    lat, lam = L.lattice, L.lam
    reps = list(reps)
    return not any(
        lat.leq(lat.join(p, q), lat.meet(lam[p], lam[q])) for p, q in itertools.combinations(reps, 2)
    )


def _lattice_checks_pt(run: _Run, case: LatticeCase) -> None:
    L, ps = case.lattice, case.ps
    lat, lam, conv, bt = L.lattice, L.lam, ps.conv, ps.bullet_table
    reps, qm = ps.reps, case.qm
    w = lambda: _wl(L, case.source)

    run.check(lat.point_reps(Category.LAT) == lat.point_reps(Category.FRM) == lat.point_reps(Category.COFRM),
              "prime, completely prime and join-prime points coincide", w)
    run.check(holds(conv, P.WEAKLY_QUASI_SOBER), "pt L is weakly quasi-sober", w)
    for k, p in enumerate(reps):
        run.check(circle(ps, 1 << k)[1] == p, "trace of a principal point filter is the point", w)

    for c in closed_elements(L):
        run.check(conv.closed_flags[bt[c]], "bullet of a closed element is closed", w)
    for u in open_elements(L):
        run.check(conv.closed_flags[conv.full ^ bt[u]], "bullet of an open element is open", w)
    sat = lambda s: qm.q.preimage(qm.q.image(s)) == s
    run.check(all(sat(c) for c in conv.closed_sets) and all(sat(o) for o in conv.open_sets),
              "open and closed subsets of pt L are saturated", w)
    run.check(is_z_regular_space(conv, set(bt)), "pt L is regular for the bullets of L", w)

    if L.has_closed_limits:
        run.check(holds(conv, P.CLOSED_LIMITS), "closed limits in L => closed limits in pt L", w)
    else:
        run.unmet("L has closed limits")
    lam_closed = all(L.is_closed(lam[p]) for p in reps)
    aasl = aas_in_lattice(L, reps)
    if aasl:
        run.check(holds(conv, P.AAS) and holds(conv, P.WEAKLY_SOBER),
                  "aas condition in L => pt L aas and weakly sober", w)
    else:
        run.unmet("aas condition in L")
    if lam_closed:
        run.check(holds(conv, P.CLOSED_PRINCIPAL_LIMITS),
                  "closed point limits in L => closed principal limits in pt L", w)
        five = (
            holds(conv, P.WEAKLY_SOBER),
            holds(conv, P.ANTISYMMETRIC),
            holds(conv, P.AAS),
            aasl,
            len({lam[p] for p in reps}) == len(reps),
        )
        run.check(len(set(five)) == 1, f"five-way equivalence under closed point limits {five}", w)
    else:
        run.unmet("limits of points are closed")

    opens = open_elements(L)
    o_regular = is_z_regular_lattice(L, opens)
    enough = enough_elements(L, ps)
    if o_regular and enough.enough_open:
        run.check(holds(conv, P.TOPOLOGICAL), "open-regular with enough open elements => pt L topological", w)
    else:
        run.unmet("open-regular with enough open elements")


def _lattice_checks_ptprime(run: _Run, case: LatticeCase) -> None:
    L, ps, conv2, qm = case.lattice, case.ps, case.conv2, case.qm
    lat, lam, conv, bt = L.lattice, L.lam, ps.conv, ps.bullet_table
    reps, q = ps.reps, qm.q
    full2 = conv2.full
    w = lambda: _wl(L, case.source)

    run.check(is_continuous(q, conv, conv2), "q is continuous", w)
    run.check(is_open_map(q, conv, conv2) and is_closed_map(q, conv, conv2), "q is open and closed", w)
    tmod = topological_modification(conv)
    run.check(tmod.opens == frozenset(q.preimage(v) for v in conv2.open_sets),
              "topological modification of pt L is initial for q", w)
    for c in closed_elements(L):
        run.check(q.preimage(full2 & ~down_in_classes(qm, L, c)) == conv.full & ~bt[c],
                  "preimage of pt'L minus down(c) is pt L minus the bullet of c", w)
    run.check(is_z_regular_space(conv2, {q.image(b) for b in bt}), "pt'L is regular for the images of bullets", w)

    opens = open_elements(L)
    o_regular = is_z_regular_lattice(L, opens)
    c_regular = is_z_regular_lattice(L, closed_elements(L))
    if o_regular or c_regular:
        for k in range(conv2.n):
            for x in bits(qm.members(k)):
                run.check(conv2.table[1 << k] == q.image(conv.table[1 << x]),
                          "open- or closed-regular: pt' limit of a class is the image of a member's limit", w)
    else:
        run.unmet("open- or closed-regular")

    if L.has_closed_limits:
        join = [lat.bottom] * (conv.full + 1)
        for a in range(1, conv.full + 1):
            low = a & -a
            join[a] = lat.join(join[a ^ low], reps[low.bit_length() - 1])
            below = sum(1 << x for x, p in enumerate(reps) if lat.leq(lam[p], lam[join[a]]))
            run.check(conv.table[a] == below, "closed limits: x in lim F <=> lam(x) <= lam(F)", w)
        for b in range(1, full2 + 1):
            lim = conv2.table[b]
            closed_down = 0
            for k in bits(lim):
                closed_down |= down_in_classes(qm, L, qm.class_rep[k])
            run.check(closed_down == lim, "closed limits: pt' limits are down-closed", w)
        for k, v in enumerate(qm.class_rep):
            run.check(conv2.table[1 << k] == down_in_classes(qm, L, v),
                      "closed limits: pt' limit of a class is the classes below it", w)
        run.check(holds(conv2, P.AAS), "closed limits => pt'L aas", w)
    else:
        run.unmet("L has closed limits")

    if holds(conv, P.TOPOLOGICAL):
        run.check(holds(conv2, P.TOPOLOGICAL), "pt L topological => pt'L topological", w)
    else:
        run.unmet("pt L topological")
    enough = enough_elements(L, ps)
    if o_regular and enough.enough_open and L.has_closed_limits:
        run.check(holds(conv2, P.TOPOLOGICAL) and holds(conv2, P.SOBER),
                  "open-regular, enough open elements, closed limits => pt'L sober topological", w)
    else:
        run.unmet("open-regular, enough open elements and closed limits")

    report = upper_topology_check(L, ps)
    if report.enough_closed:
        run.check(bool(report.holds), "enough closed elements => T(pt'L) is generated by pt'L minus down(c)", w)
    else:
        run.unmet("enough closed elements")


def _lattice_suite(name: str, body: Callable[[_Run, LatticeCase], None]) -> SuiteResult:
    run = _Run(name)
    for case in lattice_cases():
        run.case()
        run.guarded(lambda: body(run, case), "internal cross-check", lambda: _wl(case.lattice, case.source))
    return run.result


def suite_ptL_block() -> SuiteResult:
    return _lattice_suite("ptL_block", _lattice_checks_pt)


def suite_ptprime_block() -> SuiteResult:
    return _lattice_suite("ptprime_block", _lattice_checks_ptprime)


# ---------------------------------------------------------------------------
# sobrification

def suite_sobrification() -> SuiteResult:
    run = _Run("sobrification")
    for top in topologies(4):
        run.case()
        w = lambda: _wt(top)
        try:
            rep = verify_sobrification_theorem(top)
            s = sobrify(top)
        except CharacterizationMismatch as exc:
            run.check(False, f"internal cross-check: {exc}", w)
            continue
        run.check(rep.homeomorphic and rep.canonical_homeomorphism, "pt'(P X) is homeomorphic to the sobrification", w)
        run.check(rep.e_matches, "e = q . h", w)
        run.check(rep.pt_prime_sober_topological, "pt'(P X) is a sober topological space", w)
        t0 = top.is_t0()
        if t0:
            run.check(bool(rep.dense) and bool(rep.embedding), "e is a dense embedding", w)
        closures = {top.closure(1 << i) for i in range(top.carrier.n)}
        run.check(len(s.s_points) == len(closures), "irreducible closed sets are the point closures", w)
        run.check((len(set(s.e)) == len(s.e)) == t0, "e injective <=> T0", w)
        conv = conv_of_topology(top)
        ps = pt_space(powerset_lattice(conv))
        run.check(holds(ps.conv, P.TOPOLOGICAL) and holds(ps.conv, P.WEAKLY_QUASI_SOBER),
                  "pt(P X) is topological and weakly quasi-sober", w)
        if t0:
            run.check(holds(conv, P.AAS), "T0 topology: distinct irreducible ultrafilters have distinct limits", w)
    run.note("free irreducible ultrafilters do not exist on finite carriers; only the principal form is checked")
    return run.result


def suite_cirreducible() -> SuiteResult:
    run = _Run("cirreducible")
    for conv in small_spaces():
        run.case()
        w = lambda: _ws(conv)
        tconv = conv_of_topology(topological_modification(conv))
        closed, opens = conv.closed_sets, conv.open_sets
        for a in irreducible_sets(conv):
            lim = conv.table[a]
            run.check(_c_irreducible_closed_cover(closed, lim), "limits of irreducible filters are c-irreducible", w)
            run.check(conv.closure(lim) == tconv.table[a], "closure of an irreducible limit is its limit in T(xi)", w)
        for c in range(1, conv.full + 1):
            irr = _c_irreducible_closed_cover(closed, c)
            if irr != _c_irreducible_closed_cover(closed, conv.closure(c)):
                run.check(False, "c-irreducible <=> closure irreducible", w)
            if irr:
                run.check(cirreducible_witness(conv, c, tconv) is not None,
                          "closure of a c-irreducible set is the limit of a T(xi)-irreducible ultrafilter", w)
    return run.result


# ---------------------------------------------------------------------------
# T_D and the characterization of principal irreducible ultrafilters

def _td_open_form(top: FiniteTopology) -> tuple[bool, bool]:
    """(open-minus-point form, limit-meets-open form) of T_D for a topology."""
    opens = top.opens
    conv = conv_of_topology(top)
    form1 = form2 = True
    for i in range(top.carrier.n):
        x = 1 << i
        nbhd = [u for u in opens if u & x]
        form1 = form1 and any((u & ~x) in opens for u in nbhd)
        form2 = form2 and any(conv.singletons[i] & u == x for u in nbhd)
    return form1, form2


def suite_td() -> SuiteResult:
    run = _Run("td")
    for top in topologies(4):
        run.case()
        conv = conv_of_topology(top)
        f1, f2 = _td_open_form(top)
        forms = (f1, f2, _td_filters(conv)[0], _td_ultrafilters(conv)[0])
        run.check(len(set(forms)) == 1, f"four forms of T_D agree on topologies {forms}", lambda: _wt(top))

    for conv in small_spaces():
        run.case()
        w = lambda: _ws(conv)
        td, anti = holds(conv, P.TD), holds(conv, P.ANTISYMMETRIC)
        run.check(td == anti, "finite: T_D <=> antisymmetric", w)
        spec = specialization_preorder(conv)
        if holds(conv, P.CLOSED_PRINCIPAL_LIMITS):
            run.check(spec.transitive, "closed principal limits => arrows transitive", w)
        if conv.finite_depth_hint:
            run.check(spec.transitive == holds(conv, P.S0), "finite depth: arrows transitive <=> S0", w)
        if td:
            for s in range(1, conv.full + 1):
                if s != conv.full:
                    run.check(holds(subspace(conv, s), P.TD), "subspace of T_D is T_D", w)

    pools = [universe(n, Mode.FINITE_DEPTH) for n in range(4)] + [universe(n, Mode.FULL) for n in range(3)]
    for pool in pools:
        for xi in pool:
            if not holds(xi, P.TD):
                continue
            for tau in pool:
                if tau is not xi and is_finer(tau, xi):
                    run.case()
                    run.check(holds(tau, P.TD), "finer than T_D is T_D", lambda: _ws(tau, "Finer") + "\n" + _ws(xi, "Coarser"))

    small = [c for c in universe(2, Mode.FINITE_DEPTH) if holds(c, P.TD)]
    larger = [c for c in universe(3, Mode.FINITE_DEPTH) if holds(c, P.TD)]
    for a, b in itertools.chain(itertools.product(small, small), itertools.product(small, larger)):
        run.case()
        run.check(holds(product([a, b]), P.TD), "finite product of T_D is T_D",
                  lambda: _ws(a, "A") + "\n" + _ws(b, "B"))
    return run.result


def suite_main() -> SuiteResult:
    run = _Run("main")
    run.note("every filter on a finite carrier is principal: 'every irreducible (ultra)filter is principal' holds trivially")
    run.hyp("S0 & T0")
    for conv in itertools.chain(full_spaces(3), universe(4, Mode.FINITE_DEPTH)):
        run.case()
        w = lambda: _ws(conv)
        ws, td = holds(conv, P.WEAKLY_SOBER), holds(conv, P.TD)
        if holds(conv, P.S0) and holds(conv, P.T0):
            run.check(ws and td, "S0 & T0 (all irreducible ultrafilters principal) => weakly sober & T_D", w)
        else:
            run.unmet("S0 & T0")
        if ws and td:
            irr_ultra = [u for u in (1 << i for i in range(conv.n)) if is_irreducible(conv, u)]
            run.check(all(u.bit_count() == 1 for u in irr_ultra),
                      "weakly sober & T_D => irreducible ultrafilters principal", w)
            if holds(conv, P.FINITE_DEPTH):
                run.check(all(a.bit_count() == 1 for a in irreducible_sets(conv)),
                          "weakly sober & T_D & finite depth => irreducible filters are principal ultrafilters", w)
                run.check(holds(conv, P.SOBER), "weakly sober & T_D & finite depth => sober", w)
    return run.result


def _canonical_pt_homeomorphism(conv: FiniteConvergence) -> bool:
    ps = pt_space(powerset_lattice(conv), Category.LAT)
    if ps.reps != tuple(1 << i for i in range(conv.n)):
        return False
    h = SpaceMap(conv.carrier, ps.conv.carrier, tuple(range(conv.n)))
    return is_continuous(h, conv, ps.conv) and is_continuous(h.inverse(), ps.conv, conv)


def suite_soberTd() -> SuiteResult:
    run = _Run("soberTd")
    run.note("items (1) and (2) hold on every finite carrier: all filters are principal")
    run.note("finer convergences: all convergences for n <= 3, finite-depth ones for n = 4")
    run.hyp("finite depth")
    non_fd_breaks = 0
    pools = [(universe(n, Mode.FULL), universe(n, Mode.FULL)) for n in range(4)]
    pools.append((universe(4, Mode.FINITE_DEPTH), universe(4, Mode.FINITE_DEPTH)))
    for spaces, finer_pool in pools:
        for conv in spaces:
            if not (holds(conv, P.S0) and holds(conv, P.T0)):
                continue
            run.case()
            w = lambda: _ws(conv)
            run.check(holds(conv, P.WEAKLY_SOBER) and holds(conv, P.TD), "(3) weakly sober & T_D", w)
            run.check(_canonical_pt_homeomorphism(conv), "(7) pt(P X) homeomorphic to X", w)
            item4 = holds(conv, P.SOBER) and holds(conv, P.TD)
            item5 = all(holds(subspace(conv, s), P.SOBER) for s in range(1, conv.full + 1))
            item6 = all(holds(t, P.SOBER) for t in finer_pool if is_finer(t, conv))
            if holds(conv, P.FINITE_DEPTH):
                run.check(item4, "(4) sober & T_D", w)
                run.check(item5, "(5) every subspace sober", w)
                run.check(item6, "(6) every finer convergence sober", w)
            else:
                run.unmet("finite depth")
                non_fd_breaks += not (item4 and item5 and item6)
    run.note(f"S0 & T0 without finite depth: {non_fd_breaks} spaces where (4)-(6) fail (outside the hypothesis)")
    return run.result


# ---------------------------------------------------------------------------
# compactness, regularity

def suite_compactness() -> SuiteResult:
    run = _Run("compactness")
    run.note("finite topologies are Noetherian; the infinite clause about free ultrafilters is out of reach")
    for conv in small_spaces():
        run.case()
        w = lambda: _ws(conv)
        for a in irreducible_sets(conv):
            run.check(is_compact_filter(conv, a), "irreducible filters are compact", w)
        for i in range(conv.n):
            u = 1 << i
            run.check(is_compact_filter(conv, u) == is_irreducible(conv, u),
                      "an ultrafilter is compact <=> irreducible", w)
    for top in topologies(4):
        run.case()
        conv = conv_of_topology(top)
        run.check(all(is_compact_filter(conv, a) for a in range(1, conv.full + 1)),
                  "finite topology: every filter compact", lambda: _wt(top))
    return run.result


def suite_regularity() -> SuiteResult:
    run = _Run("regularity")
    for conv in small_spaces():
        run.case()
        w = lambda: _ws(conv)
        top = holds(conv, P.TOPOLOGICAL)
        run.check(is_z_regular_space(conv, conv.open_sets) == top, "open-regular <=> topological", w)
        L = powerset_lattice(conv)
        run.check(is_z_regular_lattice(L, open_elements(L)) == top,
                  "powerset lattice open-regular <=> topological", w)
        e = enough_elements(L)
        run.check(e.enough_closed and e.enough_open, "powerset lattices have enough closed and open elements", w)
    sources = [conv_of_topology(t) for t in topologies(3)]
    targets = [c for n in range(4) for c in universe(n, Mode.FINITE_DEPTH)]
    targets += [c for n in range(3) for c in universe(n, Mode.FULL)]
    for xi in sources:
        for tau in targets:
            if tau.n > xi.n:
                continue
            for table in itertools.product(range(tau.n), repeat=xi.n):
                f = SpaceMap(xi.carrier, tau.carrier, table)
                if not f.is_onto() or not is_continuous(f, xi, tau) or not is_open_map(f, xi, tau):
                    continue
                run.case()
                run.check(holds(tau, P.TOPOLOGICAL), "continuous open onto image of a topology is topological",
                          lambda: _ws(xi, "Source") + "\n" + _ws(tau, "Target"))
    return run.result


# ---------------------------------------------------------------------------
# cross-characterization oracles

def _oracle_space(run: _Run, conv: FiniteConvergence, label: str) -> None:
    run.case()
    w = lambda: f"# {label}\n" + _ws(conv)
    for b in range(1, conv.full + 1):
        if adherence_by_definition(conv, b) != adherence_by_points(conv, b):
            run.check(False, "adherence: definition vs singleton-union form", w)
            break
    closed, opens = conv.closed_sets, conv.open_sets
    for c in range(conv.full + 1):
        if _c_irreducible_closed_cover(closed, c) != _c_irreducible_open_pairs(opens, c):
            run.check(False, "c-irreducibility: closed-cover vs open-pair form", w)
            break


def _oracle_lattice(run: _Run, L: FiniteConvLattice, label: str) -> None:
    run.case()
    w = lambda: _wl(L, label)
    run.check(_closed_membership(L) == _closed_mesh(L), "closed elements: membership vs mesh form", w)
    run.check(_open_membership(L) == _open_mesh(L), "open elements: membership vs mesh form", w)


def suite_oracles() -> SuiteResult:
    run = _Run("oracles")
    for name, make in EXAMPLES.items():
        conv = make()
        _oracle_space(run, conv, name)
        _oracle_lattice(run, powerset_lattice(conv), f"P({name})")
    for conv in small_spaces():
        _oracle_space(run, conv, "enumerated space")
        _oracle_lattice(run, powerset_lattice(conv), "powerset of an enumerated space")
    for top in topologies(4):
        conv = conv_of_topology(top)
        _oracle_space(run, conv, "topology")
        _oracle_space(run, sobrify(top).conv, "sobrification")
    for case in lattice_cases():
        _oracle_lattice(run, case.lattice, case.source)
        _oracle_space(run, case.ps.conv, f"pt of a lattice from {case.source}")
        _oracle_space(run, case.conv2, f"pt' of a lattice from {case.source}")
    return run.result


# ---------------------------------------------------------------------------
# registry and coverage

SUITES: dict[str, Callable[[], SuiteResult]] = {
    "paper_examples": suite_paper_examples,
    "figure1": suite_figure1,
    "wsober_equiv": suite_wsober_equiv,
    "finer_sober": suite_finer_sober,
    "pt_identification": suite_pt_identification,
    "ptL_block": suite_ptL_block,
    "ptprime_block": suite_ptprime_block,
    "sobrification": suite_sobrification,
    "cirreducible": suite_cirreducible,
    "td": suite_td,
    "main": suite_main,
    "soberTd": suite_soberTd,
    "compactness": suite_compactness,
    "regularity": suite_regularity,
    "oracles": suite_oracles,
}

DEGENERATE = "degenerate"

# each stated result -> the suite that checks it, or DEGENERATE when its
# content is vacuous on finite carriers
COVERAGE: dict[str, str] = {
    "irreducible filters are compact; compact ultrafilters are irreducible": "compactness",
    "Noetherian spaces and irreducible free ultrafilters": DEGENERATE,
    "equal-limit points under closed principal limits; T0 & S0 => antisymmetric": "wsober_equiv",
    "weakly sober with closed irreducible limits => sober": "wsober_equiv",
    "weakly sober <=> weakly quasi-sober & aas; antisymmetric => T0; three-way equivalence": "wsober_equiv",
    "finer than a (weakly) sober convergence is (weakly) sober": "finer_sober",
    "seven worked examples": "paper_examples",
    "implication diagram of diagonal and separation conditions": "figure1",
    "trace of a principal point filter": "ptL_block",
    "powerset lattice: a convergence space is a subspace of pt(P X)": "pt_identification",
    "density of X in pt(P X) (equality on finite carriers)": DEGENERATE,
    "points of powerset lattices per category": "pt_identification",
    "pt L is weakly quasi-sober": "ptL_block",
    "aas condition in L => pt L aas": "ptL_block",
    "bullets of closed/open elements are closed/open": "ptL_block",
    "closed limits in L => closed limits in pt L": "ptL_block",
    "five-way equivalence for pt L": "ptL_block",
    "pt(P X) weakly sober <=> irreducible ultrafilters have distinct limits": "pt_identification",
    "closed limits: limits in pt L and pt'L via lam": "ptprime_block",
    "pt'L is aas under closed limits": "ptprime_block",
    "open and closed subsets of pt L are saturated": "ptL_block",
    "q is open and closed; T(pt L) is initial for q": "ptprime_block",
    "preimage of pt'L minus down(c)": "ptprime_block",
    "powerset lattices have enough closed and open elements": "regularity",
    "upper topology description of T(pt'L)": "ptprime_block",
    "continuous open onto image of a topology is topological": "regularity",
    "pt L regular for bullets; pt'L regular for their images": "ptL_block",
    "simplified pt' limits under open/closed regularity": "ptprime_block",
    "open-regular with enough open elements => pt L, pt'L topological": "ptprime_block",
    "pt'L sober topological": "ptprime_block",
    "pt(P X) and pt'(P X) for topological X": "sobrification",
    "limits of irreducible filters are c-irreducible; closures are T-limits": "cirreducible",
    "free irreducible ultrafilters and distinct limits in T0 topologies": DEGENERATE,
    "closure of an irreducible limit is its T-limit": "cirreducible",
    "pt'(P X) is the sobrification": "sobrification",
    "four forms of T_D for topologies": "td",
    "T_D preserved by finer convergences, subspaces, finite products": "td",
    "T_D antisymmetric; finite converse; transitivity": "td",
    "T_D weakly sober => irreducible ultrafilters principal; finite depth => sober": "main",
    "principal irreducible ultrafilters characterized by weak sobriety and T_D": "main",
    "S0 & T0 & finite depth: seven equivalent conditions": "soberTd",
}


def coverage_header() -> list[str]:
    return [f"degenerate on finite carriers: {k}" for k, v in COVERAGE.items() if v == DEGENERATE]


def verify_suite(name: str) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    return fn()


def verify_all(names: Iterable[str] | None = None) -> list[SuiteResult]:
    return [verify_suite(n) for n in (names or SUITES)]
