import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from convlat import fixtures
from convlat.cli import bundled_text, main
from convlat.dsl import (
    ArityError,
    DslSyntaxError,
    DuplicateName,
    StructureError,
    UnknownName,
    UnknownPoint,
    parse,
    render,
    render_dot,
    render_lattice,
    render_space,
    render_topology,
)
from convlat.errors import PointAxiomViolation
from convlat.fincov import product
from convlat.fixtures import chain3_trivial, example
from convlat.finlat import antitone_maps, build_conv_lattice
from convlat.miner import Mode, enumerate_topologies, m3, universe

# --- parsing ------------------------------------------------------------------------


def test_arrow_diagram():
    doc = parse("space E1 { points x y z; depth finite; arrows z->x, x<->y; }")
    e1 = doc["E1"]
    m = e1.carrier.mask
    assert e1.lim(m(["z"])) == m(["z", "x"])
    assert e1.lim(m(["x"])) == e1.lim(m(["y"])) == m(["x", "y"])
    assert e1 == example("E1")


def test_point_axiom_violation_has_position():
    with pytest.raises(StructureError) as info:
        parse("space Bad { points x; lim {x} -> {}; }")
    assert isinstance(info.value.__cause__, PointAxiomViolation)
    assert info.value.line == 1


def test_chain_lattice():
    doc = parse("lattice C3 { elements bot a top; leq bot<a, a<top; lim bot->top, a->top, top->top; }")
    assert doc["C3"].lam == (2, 2, 2)
    assert doc.kind("C3") == "lattice"


def test_syntax_error_position():
    with pytest.raises(DslSyntaxError) as info:
        parse("space S {\n  points a b\n  arrows a b\n}")
    assert (info.value.line, info.value.col) == (3, 12)


def test_duplicate_name():
    with pytest.raises(DuplicateName):
        parse("space A { points a }\nspace A { points b }")


def test_unknown_point():
    with pytest.raises(UnknownPoint):
        parse("space A { points a; arrows a->b }")


def test_forward_reference_rejected():
    with pytest.raises(UnknownName):
        parse("map f : A -> B { a -> b }\nspace A { points a }\nspace B { points b }")


def test_partial_map_rejected():
    with pytest.raises(ArityError):
        parse("space A { points a c; depth finite }\nspace B { points b; depth finite }\nmap f : A -> B { a -> b }")


def test_map_parses():
    doc = parse("space A { points a c; depth finite }\nspace B { points b; depth finite }\nmap f : A -> B { a -> b, c -> b }")
    src, dst, f = doc["f"]
    assert (src, dst, f.table) == ("A", "B", (0, 0))


def test_inconsistent_limits_rejected():
    with pytest.raises(StructureError):
        parse("space A { points a b; depth finite; arrows a->b; lim {a b} -> {a b} }")


# --- round trips ----------------------------------------------------------------------


@settings(max_examples=200)
@given(st.sampled_from(universe(3, Mode.FULL) + universe(4, Mode.FINITE_DEPTH)))
def test_space_round_trip(conv):
    assert parse(render_space("S", conv))["S"] == conv


def test_topology_round_trip():
    for top in enumerate_topologies(3):
        assert parse(render_topology("T", top))["T"] == top


def test_lattice_round_trip():
    lat = m3()
    for lam in antitone_maps(lat)[::11]:
        L = build_conv_lattice(lat, lam)
        assert parse(render_lattice("L", L))["L"] == L


def test_product_spaces_render_with_renamed_points():
    p = product([example("E7"), example("E6")])
    text = render_space("P", p)
    assert "# renamed points:" in text
    assert parse(text)["P"].table == p.table


def test_document_round_trip():
    doc = parse(bundled_text())
    again = parse(render(doc))
    assert again.names() == doc.names()
    for name in doc.names():
        assert again[name] == doc[name]


def test_bundled_fixtures_match_api():
    doc = parse(bundled_text())
    for name, make in fixtures.EXAMPLES.items():
        assert doc[name] == make(), name
    assert doc["Sierpinski"] == fixtures.sierpinski()
    assert doc["C3"] == chain3_trivial()


def test_dot_export():
    text = render_dot("E1", example("E1"))
    assert text.startswith('digraph "E1"')
    assert '"z" -> "x"' in text


# --- command line ----------------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_paper_examples(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "paper_examples")
    assert code == 0
    assert out.strip() == "SUITE paper_examples PASS 7 0"


def test_verify_failing_suite_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "figure1")
    assert code == 1
    assert "SUITE figure1 FAIL" in out


def test_check_e6(capsys):
    code, out, _ = run(capsys, "check", "E6", "--props", "sober,topological")
    assert code == 1
    lines = out.splitlines()
    assert lines[0].startswith("sober=true")
    assert lines[1].startswith("topological=false")


def test_check_all_passes_on_passing_props(capsys):
    code, out, _ = run(capsys, "check", "E6", "--props", "sober,t0")
    assert code == 0


def test_sobrify_sierpinski(capsys):
    code, out, _ = run(capsys, "sobrify", "Sierpinski")
    assert code == 0
    top = parse(out.split("\n", 2)[2])["s_Sierpinski"]
    assert top.carrier.n == 2


def test_pt_and_ptprime(capsys):
    code, out, _ = run(capsys, "pt", "C3", "--cat", "frm")
    assert code == 0 and out.startswith("# 2 points")
    code, out, _ = run(capsys, "ptprime", "C3")
    assert code == 0
    assert parse(out)["ptprime_C3"].n == 1


def test_modify(capsys):
    code, out, _ = run(capsys, "modify", "E7", "--top")
    assert code == 0
    assert parse(out)["E7_top"].opens == frozenset({0, 7})
    code, out, _ = run(capsys, "modify", "E3", "--finite-depth")
    assert code == 0 and parse(out)["E3_fd"].finite_depth_hint


def test_mine(capsys):
    code, out, _ = run(capsys, "mine", "-n", "3", "--props", "t1,td,t0")
    assert code == 0
    assert "t1 => td" in out and "td => t0" in out
    assert "td =/=> t1" in out


def test_export(capsys):
    for name in ("E1", "Sierpinski", "C3"):
        code, out, _ = run(capsys, "export", name)
        assert code == 0 and name in parse(out)
    code, out, _ = run(capsys, "export", "E1", "--dot")
    assert code == 0 and out.startswith("digraph")


def test_user_file(capsys, tmp_path):
    path = tmp_path / "mine.conv"
    path.write_text("space D { points a b; depth finite }\n")
    code, out, _ = run(capsys, "-f", str(path), "check", "D", "--props", "t1")
    assert code == 0 and out.startswith("t1=true")


@pytest.mark.parametrize("argv", [
    ["check", "NoSuch"],
    ["verify", "--suite", "nope"],
    ["mine", "-n", "9", "--mode", "full", "--props", "t0"],
    ["check", "E1", "--props", "hausdorff"],
    ["sobrify", "E6"],
    ["ptprime", "nope"],
    ["bogus-command"],
    ["-f", "/nonexistent/file.conv", "check", "E1"],
])
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_syntax_error_in_file_reports_position(capsys, tmp_path):
    path = tmp_path / "bad.conv"
    path.write_text("space S {\n  points a\n  arrows a b\n}\n")
    code, _, err = run(capsys, "-f", str(path), "check", "S")
    assert code == 2
    assert ":3:" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "convlat", "verify", "--suite", "paper_examples"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "SUITE paper_examples PASS 7 0"
