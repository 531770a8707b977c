import json
import subprocess
import sys

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from gradcoh import NonHomogeneousInput, ParseError, QuotientRing, hilbert_series, parse_session
from gradcoh.cli import Flags, main, run

SAMPLE = """\
field q;
vars x:1 y:1;   # standard grading
ideal I = x*y;
algebra A = T/I;
module F = coker [[]] shifts [0];
module M = coker [[x^2, x*y]] shifts [0];
module K = coker [[x, y]] shifts [0] over A;
resolve M; betti M; hilbert M; ext M omega 1; canonical A;
localcoh F; matlis K; verify-duality M; verify-duality K; verify-matlis K;
"""


# -- parsing -----------------------------------------------------------------------

def test_minimal_session():
    s = parse_session("field q; vars x:1 y:1; ideal I = x*y; algebra A = T/I;")
    ctx = s.build()
    A = ctx.algebras["A"]
    x, y = ctx.ring.gens
    assert hilbert_series(A) == hilbert_series(QuotientRing(ctx.ring, [x * y]))


def test_module_statement():
    s = parse_session("vars x:1; module M = coker [[x^2]] shifts [0];")
    M = s.build().module("M")
    assert hilbert_series(M).laurent_polynomial() == {0: 1, 1: 1}


@pytest.mark.parametrize("text,line", [
    ("vars x:0;", 1),
    ("vars x:1;\nideal I = x +;", 2),
    ("vars x:1;\nmodule M = coker [[x]] shifts [0] over B;", 2),
    ("vars x:1;\nbetti N;", 2),
    ("vars x:1;\nfrobnicate;", 2),
    ("vars x:1 y:1;\nideal I = x*y\n", 2),
])
def test_parse_errors_carry_position(text, line):
    with pytest.raises(ParseError) as exc:
        parse_session(text)
    assert exc.value.line == line


def test_nonhomogeneous_generator():
    with pytest.raises(NonHomogeneousInput):
        parse_session("vars x:1 y:2; ideal I = x^2 + x*y;")


def test_multigraded_variables_and_prime_field():
    s = parse_session("field fp 101; vars x:(1,0) y:(0,1); module M = coker [[x*y]] shifts [(0,0)];")
    ctx = s.build()
    assert ctx.ring.field.p == 101
    assert ctx.ring.grading.rank == 2


def test_round_trip_of_sample():
    s = parse_session(SAMPLE)
    assert parse_session(s.to_text()) == s


_polys = st.sampled_from(["x", "y", "x*y", "x^2", "x^2 - 3*y^2", "2*x*y + y^2"])


@st.composite
def sessions(draw):
    lines = [draw(st.sampled_from(["field q;", "field fp 7;", ""])), "vars x:1 y:1;"]
    ideals = draw(st.lists(st.lists(_polys, min_size=1, max_size=3), max_size=2))
    for k, gens in enumerate(ideals):
        lines.append(f"ideal I{k} = {', '.join(gens)};")
        lines.append(f"algebra A{k} = T/I{k};")
    nmods = draw(st.integers(0, 2))
    for k in range(nmods):
        row = draw(st.lists(st.sampled_from(["x", "y"]), min_size=1, max_size=2))
        over = f" over A0" if ideals and draw(st.booleans()) else ""
        lines.append(f"module M{k} = coker [[{', '.join(row)}]] shifts [{draw(st.integers(-2, 2))}]{over};")
        lines.append(draw(st.sampled_from([f"betti M{k};", f"hilbert M{k};", f"ext M{k} omega 1;"])))
    return "\n".join(lines)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(sessions())
def test_round_trip_property(text):
    s = parse_session(text)
    assert parse_session(s.to_text()) == s


# -- running ------------------------------------------------------------------------

def test_sample_session_passes_and_is_deterministic():
    s = parse_session(SAMPLE)
    a = run(s).to_tsv()
    b = run(parse_session(SAMPLE)).to_tsv()
    assert a == b
    assert run(s).exit_code == 0
    j1, j2 = run(s, Flags(format="json")).to_json(), run(s, Flags(format="json")).to_json()
    assert j1 == j2
    data = json.loads(j1)
    assert data["passed"] is True
    assert [blk["command"] for blk in data["blocks"]][:3] == ["resolve", "betti", "hilbert"]


def test_empty_command_list():
    rep = run(parse_session("vars x:1;"))
    assert rep.blocks == [] and rep.exit_code == 0 and rep.to_tsv() == ""


def test_verify_duality_on_dual_numbers():
    rep = run(parse_session("vars x:1; module M = coker [[x^2]] shifts [0]; verify-duality M;"))
    assert rep.exit_code == 0
    (blk,) = rep.blocks
    h0 = {r[2]: r[3] for r in blk.rows if r[0] == "local" and r[1] == 0 and r[3]}
    assert h0 == {0: 1, 1: 1}
    assert not any(r[3] for r in blk.rows if r[0] == "local" and r[1] == 1)


def test_localcoh_both_on_plane():
    rep = run(parse_session("vars x:1 y:1; module T = coker [[]] shifts [0]; localcoh T;"),
              Flags(window=(-8, 2), method="both"))
    (blk,) = rep.blocks
    assert blk.passed
    h2 = {r[1]: (r[2], r[3]) for r in blk.rows if r[0] == 2}
    assert h2 == {j: (-j - 1, -j - 1) for j in range(-8, -1)}


def test_module_errors_become_report_entries():
    rep = run(parse_session("vars x:1 y:1; module M = coker [[x]] shifts [0]; matlis M;"))
    (blk,) = rep.blocks
    assert blk.error.startswith("NotFiniteLength")
    assert rep.exit_code == 1


def test_field_override():
    text = "field q; vars x:1 y:1; module M = coker [[x^2, 2*y]] shifts [0]; hilbert M;"
    over_q = run(parse_session(text), Flags(window=(0, 3))).to_tsv()
    over_2 = run(parse_session(text), Flags(window=(0, 3), field="fp:2")).to_tsv()
    assert over_q != over_2


def test_main_reads_file_and_prints(tmp_path, capsys):
    path = tmp_path / "s.gc"
    path.write_text("vars x:1; module M = coker [[x^2]] shifts [0]; hilbert M;\n", encoding="utf-8")
    assert main(["--input", str(path), "--window", "-1:3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "# hilbert M\t-"
    assert main(["--input", str(path), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["passed"] is True


def test_main_reports_parse_errors(tmp_path, capsys):
    path = tmp_path / "bad.gc"
    path.write_text("vars x:0;\n", encoding="utf-8")
    assert main(["--input", str(path)]) == 2
    assert "ParseError" in capsys.readouterr().err


def test_console_entry_point_is_byte_identical(tmp_path):
    path = tmp_path / "s.gc"
    path.write_text(SAMPLE, encoding="utf-8")
    cmd = [sys.executable, "-m", "gradcoh", "--input", str(path), "--window", "-6:3"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout
