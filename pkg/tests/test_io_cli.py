import json
import subprocess
import sys
from importlib import resources

import pytest

from deltafilt import cli
from deltafilt.io import ParseError, SemanticError, parse, serialize

MINIMAL = """
field = 2
[quiver]
vertices = ["1"]
[modules.k]
dims = { 1 = 1 }
"""


def data_text(name):
    return resources.files("deltafilt").joinpath(f"data/{name}").read_text()


def test_minimal_file_parses():
    sf = parse(MINIMAL)
    ws = sf.build()
    assert ws.module("k").dims == (1,)
    assert ws.system is None


def test_unknown_vertex_is_semantic():
    text = MINIMAL.replace('vertices = ["1"]', 'vertices = ["1"]\narrows = [["a", "1", "7"]]')
    with pytest.raises(SemanticError, match="quiver"):
        parse(text)


@pytest.mark.parametrize("fragment, message", [
    ("", "field"),
    ("[omega]\nelements = ['x', 'y', 'z']\nleq = [['x', 'y'], ['y', 'z']]", "transitive"),
    ("[modules.m]\ndims = { 1 = 2 }\nmaps = { }\n[modules.n]\nsum = ['m', 'q']", "unknown module"),
])
def test_semantic_errors_name_the_invariant(fragment, message):
    text = MINIMAL + fragment if fragment else MINIMAL.replace("field = 2", "field = 4")
    with pytest.raises(SemanticError, match=message):
        parse(text)


def test_relation_violation_in_module():
    text = data_text("a3_chain.toml") + '\n[[relations]]\nterms = [[1, ["a", "b"]]]\n'
    with pytest.raises(SemanticError, match="relations"):
        parse(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("field = 2\n[quiver\n")
    assert (info.value.line, info.value.column) == (2, 8)


@pytest.mark.parametrize("name", ["a2.toml", "a3_chain.toml"])
def test_round_trip(name):
    sf = parse(data_text(name))
    again = parse(serialize(sf))
    assert again == sf
    assert serialize(again) == serialize(sf)


def test_a2_file_is_the_a2_system(a2_text, a2sys):
    ws = parse(a2_text).build()
    assert ws.system.omega == a2sys.omega
    for w in ("1", "2"):
        assert ws.system.delta[w] == a2sys.delta[w]



def test_check_a2(a2_text):
    rep = cli.run_command("check", a2_text)
    assert rep.exit_code == cli.OK
    d = rep.details
    assert d["hom_dims"] == {"1,1": 1, "1,2": 0, "2,1": 1, "2,2": 1}
    assert set(d["ext_dims"].values()) == {0}
    assert d["heights"] == {"1": 2, "2": 1}


def test_check_violation_exit_code(a2_text):
    text = a2_text.replace('leq = [["2", "1"]]', "leq = []")
    rep = cli.run_command("check", text)
    assert rep.exit_code == cli.VIOLATION
    assert rep.details["violations"][0]["axiom"] == "HS3"


def test_height_on_chain():
    text = MINIMAL + '[omega]\nelements = ["a", "b", "c"]\nleq = [["a", "b"], ["b", "c"], ["a", "c"]]\n'
    rep = cli.run_command("height", text)
    assert rep.exit_code == cli.OK
    assert rep.details == {"heights": {"a": 1, "b": 2, "c": 3}, "max_height": 3}


def test_hom_ext_commands(a2_text):
    assert cli.run_command("hom", a2_text, x="S2", y="P1").details["dim_hom"] == 1
    assert cli.run_command("hom", a2_text, x="P1", y="S2").details["dim_hom"] == 0
    assert cli.run_command("ext", a2_text, x="S1", y="S2").details["dim_ext1"] == 1
    assert cli.run_command("ext", a2_text, x="S2", y="S1").details["dim_ext1"] == 0
    # delta labels resolve too
    assert cli.run_command("hom", a2_text, x="2", y="1").details["dim_hom"] == 1


def test_unknown_name_is_error(a2_text):
    rep = cli.run_command("hom", a2_text, x="Q", y="P1")
    assert rep.exit_code == cli.ERROR and "unknown module" in rep.details["error"]
    assert cli.run_command("verify", a2_text, f="nope").exit_code == cli.ERROR


def test_verify_normalize_hfilt(a2_text):
    rep = cli.run_command("verify", a2_text, f="F")
    assert rep.exit_code == cli.OK and rep.verdict == "verified"
    rep = cli.run_command("normalize", a2_text, f="F")
    assert rep.details["normalized"]["labels"] == ["1", "2"] and rep.details["swaps"] == [0]
    assert rep.details["normalized"]["chain"] == [[0, 0], [1, 1], [1, 2]]
    rep = cli.run_command("hfilt", a2_text, m="M")
    assert rep.details["layers"] == {"1": [1, 2], "2": [1, 1], "3": [0, 0]}
    rep = cli.run_command("hfilt", a2_text, m="S1")
    assert rep.exit_code == cli.VIOLATION


def test_decompose(a2_text):
    rep = cli.run_command("decompose", a2_text, m="M", m1="P1", m2="S2")
    assert rep.exit_code == cli.OK
    s = rep.details["summands"]
    assert s["P1"]["chain"] == [[0, 0], [1, 1]]
    assert s["S2"]["chain"] == [[0, 0], [0, 1]]


def test_decompose_with_declared_homs(a2_text):
    text = a2_text + """
[modules.X]
dims = { 1 = 1, 2 = 2 }
maps = { a = [[1], [1]] }

[homs.i1]
source = "P1"
target = "X"
mats = { 1 = [[1]], 2 = [[1], [1]] }

[homs.i2]
source = "S2"
target = "X"
mats = { 2 = [[0], [1]] }
"""
    rep = cli.run_command("decompose", text, m="X", m1="P1", m2="S2")
    assert rep.exit_code == cli.OK, rep.details
    assert rep.details["summands"]["P1"]["labels"] == ["1"]


def test_selftest_command():
    rep = cli.run_command("selftest", None, seeds=2)
    assert rep.exit_code == cli.OK and all(rep.details["suites"].values())


def test_missing_input_is_error():
    assert cli.run_command("check", None).exit_code == cli.ERROR


def test_reports_are_deterministic(a2_text):
    for cmd, kw in [("check", {}), ("normalize", {"f": "F"}), ("decompose", {"m": "M", "m1": "P1", "m2": "S2"})]:
        a = cli.run_command(cmd, a2_text, seed=7, **kw)
        b = cli.run_command(cmd, a2_text, seed=7, **kw)
        assert a.to_json() == b.to_json() and a.to_text() == b.to_text()
        json.loads(a.to_json())


def test_main_entry_point(tmp_path, capsys):
    path = tmp_path / "a2.toml"
    path.write_text(data_text("a2.toml"))
    assert cli.main(["--input", str(path), "check"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("check: ok")
    assert cli.main(["hom", "S2", "P1", "--input", str(path), "--format", "structured"]) == 0
    assert json.loads(capsys.readouterr().out)["details"]["dim_hom"] == 1
    assert cli.main(["--input", str(tmp_path / "missing.toml"), "check"]) == cli.ERROR
    with pytest.raises(SystemExit) as info:
        cli.main(["--format", "xml", "check"])
    assert info.value.code == 2


def test_module_invocation(tmp_path):
    path = tmp_path / "a2.toml"
    path.write_text(data_text("a2.toml"))
    runs = [subprocess.run([sys.executable, "-m", "deltafilt", "--input", str(path), "--seed", "3", "--format",
                            "structured", "decompose", "M", "P1", "S2"], capture_output=True) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
