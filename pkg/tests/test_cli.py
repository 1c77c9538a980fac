import json

import pytest

from sigvar.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def lines(out):
    return [json.loads(x) for x in out.splitlines() if x.strip()]


def test_sig_axis_word(capsys):
    code, out = call(capsys, "sig", "axis", "--shape", "1,2,1,3,2,3,1,4", "--k", "4", "--word", "4,1,2,3")
    assert code == 0 and out.strip() == "0"


def test_sig_axis_numeric(capsys):
    code, out = call(capsys, "sig", "axis", "--shape", "1,2", "--k", "2", "--lengths", "1,1/2")
    assert lines(out)[0]["entries"]["1,2"] == "1/2"


def test_sig_pl(capsys):
    code, out = call(capsys, "sig", "pl", "--path", '{"d":2,"steps":[["1","0"],["0","1/2"]]}', "--m", "2")
    assert code == 0 and lines(out)[0]["entries"]["1,2"] == "1/2"


def test_roughdeg(capsys):
    code, out = call(capsys, "roughdeg", "--d", "2", "--k", "4", "--m", "2")
    assert lines(out) == [{"degree": 8, "bound": 8}]


def test_detsquare_verify(capsys):
    code, out = call(capsys, "detsquare", "verify", "--shape", "1,2", "--symbolic")
    assert code == 0 and lines(out)[0]["verdict"] == "equal"


def test_detsquare_graphs_and_shuffle(capsys):
    code, out = call(capsys, "detsquare", "graphs", "--shape", "1,2,1")
    assert lines(out)[0]["graphs"] == "-1/2"
    code, out = call(capsys, "detsquare", "shuffle-square", "--d", "2")
    assert code == 0 and lines(out)[0]["equal"]


def test_words_commands(capsys):
    assert lines(call(capsys, "liedim", "--d", "2", "--m", "3")[1]) == [5]
    assert lines(call(capsys, "lyndon", "--d", "2", "--m", "2")[1]) == [["1", "1,2", "2"]]
    assert lines(call(capsys, "shuffle", "--u", "1", "--v", "2")[1])[0]["terms"] == {"1,2": "1", "2,1": "1"}


def test_grouplike(capsys, tmp_path):
    code, _ = call(capsys, "grouplike", "--shape", "1,2,1", "--lengths", "1,2,3", "--m", "3")
    assert code == 0
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"order": 2, "entries": {"": "1", "1,2": "1"}}))
    code, _ = call(capsys, "grouplike", "--in", str(f))
    assert code == 1


def test_polytope_commands(capsys, tmp_path):
    code, out = call(capsys, "polytope", "volume", "--weights", "1,1,2", "--k", "4")
    assert lines(out)[0]["normalized_volume"] == 8
    code, out = call(capsys, "polytope", "idp", "--weights", "1,6,10,15", "--k", "30", "--smax", "2")
    assert code == 1 and lines(out)[0]["verdict"] == "COUNTEREXAMPLE"
    code, out = call(capsys, "polytope", "holes", "--weights", "1,6,10,15", "--k", "30")
    assert code == 1
    cert = lines(out)[0]["certificate"]
    f = tmp_path / "cert.json"
    f.write_text(json.dumps(cert))
    code, out = call(capsys, "polytope", "holes", "--certificate", "--in", str(f))
    assert code == 0 and lines(out)[0]["certificate_valid"]
    f2 = tmp_path / "p.json"
    f2.write_text(json.dumps({"weights": [1, 2, 3], "k": 6}))
    code, out = call(capsys, "polytope", "rank", "--in", str(f2))
    assert lines(out)[0]["affine_rank"] == 2


def test_primes(capsys):
    code, out = call(capsys, "primes", "--m", "20")
    assert code == 0 and lines(out)[0]["pair"] == [17, 19]
    code, out = call(capsys, "primes", "--m", "10")
    assert code == 2


def test_rigid_and_toric(capsys, tmp_path):
    code, out = call(capsys, "rigid", "make", "--n", "4")
    assert lines(out)[0]["k"] == 136
    code, out = call(capsys, "rigid", "verify", "--n", "3")
    assert code == 0 and lines(out)[0]["decompositions"] == 2
    code, out = call(capsys, "toric", "highdeg", "--n", "3", "--smax", "3")
    rec = lines(out)[0]
    assert code == 1 and rec["in_ideal"] and rec["fiber"]["status"] == "UNREACHABLE"
    code, out = call(capsys, "toric", "monomial-cert", "--shape", "1,2,1")
    assert code == 0 and lines(out)[0]["verified"]
    code, out = call(capsys, "toric", "monomial-cert", "--shape", "1,2,1", "--identity")
    assert code == 1
    f = tmp_path / "b.json"
    f.write_text(json.dumps({"weights": [1, 2, 3], "k": 6, "left": [[6, 0, 0], [0, 0, 2]], "right": [[3, 0, 1], [3, 0, 1]], "points": [[0, 0, 2]]}))
    assert lines(call(capsys, "toric", "member", "--in", str(f))[1]) == [{"in_ideal": True}]
    code, out = call(capsys, "toric", "fibercheck", "--in", str(f), "--smax", "2")
    assert code == 0 and lines(out)[0]["status"] == "REACHABLE"
    code, out = call(capsys, "toric", "saturate", "--in", str(f), "--copies", "1")
    assert lines(out)[0]["moves"] == 1
    assert call(capsys, "toric", "saturate", "--in", str(f))[0] == 2


def test_dim_commands(capsys):
    code, out = call(capsys, "dim", "rank", "--shape", "1,2,1,2", "--k", "2", "--shape", "1,2", "--jobs", "2")
    recs = lines(out)
    assert [r["rank"] for r in recs] == [3, 2]
    code, out = call(capsys, "dim", "defective", "--shape", "1,2,1,2", "--k", "2")
    assert lines(out)[0]["defective"]
    code, out = call(capsys, "dim", "fill", "--d", "2", "--k", "2")
    assert lines(out)[0]["shape"] == [1, 2, 1]


@pytest.mark.parametrize("table", ["sigma-example", "degrees-2-2", "dimensions", "prime-pairs", "shuffle-square"])
def test_repro_tables(capsys, table):
    code, out = call(capsys, "repro", table)
    assert code == 0 and lines(out)[-1]["all_match"]


def test_report_is_deterministic(capsys):
    argv = ["dim", "rank", "--shape", "1,2,1,3", "--k", "2", "--seed", "9", "--report"]
    _, a = call(capsys, *argv)
    _, b = call(capsys, *argv)
    assert a == b
    rep = json.loads(a)
    assert rep["seed"] == 9 and rep["command"] == "dim rank" and "version" in rep


def test_usage_errors(capsys):
    assert run(["nonsense"]) == 2
    assert run(["sig", "axis", "--shape", "1,x", "--k", "2"]) == 2
    assert run(["sig", "axis", "--shape", "1,2", "--k", "2", "--word", "1"]) == 2
    assert run(["polytope", "points", "--in", "/nonexistent.json"]) == 2
    assert run(["polytope", "points", "--weights", "0,1", "--k", "2"]) == 2
    capsys.readouterr()
