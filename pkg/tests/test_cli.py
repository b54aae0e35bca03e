import json

import pytest

from collatz_sufficiency.cli import NEGATIVE, OK, UNDETERMINED, USAGE, reproduce_tables, run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def result(capsys, *argv):
    code, out, _ = call(capsys, *argv)
    return code, json.loads(out)


def test_check_strong_nine(capsys):
    code, doc = result(capsys, "check", "--mod", "9", "--residues", "2", "--criterion", "strong")
    assert code == OK
    assert doc["result"]["strong"] is True and doc["result"]["set"] == "2 mod 9"
    assert doc["meta"]["command"] == "check" and doc["meta"]["schema"] == 1
    assert doc["meta"]["budgets"]["cycles"] == 10 ** 6


def test_check_negative_and_all(capsys):
    code, _ = result(capsys, "check", "--mod", "5", "--residues", "0")
    assert code == NEGATIVE
    code, doc = result(capsys, "check", "--mod", "27", "--residues", "20", "--criterion", "all")
    # forward and cycle hold, backward does not
    assert code == NEGATIVE
    assert doc["result"]["fraction_criteria"]["backward"] is False
    assert doc["result"]["fraction_criteria"]["forward"] is True


def test_undetermined_exit(capsys):
    code, doc = result(capsys, "check", "--mod", "27", "--residues", "20",
                       "--criterion", "forward", "--cycle-budget", "1")
    assert code == UNDETERMINED
    assert doc["result"]["undetermined"]


def test_usage_errors(capsys):
    assert call(capsys, "check", "--mod", "9", "--residues", "3")[0] == USAGE
    assert call(capsys, "check", "--mod", "9", "--residues", "x")[0] == USAGE
    assert call(capsys, "unfold", "--mod", "12", "--residues", "1")[0] == USAGE
    assert call(capsys, "group", "--mod", "9")[0] == USAGE
    assert call(capsys, "check", "--mod", "9", "--residues", "2", "--threads", "0")[0] == USAGE
    with pytest.raises(SystemExit) as e:
        run(["check", "--mod", "9"])
    assert e.value.code == USAGE
    with pytest.raises(SystemExit) as e:
        run(["nosuch"])
    assert e.value.code == USAGE


def test_graph_dot(capsys):
    code, out, _ = call(capsys, "graph", "--mod", "8", "--format", "dot")
    assert code == OK
    assert out.startswith("// {")
    assert "[color=red, style=dashed]" in out and "[color=black, style=solid]" in out


def test_graph_csv(capsys):
    code, out, _ = call(capsys, "graph", "--mod", "2", "--format", "csv")
    lines = out.splitlines()
    assert lines[0].startswith("# {")
    assert lines[1:] == ["from,to,color", "0,0,black", "0,1,black", "1,0,red", "1,1,red"]


def test_tables_reproduce(capsys):
    code, doc = result(capsys, "tables", "--reproduce", "4")
    assert code == OK
    assert {r["set"] for r in doc["result"]["rows"]} == {"1,3 mod 16", "2,12 mod 16"}
    rows = {r.label: r.passed for r in reproduce_tables((2, 3))}
    assert rows["20 mod 27"] and rows["2,4 mod 8"]


def test_search_csv_notation(capsys):
    code, out, _ = call(capsys, "search", "--mod", "11", "--k", "2", "--format", "csv")
    assert code == OK
    labels = [line.split(",")[0] for line in out.splitlines()[2:]]
    # the set label itself contains a comma, so it is quoted
    assert '"4,7 mod 11"' in out and '"5,6 mod 11"' in out
    assert labels


def test_search_thread_invariance(capsys):
    outs = []
    for t in ("1", "3"):
        code, doc = result(capsys, "search", "--mod", "16", "--size", "2",
                           "--criterion", "cycle", "--all", "--threads", t)
        outs.append(doc["result"])
    assert outs[0] == outs[1]
    rows1 = result(capsys, "tables", "--threads", "1")[1]["result"]
    rows4 = result(capsys, "tables", "--threads", "4")[1]["result"]
    assert rows1 == rows4


@pytest.mark.parametrize("argv", [
    ["check", "--mod", "16", "--residues", "1,3", "--criterion", "cycle"],
    ["group", "--mod", "35", "--verify"],
    ["duality", "--mod", "12"],
    ["fold", "--n", "3"],
    ["omega", "--n", "4", "--format", "csv"],
])
def test_byte_stable(capsys, argv):
    assert call(capsys, *argv) == call(capsys, *argv)


def test_group_verify(capsys):
    code, doc = result(capsys, "group", "--mod", "7", "--verify")
    assert code == OK and doc["result"]["closure_order"] == 42
    code, doc = result(capsys, "group", "--mod", "95", "--verify")
    assert code == NEGATIVE and doc["result"]["closure_order"] == 3420


def test_backtrace_and_greedy(capsys):
    code, doc = result(capsys, "backtrace", "--from", "1", "--to-class", "0", "--mod", "2",
                       "--bound-check")
    assert code == OK and doc["result"]["vector"] == [1]
    code, doc = result(capsys, "backtrace", "--from", "11", "--to-class", "5", "--mod", "7",
                       "--bound-check")
    assert code == OK and doc["result"]["length"] == 2
    code, doc = result(capsys, "greedy", "--start", "5", "--steps", "3", "--values")
    assert doc["result"]["values"] == [5, 10, 20, 13]


def test_levelset_classify(capsys):
    _, doc = result(capsys, "levelset", "--x", "2", "--k", "1")
    assert doc["result"]["members"] == [1, 4]
    _, doc = result(capsys, "classify", "--x", "1", "--bits", "101010")
    assert doc["result"]["kind"] == "periodic-witness"
    assert call(capsys, "classify", "--x", "5", "--bits", "11111111")[0] == USAGE


def test_duality_and_unfold(capsys):
    assert result(capsys, "duality", "--mod", "8")[0] == OK
    assert result(capsys, "duality", "--mod", "12")[0] == NEGATIVE
    code, doc = result(capsys, "unfold", "--mod", "8", "--residues", "3,4")
    assert code == OK and doc["result"]["output"]["set"] == "7,8,9,10 mod 16"


def test_sparse_and_text(capsys):
    code, out, _ = call(capsys, "sparse", "--count", "3", "--format", "text")
    assert code == OK and out.splitlines()[1] == "1 4 12"


def test_output_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert run(["graph", "--mod", "4", "-o", str(path)]) == OK
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text())["result"]["modulus"] == 4


def test_format_not_available(capsys):
    assert call(capsys, "levelset", "--x", "2", "--k", "1", "--format", "dot")[0] == USAGE
