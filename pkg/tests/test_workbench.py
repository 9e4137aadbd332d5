import json

import pytest
from hypothesis import given

import oracles
from strategies import posets
from uvlab import faults, limits
from uvlab.balg import powerset_ba
from uvlab.dictionary import uv_sum
from uvlab.duality import uv_dual
from uvlab.errors import CycleError, SchemaError, SizeLimit
from uvlab.order import chain
from uvlab.uvspace import FiniteSpace, SpaceMap
from uvlab.workbench import io
from uvlab.workbench.cli import main
from uvlab.workbench.dot import export_dot
from uvlab.workbench.enumerate import (brute_force_classes, brute_force_posets, enumerate_posets,
                                       free_ba, posets_of_size, random_subalgebra, sample_posets)
from uvlab.workbench.plotting import hasse_png
from uvlab.workbench.verify import instances, replay, run_one, verify_all

FORK_DOC = {"elements": ["x", "y1", "y2"], "leq": [["x", "y1"], ["x", "y2"]]}


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


# -- documents ---------------------------------------------------------------------------

def test_parse_fork_document(fork):
    assert io.parse_poset(FORK_DOC) == fork
    assert io.parse_space(FORK_DOC).order == fork


def test_parse_atoms_document():
    A = io.parse_ba({"atoms": 2})
    assert A.k == 2 and A.size == 4
    B = io.parse_ba({"atoms": 2, "labels": ["p", "q"]})
    assert io.emit_ba(B) == {"atoms": 2, "labels": ["p", "q"]}
    assert io.emit_ba(A) == {"atoms": 2}


def test_unknown_element_has_location():
    with pytest.raises(SchemaError) as exc:
        io.parse_poset({"elements": ["x", "y"], "leq": [["x", "z"]]})
    assert exc.value.location == "/leq/0/1"


@pytest.mark.parametrize("doc,where", [
    ({"leq": []}, "/"),
    ({"elements": ["x"], "leq": [["x"]]}, "/leq/0"),
    ({"elements": [1], "leq": []}, "/elements/0"),
])
def test_schema_errors(doc, where):
    with pytest.raises(SchemaError) as exc:
        io.parse_poset(doc)
    assert exc.value.location == where


def test_cycle_surfaces():
    with pytest.raises(CycleError):
        io.parse_poset({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]})


def test_full_relation_accepted():
    P = io.parse_poset({"elements": ["a", "b", "c"],
                        "leq": [["a", "b"], ["b", "c"], ["a", "c"], ["a", "a"]]})
    assert io.emit_poset(P)["leq"] == [["a", "b"], ["b", "c"]]


@given(posets(max_size=6))
def test_emit_parse_round_trip(P):
    doc = io.emit_poset(P)
    again = io.emit_poset(io.parse_poset(doc))
    assert again == doc
    assert io.parse_poset(doc) == P


def test_space_from_opens(fork):
    doc = {"elements": ["x", "y1", "y2"], "opens": [["y1"], ["y2"], ["x", "y1", "y2"]]}
    assert io.parse_space(doc).order == fork
    with pytest.raises(SchemaError) as exc:
        io.parse_space({"elements": ["a", "b"], "opens": [["a", "b"]]})
    assert exc.value.location == "/opens"
    with pytest.raises(SchemaError):
        io.parse_space({**doc, "leq": [["y1", "x"]]})


def test_table_document():
    B = powerset_ba(2)
    doc = {"carrier": 4,
           "meet": [[a & b for b in range(4)] for a in range(4)],
           "join": [[a | b for b in range(4)] for a in range(4)],
           "neg": [3 ^ a for a in range(4)], "zero": 0, "one": 3}
    assert io.parse_ba(doc).k == B.k
    bad = {**doc, "neg": [3, 2, 1, 9]}
    with pytest.raises(SchemaError) as exc:
        io.parse_ba(bad)
    assert exc.value.location == "/neg/3"


def test_map_document(tmp_path):
    write(tmp_path, "fork.json", FORK_DOC)
    write(tmp_path, "point.json", {"elements": ["p"], "leq": []})
    path = write(tmp_path, "map.json", {"dom": "fork.json", "cod": "point.json",
                                        "map": {"x": "p", "y1": "p", "y2": "p"}})
    f = io.load_map(path)
    assert f.table == (0, 0, 0)
    assert io.emit_map(f)["map"] == {"x": "p", "y1": "p", "y2": "p"}
    with pytest.raises(SchemaError):
        io.parse_map({"dom": FORK_DOC, "cod": FORK_DOC, "map": {"x": "x"}})


def test_partition_document():
    X, blocks = io.parse_partition({"space": FORK_DOC, "blocks": [["y1"], ["y2"]]})
    assert io.emit_partition(X, blocks) == {"space": FORK_DOC, "blocks": [["y1"], ["y2"]]}


def test_load_json_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{", encoding="utf-8")
    with pytest.raises(SchemaError):
        io.load_json(p)
    with pytest.raises(SchemaError):
        io.load_json(tmp_path / "missing.json")


# -- DOT and figures -----------------------------------------------------------------------

def test_dot_fork(fork):
    text = export_dot(fork, name="PV")
    assert text.count("[label=") == 3
    assert text.count("->") == 2
    assert text.startswith('digraph "PV" {')
    assert "rank=max" in text


def test_dot_point_and_sum():
    assert export_dot(chain(1)).count("->") == 0
    S = uv_sum(uv_dual(powerset_ba(2)).space, uv_dual(powerset_ba(1)).space)
    text = export_dot(S)
    assert text.count("[label=") == 7
    assert text.count("->") == len(S.order.covers) == 9
    assert export_dot(S) == text


def test_png_is_deterministic(tmp_path, fork):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    hasse_png(fork, a)
    hasse_png(fork, b)
    assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


# -- enumeration ----------------------------------------------------------------------------

@pytest.mark.parametrize("n,labeled,classes", [(1, 1, 1), (2, 3, 2), (3, 19, 5), (4, 219, 16),
                                               (5, 4231, 63)])
def test_poset_counts(n, labeled, classes):
    assert len(posets_of_size(n)) == labeled
    assert len(posets_of_size(n, up_to_iso=True)) == classes


@pytest.mark.parametrize("n", range(1, 5))
def test_enumeration_matches_relation_filter(n):
    got = {P.up for P in posets_of_size(n)}
    assert got == {P.up for P in brute_force_posets(n)}
    assert len(got) == oracles.count_posets(n)
    assert len(posets_of_size(n, up_to_iso=True)) == brute_force_classes(n)


def test_enumerate_stream_and_limit(monkeypatch):
    assert [P.n for P in enumerate_posets(2)] == [1, 2, 2, 2]
    assert len(list(enumerate_posets(3, up_to_iso=True, min_n=3))) == 5
    monkeypatch.setattr(limits, "MAX_POSET_LABELED", 3)
    with pytest.raises(SizeLimit):
        posets_of_size(4)


def test_free_and_random_algebras():
    F = free_ba(2)
    assert F.k == 4 and "~g1&g2" in F.labels
    assert free_ba(0).labels == ("true",)
    A = random_subalgebra(4, seed=3)
    assert A.k == random_subalgebra(4, seed=3).k and 1 <= A.k <= 4
    assert [P.up for P in sample_posets(6, 5, seed=1)] == [P.up for P in sample_posets(6, 5, seed=1)]


# -- verifier -------------------------------------------------------------------------------

def test_verify_trivial_bounds():
    run = verify_all(max_atoms=1, max_poset=1)
    assert run.passed and len(run.records) > 0


def test_verify_default_bounds_subset():
    run = verify_all(max_atoms=2, max_poset=4)
    assert run.passed
    assert set(run.per_theorem()) == set(run.theorems)


def test_verify_rejects_large_bounds():
    with pytest.raises(SizeLimit):
        verify_all(max_atoms=limits.MAX_ATOMS + 1)


def test_verify_jobs_do_not_change_records():
    one = verify_all(max_atoms=2, max_poset=3, jobs=1).jsonl_records()
    many = verify_all(max_atoms=2, max_poset=3, jobs=2).jsonl_records()
    assert one == many


def test_fault_breaks_representation_and_replays():
    run = verify_all(max_atoms=2, max_poset=2, theorems=["representation"],
                     fault_names=("neg",))
    assert not run.passed
    bad = run.failures()[0]
    assert bad["witness"]
    again = replay(bad["replay"])
    assert not again["passed"] and again["failure"] == bad["failure"]
    # without the fault the same instance passes
    assert run_one("representation", bad["instance"])["passed"]
    assert not faults.current()


def test_instances_are_deterministic():
    assert list(instances("characterization", 2, 6, sample=5, seed=4)) == \
        list(instances("characterization", 2, 6, sample=5, seed=4))


# -- command line ------------------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_dual(capsys, tmp_path):
    path = write(tmp_path, "b2.json", {"atoms": 2})
    code, out, _ = run_cli(capsys, "dual", path)
    doc = json.loads(out)
    assert code == 0 and len(doc["elements"]) == 3 and doc["hat"]["a"] == ["↑a"]
    code, text, _ = run_cli(capsys, "dual", path, "--format", "text")
    assert text.startswith("points 3:")


def test_cli_check(capsys, tmp_path):
    fork = write(tmp_path, "fork.json", FORK_DOC)
    two = write(tmp_path, "chain.json", {"elements": ["x", "y"], "leq": [["x", "y"]]})
    assert run_cli(capsys, "check", "uv", fork)[0] == 0
    code, out, _ = run_cli(capsys, "check", "uv", two)
    assert code == 1 and json.loads(out)["clauses"]["coro-basis"] is False
    assert run_cli(capsys, "check", "spectral", two)[0] == 0


def test_cli_check_map(capsys, tmp_path):
    write(tmp_path, "fork.json", FORK_DOC)
    write(tmp_path, "point.json", {"elements": ["p"], "leq": []})
    m = write(tmp_path, "m.json", {"dom": "fork.json", "cod": "point.json",
                                   "map": {"x": "p", "y1": "p", "y2": "p"}})
    code, out, _ = run_cli(capsys, "check", "map", m)
    assert code == 0


def test_cli_exit_codes(capsys, tmp_path):
    bad = write(tmp_path, "bad.json", {"elements": ["x"], "leq": [["x", "q"]]})
    code, _, err = run_cli(capsys, "check", "uv", bad)
    assert code == 2 and "/leq/0/1" in err
    big = write(tmp_path, "big.json", {"atoms": 9})
    assert run_cli(capsys, "dual", big)[0] == 3
    code, out, _ = run_cli(capsys, "verify", "--max-atoms", "2", "--max-poset", "2",
                           "--theorem", "representation", "--inject-fault", "neg")
    assert code == 1
    assert run_cli(capsys, "verify", "--max-atoms", "1", "--max-poset", "1")[0] == 0


def test_cli_gen_and_sum(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "gen", "powerset", "2")
    assert json.loads(out) == {"atoms": 2}
    code, out, _ = run_cli(capsys, "gen", "posets", "3", "--iso")
    assert len(json.loads(out)) == 5
    b2 = write(tmp_path, "b2.json", {"atoms": 2})
    b1 = write(tmp_path, "b1.json", {"atoms": 1})
    code, out, _ = run_cli(capsys, "sum", b2, b1)
    doc = json.loads(out)
    assert code == 0 and len(doc["elements"]) == 7


def test_cli_rows_and_applications(capsys, tmp_path):
    b3 = write(tmp_path, "b3.json", {"atoms": 3})
    assert run_cli(capsys, "dict", "all", b3)[0] == 0
    code, out, _ = run_cli(capsys, "partition", "-n", "1", b3)
    assert code == 0 and len(json.loads(out)["blocks"]) == 2
    assert run_cli(capsys, "partition", "-n", "5", b3)[0] == 2
    assert run_cli(capsys, "embed", "-n", "2", b3)[0] == 0
    assert run_cli(capsys, "complete-split", b3)[0] == 0
    code, out, _ = run_cli(capsys, "export-dot", b3, "--name", "B3")
    assert out.startswith('digraph "B3"')


def test_cli_is_deterministic(capsys, tmp_path):
    b3 = write(tmp_path, "b3.json", {"atoms": 3})
    for argv in (["dual", b3], ["dict", "all", b3], ["embed", "-n", "2", b3],
                 ["verify", "--max-atoms", "2", "--max-poset", "3"]):
        first = run_cli(capsys, *argv)[1]
        assert run_cli(capsys, *argv)[1] == first


def test_cli_report_dir(capsys, tmp_path):
    d = tmp_path / "report"
    code, out, _ = run_cli(capsys, "verify", "--max-atoms", "1", "--max-poset", "2",
                           "--report-dir", str(d))
    assert code == 0
    assert {p.name for p in d.iterdir()} >= {"records.jsonl", "summary.json", "timing.png"}
    lines = (d / "records.jsonl").read_text(encoding="utf-8").splitlines()
    assert lines == out.splitlines()


def test_cli_replay(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "verify", "--max-atoms", "2", "--max-poset", "2",
                           "--theorem", "representation", "--inject-fault", "neg")
    failing = [json.loads(line) for line in out.splitlines() if not json.loads(line)["passed"]]
    payload = json.dumps(failing[0]["replay"])
    code, out, _ = run_cli(capsys, "replay", payload)
    assert code == 1 and json.loads(out)["failure"] == failing[0]["failure"]
    f = write(tmp_path, "payload.json", failing[0]["replay"])
    assert run_cli(capsys, "replay", f)[0] == 1
    assert run_cli(capsys, "replay", '{"theorem": "nope", "instance": {}}')[0] == 2


def test_cli_allow_large(capsys, monkeypatch):
    # the flag rewrites module limits; monkeypatch puts them back afterwards
    for name in ("MAX_ATOMS", "MAX_POSET_LABELED", "MAX_POSET_ISO", "MAX_HOMS"):
        monkeypatch.setattr(limits, name, getattr(limits, name))
    assert run_cli(capsys, "gen", "powerset", "7")[0] == 3
    assert run_cli(capsys, "gen", "powerset", "7", "--allow-large")[0] == 0


def test_space_map_document_round_trip(fork):
    X = FiniteSpace(fork)
    f = SpaceMap.from_names(X, X, {"x": "x", "y1": "y1", "y2": "y2"})
    assert io.parse_map(io.emit_map(f)).table == f.table
