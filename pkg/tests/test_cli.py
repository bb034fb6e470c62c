from __future__ import annotations

import io
import json

import pytest

from bdcliques import graph6
from bdcliques.cli import ingest_corpus, main
from bdcliques.graph import Graph
from bdcliques.report import SCHEMA, VerificationReport, from_records, parse_jsonl
from bdcliques.suites import run_suite

from test_clusters import example_graph


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- reports --------------------------------------------------------------------

def test_report_round_trip():
    rep = VerificationReport("demo", {"seed": 1}, ["x"])
    rep.add("a", True, n=3)
    rep.add("b", False, "Bw", lhs=1, rhs=0)
    rep.add("c", False, value=[1, 2])
    assert rep.cases[2].counterexample is not None
    (back,) = parse_jsonl(rep.to_jsonl().splitlines())
    assert (back.suite, back.params, back.citations, back.cases) == (rep.suite, rep.params, rep.citations, rep.cases)
    assert not back.passed and len(back.failures) == 2
    with pytest.raises(ValueError):
        from_records([{"schema": "other/9", "kind": "report"}])
    with pytest.raises(ValueError):
        from_records([{"schema": SCHEMA, "kind": "case", "suite": "x"}])


def test_seeded_suites_are_byte_identical():
    for name in ("QR", "s-2", "compincr"):
        a = run_suite(name, seed=5, count=300).to_jsonl()
        b = run_suite(name, seed=5, count=300).to_jsonl()
        assert a == b
        assert all(json.loads(line)["schema"] == SCHEMA for line in a.splitlines())
    assert run_suite("QR", seed=5, count=300).params != run_suite("QR", seed=6, count=300).params


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


# --- corpus ingestion -----------------------------------------------------------

def test_ingest_corpus(tmp_path, monkeypatch):
    one = tmp_path / "k4.g6"
    one.write_text(graph6.encode(Graph.complete(4)) + "\n")
    graphs, diags = ingest_corpus(str(one))
    assert len(graphs) == 1 and graphs[0].n == 4 and graphs[0].num_edges == 6 and not diags

    empty = tmp_path / "empty.g6"
    empty.write_text("")
    assert ingest_corpus(str(empty)) == ([], [])

    mixed = tmp_path / "mixed.g6"
    mixed.write_text("C~\n%%%bad\nBw\n")
    graphs, diags = ingest_corpus(str(mixed))
    assert len(graphs) == 2 and len(diags) == 1 and diags[0].line == 2

    monkeypatch.setattr("sys.stdin", io.StringIO("C~\n"))
    graphs, _ = ingest_corpus("-")
    assert graphs == [Graph.complete(4)]

    with pytest.raises(OSError):
        ingest_corpus(str(tmp_path / "missing.g6"))


# --- subcommands ----------------------------------------------------------------

def test_colex_and_decompose(capsys):
    code, out, _ = run(capsys, "colex", "--b", "5", "--t", "3")
    assert code == 0 and "k_3 = 2" in out
    assert graph6.encode(graph6.decode(out.split("graph6: ")[1].split()[0])) == "C}"
    code, out, _ = run(capsys, "colex", "--omega", "3", "--m", "3", "--format", "jsonl")
    rec = json.loads(out)
    assert code == 0 and rec["k_t"] == 1 and rec["schema"] == "bdcliques.cli/1"
    code, out, _ = run(capsys, "decompose", "--m", "47", "--r", "8", "--format", "jsonl")
    rec = json.loads(out)
    assert (rec["a"], rec["b"], rec["c"], rec["d"]) == (1, 11, 5, 1)


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--m", "47", "--r", "8", "--t", "3")
    assert code == 0
    assert "g_3(47,8) = 94" in out and "3M*_5(47,8) = 279" in out and "329/3" in out
    code, out, _ = run(capsys, "bound", "--m", "1", "--r", "3", "--format", "jsonl")
    rec = json.loads(out)
    assert code == 0 and "mstar3" not in rec


def test_clusters_and_fold(capsys, tmp_path):
    g6 = graph6.encode(example_graph())
    code, out, _ = run(capsys, "clusters", "--graph", g6, "--r", "3", "--format", "jsonl")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(recs) == 3
    big = [r for r in recs if len(r["T"]) == 2]
    assert big[0]["S"] == [2, 3] and big[0]["red"] == [[2, 3]] and len(big[0]["blue"]) == 2

    code, out, _ = run(capsys, "fold", "--graph", g6, "--r", "3", "--format", "jsonl")
    rec = json.loads(out)
    assert code == 0 and (rec["k3_before"], rec["k3_after"], rec["gain"]) == (2, 4, 2)

    corpus = tmp_path / "c.g6"
    corpus.write_text(g6 + "\nnonsense!\n")
    code, out, err = run(capsys, "clusters", "--input", str(corpus), "--r", "3")
    assert code == 0 and "graph 0" in out and ":2:" in err

    code, _, err = run(capsys, "fold", "--graph", graph6.encode(Graph.complete(3)), "--r", "3")
    assert code == 2 and "no cluster" in err
    code, _, err = run(capsys, "clusters", "--graph", graph6.encode(Graph.complete(5)), "--r", "3")
    assert code == 2


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--m", "9", "--r", "4", "--format", "jsonl")
    rec = json.loads(out)
    assert code == 0 and rec["f"] == rec["g"] == 7 and rec["matches"]
    code, _, err = run(capsys, "search", "--m", "8", "--r", "3", "--budget", "3",
                       "--checkpoint", str(tmp_path / "ck"))
    assert code == 1 and "budget exceeded" in err
    code, out, _ = run(capsys, "search", "--m", "8", "--r", "3", "--budget", "0",
                       "--checkpoint", str(tmp_path / "ck"))
    assert code == 0 and "match" in out


def test_verify_and_report(capsys, tmp_path):
    path = tmp_path / "qr.jsonl"
    code, _, _ = run(capsys, "verify", "QR", "--count", "200", "--seed", "2", "--format", "jsonl",
                     "-o", str(path))
    assert code == 0
    first = path.read_text()
    run(capsys, "verify", "QR", "--count", "200", "--seed", "2", "--format", "jsonl", "-o", str(path))
    assert path.read_text() == first

    code, out, _ = run(capsys, "verify", "r8-table")
    # the m = 49 row does not reproduce (see the decisions ledger); the others do
    assert code == 1
    rows = [line.split() for line in out.splitlines() if line.strip()[:2].isdigit()]
    assert [r[0] for r in rows] == ["47", "48", "49", "50", "52", "53", "54", "55"]
    assert rows[0][:4] == ["47", "3", "279", "282"]

    bad = tmp_path / "r8.jsonl"
    run(capsys, "verify", "r8-table", "--format", "jsonl", "-o", str(bad))
    code, out, _ = run(capsys, "report", str(path))
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "report", str(path), str(bad))
    assert code == 1 and "FAIL" in out and "row m=49" in out
    junk = tmp_path / "junk"
    junk.write_text("{}\n")
    code, _, _ = run(capsys, "report", str(junk))
    assert code == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decompose", "--m", "x", "--r", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "colex")
    assert code == 2 and "--b" in err
    code, _, _ = run(capsys, "bound", "--m", "5", "--r", "3", "--t", "2")
    assert code == 0
    capsys.readouterr()
