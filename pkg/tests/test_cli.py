"""End-to-end tests for the command-line interface.

Commands run in-process through main(argv); exit statuses follow the
contract 0 = yes, 1 = no, 2 = unknown, 3 = error.
"""

import csv
import json

import pytest

from electctl.cli import EXIT_ERROR, EXIT_NO, EXIT_UNKNOWN, EXIT_YES, main
from electctl.instance_io import FORMAT


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def gen_instance(tmp_path, capsys, name, seed="1"):
    # seed 1 produces a yes-instance for CCEPV/plurality/TE with 3x5
    path = tmp_path / name
    code, _, _ = run(capsys, "gen", "--problem", "CCEPV", "--rule", "plurality",
                     "--tie", "TE", "--candidates", "3", "--voters", "5",
                     "--seed", seed, "--out", str(path))
    assert code == EXIT_YES
    return path


class TestSolve:
    def test_solve_reports_answer_and_digest(self, tmp_path, capsys):
        path = gen_instance(tmp_path, capsys, "inst.json")
        code, out, _ = run(capsys, "solve", str(path))
        record = json.loads(out)
        assert code in (EXIT_YES, EXIT_NO)
        assert record["format"] == FORMAT
        assert record["answer"] in ("yes", "no")
        assert (code == EXIT_YES) == (record["answer"] == "yes")
        assert len(record["instance_digest"]) == 64

    def test_solver_backends_agree(self, tmp_path, capsys):
        path = gen_instance(tmp_path, capsys, "inst.json")
        code_p, out_p, _ = run(capsys, "solve", str(path), "--solver", "poly")
        code_o, out_o, _ = run(capsys, "solve", str(path), "--solver", "oracle")
        assert code_p == code_o
        assert json.loads(out_p)["answer"] == json.loads(out_o)["answer"]

    def test_tiny_budget_yields_unknown(self, tmp_path, capsys):
        path = gen_instance(tmp_path, capsys, "inst.json")
        code, out, _ = run(capsys, "solve", str(path), "--solver", "oracle",
                           "--budget", "0")
        assert code == EXIT_UNKNOWN
        assert json.loads(out)["answer"] == "unknown"

    def test_missing_file_is_an_error(self, capsys):
        code, _, err = run(capsys, "solve", "/nonexistent.json")
        assert code == EXIT_ERROR
        assert "error" in err

    def test_bad_usage_exits_three(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve"])
        assert exc.value.code == EXIT_ERROR


class TestVerify:
    def test_witness_accept_and_reject(self, tmp_path, capsys):
        path = gen_instance(tmp_path, capsys, "inst.json")
        out_path = tmp_path / "result.json"
        code, _, _ = run(capsys, "solve", str(path), "--solver", "oracle",
                         "--out", str(out_path))
        record = json.loads(out_path.read_text())
        assert "witness" in record
        wit_path = tmp_path / "witness.json"
        wit_path.write_text(json.dumps(
            {"format": FORMAT, "witness": record["witness"]}))
        code, out, _ = run(capsys, "verify", str(path), str(wit_path))
        assert code == EXIT_YES
        assert "accepted" in out
        assert "final winners" in out

    def test_rejected_witness(self, tmp_path, capsys):
        path = gen_instance(tmp_path, capsys, "inst.json")
        wit_path = tmp_path / "witness.json"
        # all five ballots on one side: not an equipartition
        wit_path.write_text(json.dumps(
            {"format": FORMAT,
             "witness": {"type": "voter_partition",
                         "parts": [[0, 1, 2, 3, 4], []]}}))
        code, out, _ = run(capsys, "verify", str(path), str(wit_path))
        assert code == EXIT_NO
        assert "rejected" in out


class TestReduce:
    def test_cubic_vc_source(self, tmp_path, capsys):
        src = tmp_path / "k4.json"
        src.write_text(json.dumps({
            "format": FORMAT, "kind": "cvc",
            "vertices": ["u1", "u2", "u3", "u4"],
            "edges": [["u1", "u2"], ["u1", "u3"], ["u1", "u4"],
                      ["u2", "u3"], ["u2", "u4"], ["u3", "u4"]],
            "k": 3,
        }))
        out_path = tmp_path / "out.json"
        code, _, _ = run(capsys, "reduce", "cvc", str(src), "--out", str(out_path))
        assert code == EXIT_YES
        doc = json.loads(out_path.read_text())
        assert len(doc["candidates"]) == 18
        assert doc["provenance"]["reduction"] == "cvc"
        assert len(doc["provenance"]["source_sha256"]) == 64

    def test_x3c_source(self, tmp_path, capsys):
        src = tmp_path / "x3c.json"
        src.write_text(json.dumps({
            "format": FORMAT, "kind": "x3c",
            "base": ["b1", "b2", "b3", "b4", "b5", "b6"],
            "triples": [["b1", "b2", "b3"], ["b4", "b5", "b6"],
                        ["b1", "b2", "b4"], ["b1", "b5", "b6"]],
        }))
        code, out, _ = run(capsys, "reduce", "x3c", str(src))
        assert code == EXIT_YES
        doc = json.loads(out)
        groups = {b["group"] for b in doc["ballots"]}
        assert len(groups) == 4 + 3

    def test_approval_source(self, tmp_path, capsys):
        src = tmp_path / "appr.json"
        src.write_text(json.dumps({
            "format": FORMAT, "kind": "approval-e",
            "problem": "CCPV", "rule": "approval", "tie": "TE", "p": "p",
            "candidates": [{"id": "p"}, {"id": "a"}],
            "ballots": [{"approve": ["p"]}, {"approve": ["a"]},
                        {"approve": ["a"]}, {"approve": ["p", "a"]}],
        }))
        code, out, _ = run(capsys, "reduce", "approval-e", str(src))
        assert code == EXIT_YES
        doc = json.loads(out)
        assert doc["rule"] == "systemE"
        assert len(doc["ballots"]) == 6

    def test_malformed_source(self, tmp_path, capsys):
        src = tmp_path / "bad.json"
        src.write_text(json.dumps({"format": FORMAT, "kind": "cvc",
                                   "vertices": ["a", "b"],
                                   "edges": [["a", "b"]], "k": 1}))
        code, _, err = run(capsys, "reduce", "cvc", str(src))
        assert code == EXIT_ERROR
        assert "error" in err


class TestSweep:
    def sweep(self, tmp_path, capsys, name, *extra):
        out_path = tmp_path / name
        code, _, err = run(capsys, "sweep", "ccepv", "--candidates", "3",
                           "--voters", "5", "--count", "12", "--seed", "3",
                           "--out", str(out_path), *extra)
        return code, out_path, err

    def test_sweep_agreement_and_summary(self, tmp_path, capsys):
        code, out_path, err = self.sweep(tmp_path, capsys, "sweep.csv")
        assert code == EXIT_YES
        rows = list(csv.DictReader(out_path.read_text().splitlines()))
        assert len(rows) == 12
        assert all(r["agree"] == "1" for r in rows)
        summary = json.loads(err.splitlines()[-1])
        assert summary["disagreements"] == 0
        assert summary["agreement_rate"] == 1.0

    def test_sweep_deterministic_modulo_timings(self, tmp_path, capsys):
        _, first, _ = self.sweep(tmp_path, capsys, "a.csv")
        _, second, _ = self.sweep(tmp_path, capsys, "b.csv")

        def strip_ms(path):
            rows = list(csv.DictReader(path.read_text().splitlines()))
            return [{k: v for k, v in r.items() if not k.startswith("ms_")}
                    for r in rows]

        assert strip_ms(first) == strip_ms(second)

    def test_unknown_family_is_an_error(self, capsys):
        code, _, err = run(capsys, "sweep", "nope", "--count", "1")
        assert code == EXIT_ERROR
        assert "unknown family" in err

    def test_ccpkv_family_needs_k(self, capsys):
        code, _, err = run(capsys, "sweep", "ccpkv", "--count", "1")
        assert code == EXIT_ERROR


class TestGen:
    def test_gen_is_deterministic(self, tmp_path, capsys):
        a = gen_instance(tmp_path, capsys, "a.json")
        b = gen_instance(tmp_path, capsys, "b.json")
        assert a.read_text() == b.read_text()

    def test_gen_validates_parameters(self, tmp_path, capsys):
        code, _, err = run(capsys, "gen", "--problem", "CCPkV", "--rule",
                           "plurality", "--tie", "TE", "--k", "1",
                           "--out", str(tmp_path / "x.json"))
        assert code == EXIT_ERROR

    def test_gen_group_problem(self, tmp_path, capsys):
        path = tmp_path / "g.json"
        code, _, _ = run(capsys, "gen", "--problem", "CCDVG", "--rule",
                         "plurality", "--limit", "2", "--voters", "6",
                         "--groups", "3", "--seed", "1", "--out", str(path))
        assert code == EXIT_YES
        doc = json.loads(path.read_text())
        assert all("group" in b for b in doc["ballots"])
