import csv
import io
import json

from pdmask import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prob_zero_overlap(capsys):
    code, out, _ = run(capsys, "prob", "--kind", "zero-overlap", "--n", "4", "--u", "3",
                       "--t", "3", "--q", "3")
    rec = json.loads(out)
    assert code == 0 and rec["schema"] == 1
    assert (rec["exact_num"], rec["exact_den"]) == (1, 3)


def test_prob_mask_consecutive(capsys):
    _, out, _ = run(capsys, "prob", "--kind", "mask-consecutive", "--q", "3", "--u", "7")
    rec = json.loads(out)
    assert round(rec["exact"], 4) == 0.1756


def test_prob_overlap_csv(capsys):
    code, out, _ = run(capsys, "prob", "--kind", "overlap", "--n", "8", "--u", "2", "--t", "2",
                       "--format", "csv", "--trials", "2000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and list(rows[0]) == cli.PROB_CSV
    assert (rows[0]["exact_num"], rows[0]["exact_den"]) == ("13", "28")


def test_prob_invalid(capsys):
    code, _, err = run(capsys, "prob", "--kind", "overlap", "--n", "3", "--u", "5")
    assert code == 1 and "error" in err


def test_mask_example(capsys):
    code, out, err = run(capsys, "mask", "--field", "5", "--n", "4", "--phi", "1,2",
                         "--message", "4,0,3", "--verbose")
    rec = json.loads(out)
    assert code == 0
    assert rec["codeword"] == [3, 2, 3, 1] and rec["z"] == [3] and rec["masked"]
    assert rec["forbidden"] == [0, 4]
    assert "stuck positions" in err


def test_mask_infeasible(capsys):
    code, out, _ = run(capsys, "mask", "--field", "5", "--n", "4", "--phi", "0,1,2",
                       "--message", "1,3,0", "--construction", "c1-cor")
    assert code == 1 and "MaskingInfeasible" in json.loads(out)["error"]


def test_simulate_reproducible(capsys, tmp_path):
    argv = ["simulate", "--field", "5", "--n", "8", "--r", "3", "--u", "2", "--t", "1",
            "--trials", "200", "--seed", "3"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    rec = json.loads(first)
    assert rec["report"]["successes"] == 200 and rec["report"]["hazard_count"] == 0
    out = tmp_path / "r.csv"
    assert cli.main(argv + ["--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == cli.SIM_CSV and rows[0]["successes"] == "200"


def test_simulate_workers_match(capsys):
    argv = ["simulate", "--n", "8", "--r", "3", "--u", "2", "--t", "1", "--trials", "120"]
    _, serial, _ = run(capsys, *argv)
    _, pooled, _ = run(capsys, *argv, "--workers", "2")
    assert serial == pooled


def test_simulate_host_file(capsys, tmp_path):
    host = tmp_path / "host.txt"
    host.write_text("bch 7 2 12 1 5\n")
    code, out, _ = run(capsys, "simulate", "--field", "7", "--n", "12", "--u", "1", "--t", "1",
                       "--construction", "prop3", "--host", str(host), "--trials", "50")
    rec = json.loads(out)
    assert code == 0 and rec["code"]["k"] == 6 and rec["report"]["successes"] == 50


def test_compare(capsys):
    code, out, err = run(capsys, "compare", "--trials", "1")
    rec = json.loads(out)
    assert code == 0 and not rec["discrepancies"] and not err
    assert [c["k"] for c in rec["codes"]] == [8, 9]
    assert rec["notes"]


def test_bch(capsys):
    code, out, _ = run(capsys, "bch", "--p", "2", "--m", "4", "--n", "15", "--delta", "7")
    rec = json.loads(out)
    assert code == 0 and (rec["n"], rec["k"]) == (15, 5)
    assert len(rec["generator"]) == 11


def test_bch_bad_length(capsys):
    code, _, err = run(capsys, "bch", "--p", "2", "--m", "4", "--n", "14", "--delta", "3")
    assert code == 1 and "divide" in err


def test_usage_error_is_validation_error(capsys):
    assert cli.main(["simulate"]) == 1
    assert cli.main(["prob", "--kind", "bogus"]) == 1
    assert cli.main(["--help"]) == 0
