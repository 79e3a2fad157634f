import json

import pytest

from krasner import cli
from krasner.corpus import hyper3
from krasner.docio import dump_structure, load_structure, same_tables


def run(capsys, *args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--structure", "hyper3")
    assert code == 0 and "hyper3: ok" in out


def test_validate_broken_file(capsys, tmp_path, mutator):
    p = tmp_path / "bad.json"
    dump_structure(mutator(hyper3(), g={("u", "u"): "u"}), p)
    code, out, _ = run(capsys, "validate", "--structure", str(p))
    assert code == 1 and "distributivity" in out


def test_ideals_listing(capsys):
    code, out, _ = run(capsys, "ideals", "--structure", "hyper3")
    assert code == 0
    assert "3 hyperideals" in out and "{0, u}  rad = {0, u}  prime maximal" in out


def test_radical(capsys):
    code, out, _ = run(capsys, "radical", "--structure", "hyper3", "--ideal", "0")
    assert code == 0 and out.strip() == "rad({0}) = {0, u}"


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--structure", "hyper3", "--ideal", "0,u", "--mulset", "1",
                       "--phi", "phi1", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["verdict"] == "vacuous" and doc["format_version"] == 1


def test_classify_refuted_exit_1(capsys):
    code, out, _ = run(capsys, "classify", "--structure", "hyper3", "--ideal", "0", "--mulset", "1",
                       "--class", "delta-S")
    assert code == 1 and "fails" in out


def test_inadmissible_mulset(capsys):
    code, _, err = run(capsys, "classify", "--structure", "hyper3", "--ideal", "0", "--mulset", "0")
    assert code == 2 and "disjoint" in err


def test_unknown_structure(capsys):
    code, _, err = run(capsys, "validate", "--structure", "no-such-thing")
    assert code == 2 and err


def test_modular_witness(capsys):
    code, out, _ = run(capsys, "classify", "--structure", "modular(2,8,2,2)", "--ideal", "2^2", "--phi", "phi0",
                       "--delta", "delta0", "--mulset", "1", "--witness", "2,2^1")
    assert code == 1 and "(2, 2)" in out


def test_unit_interval_sampled(capsys):
    code, out, _ = run(capsys, "classify", "--structure", "unit-interval-max", "--ideal", "0.5", "--phi", "phiW",
                       "--mulset", "(0,1/10]", "--allow-overlap", "--grid-step", "1/20")
    assert code == 0 and "holds-on-sample" in out


def test_product_and_localize_round_trip(capsys, tmp_path):
    p = tmp_path / "p.json"
    code, _, _ = run(capsys, "product", "--structure", "hyper3", "--structure", "Z2", "--out", str(p))
    assert code == 0
    prod = load_structure(p)
    assert prod.size == 6
    code, out, _ = run(capsys, "validate", "--structure", str(p))
    assert code == 0
    q = tmp_path / "q.json"
    code, _, _ = run(capsys, "localize", "--structure", "hyper3", "--mulset", "1", "--out", str(q))
    assert code == 0 and same_tables(load_structure(q), hyper3())


def test_theorems_report_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "theorems", "--corpus", "4", "--only", "T15", "--no-timing", "--report", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["format_version"] == 1


def test_theorems_violation_exit(capsys):
    code, out, _ = run(capsys, "theorems", "--corpus", "3", "--only", "T11")
    assert code == 1 and "T11" in out


def test_theorems_partial_exit(capsys):
    code, _, _ = run(capsys, "theorems", "--corpus", "4", "--only", "T01", "--max-instances", "3")
    assert code == 2


@pytest.mark.parametrize("args", [[], ["frobnicate"]])
def test_bad_usage(capsys, args):
    with pytest.raises(SystemExit) as e:
        cli.main(args)
    assert e.value.code == 2
