import json

import pytest

from cpinv import cli, io
from cpinv.errors import InputError, InternalConsistencyError

from .conftest import ALL_FIXTURES


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def fixture_dict(name):
    return json.loads(io.load(name).dumps())


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_description_round_trip(name):
    desc = io.load(name)
    again = io.loads(desc.dumps())
    assert again == desc
    assert again.dumps() == desc.dumps()


def test_load_accepts_short_names(tmp_path):
    assert io.load("fix-e8") == io.load("FIX-E8") == io.load("e8")
    p = tmp_path / "e8.json"
    p.write_text(io.load("FIX-E8").dumps())
    assert io.load(p) == io.load("FIX-E8")
    with pytest.raises(InputError):
        io.load("FIX-NOPE")


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(min_poly=["1", "0", "1/0"]),
    lambda d: d.pop("cocycle"),
    lambda d: d.update(group_G=["id", "nope"]),
    lambda d: d.update(embedding_hint=["a", "b"]),
    lambda d: d.update(precision={"default_bits": 64}),
    lambda d: d["cocycle"].pop("sigma,sigma"),
])
def test_parse_errors(mutate):
    d = fixture_dict("FIX-E8")
    mutate(d)
    with pytest.raises(InputError):
        io.parse_description(d)


def test_build_rejects_reducible_and_non_monic():
    d = fixture_dict("FIX-TRIV")
    d["min_poly"] = ["-1", "0", "1"]
    with pytest.raises(InputError):
        io.build(io.parse_description(d))
    d["min_poly"] = ["1", "0", "2"]
    with pytest.raises(InputError):
        io.build(io.parse_description(d))


def test_build_records_conjugation():
    assert io.build(io.load("FIX-E8")).alpha_is_conjugation
    assert not io.build(io.load("FIX-REAL")).alpha_is_conjugation


# --------------------------------------------------------------------- CLI


def write(tmp_path, d, name="alg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(d))
    return str(p)


def test_validate_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", "FIX-E8")[0] == 0
    assert run(capsys, "validate", "FIX-REAL")[0] == 0
    d = fixture_dict("FIX-E8")
    d["min_poly"][0] = "1/0"
    code, _, err = run(capsys, "validate", write(tmp_path, d))
    assert code == 2 and "input error" in err
    d = fixture_dict("FIX-E8")
    d["automorphisms"]["beta"] = ["1", "1"]
    code, out, _ = run(capsys, "validate", write(tmp_path, d))
    assert code == 1 and "witness" in out and "root check beta" in out


def test_involution_command(capsys):
    code, out, _ = run(capsys, "involution", "FIX-E8")
    assert code == 0 and "tau(e_sigma) = (-x^2)*e_sigma" in out and "= 4" in out
    code, out, _ = run(capsys, "involution", "FIX-S3")
    assert code == 1 and "anti-multiplicative" in out and "witness" in out
    assert run(capsys, "involution", "FIX-TRIV")[0] == 0


def test_positivity_command(capsys):
    code, out, _ = run(capsys, "positivity", "FIX-E8", "--method", "both")
    assert code == 0 and out.count("POS_DEF") >= 2
    code, out, _ = run(capsys, "positivity", "FIX-REAL")
    assert code == 1 and "(1, 1)" in out
    assert run(capsys, "positivity", "FIX-TRIV", "--method", "transport")[0] == 0
    assert run(capsys, "positivity", "FIX-TRIV", "--method", "trace-form")[0] == 0


def test_positivity_disagreement_exits_4(capsys, monkeypatch):
    from cpinv import positivity
    from cpinv.reports import Report

    def broken(tau, ctx):
        rep = Report("positivity cross-check")
        rep.add("trace-form and transport agree", False, witness={"forced": True})
        rep.details.update({"trace_form": {}, "transport": {}})
        return rep

    monkeypatch.setattr(cli, "compare_methods", broken)
    assert run(capsys, "positivity", "FIX-TRIV")[0] == 4
    assert positivity.compare_methods is not broken


def test_internal_error_exits_4(capsys, monkeypatch):
    def boom(args):
        raise InternalConsistencyError("forced")

    monkeypatch.setitem(cli.COMMANDS, "validate", boom)
    code, _, err = run(capsys, "validate", "FIX-TRIV")
    assert code == 4 and "forced" in err


def test_precision_exhaustion_exits_3(capsys):
    code, _, err = run(capsys, "--precision-bits", "2", "--max-precision-bits", "2", "positivity", "FIX-C16")
    assert code == 3 and "precision exhausted" in err
    code, out, _ = run(capsys, "--report", "json", "--precision-bits", "2", "--max-precision-bits", "2",
                       "positivity", "FIX-C16")
    assert code == 3 and json.loads(out)["exit_code"] == 3


def test_theorems_command(capsys):
    code, out, _ = run(capsys, "theorems", "FIX-E8")
    assert code == 0 and "iff_check" in out
    code, out, _ = run(capsys, "--report", "json", "theorems", "FIX-S3")
    data = json.loads(out)
    iff = next(r for r in data["reports"] if r["check"] == "iff_check")
    assert code == 0 and iff["status"] == "pass"
    assert iff["details"]["LHS"] is False and iff["details"]["RHS"] is False
    assert iff["details"]["involution witnesses"]
    code, out, _ = run(capsys, "--report", "json", "theorems", "FIX-REAL")
    p22 = next(r for r in json.loads(out)["reports"] if r["check"] == "prop22_check")
    assert p22["status"] == "pass" and p22["details"]["instance"] == "contrapositive"


def test_json_report_and_env(capsys, monkeypatch):
    monkeypatch.setenv("CPINV_REPORT", "json")
    monkeypatch.setenv("CPINV_PRECISION_BITS", "96")
    code, out, _ = run(capsys, "validate", "FIX-E8")
    data = json.loads(out)
    assert code == 0 and data["exit_code"] == 0
    emb = next(r for r in data["reports"] if r["check"] == "embedding")
    assert emb["precision_used"] == 96
    monkeypatch.setenv("CPINV_PRECISION_BITS", "many")
    assert run(capsys, "validate", "FIX-E8")[0] == 2
    monkeypatch.setenv("CPINV_REPORT", "yaml")
    monkeypatch.delenv("CPINV_PRECISION_BITS")
    assert run(capsys, "validate", "FIX-E8")[0] == 2


def test_argument_errors(capsys):
    assert run(capsys, "frobnicate", "FIX-E8")[0] == 2
    assert run(capsys, "validate", "no-such-file.json")[0] == 2
    assert run(capsys, "--precision-bits", "64", "--max-precision-bits", "32", "validate", "FIX-E8")[0] == 2


def test_codebook_command(capsys, tmp_path):
    out_json, out_csv = tmp_path / "cb.json", tmp_path / "cb.csv"
    code, _, _ = run(capsys, "codebook", "FIX-TRIV", "--size", "4", "--out", str(out_json), "--csv", str(out_csv))
    assert code == 0
    data = json.loads(out_json.read_text())
    assert len(data["codewords"]) == 4 and data["metadata"]["diversity"]["fully_diverse"]
    lo, hi = (float(v) for v in data["metadata"]["diversity"]["diversity_product"])
    assert lo <= 2 ** 0.5 + 1e-15 and hi >= 2 ** 0.5 - 1e-15
    assert out_csv.read_text().startswith("codeword,row,col,re,im")
    assert run(capsys, "codebook", "FIX-TRIV", "--size", "1")[0] == 2


def test_codebook_stdout_is_pure_json(capsys):
    code, out, err = run(capsys, "codebook", "FIX-E8-DIV", "--size", "4")
    assert code == 0 and json.loads(out)["n"] == 2 and "codebook" in err


def test_codebook_refuses_non_positive(capsys):
    code, out, err = run(capsys, "codebook", "FIX-REAL", "--size", "2")
    assert code == 1
    code, out, err = run(capsys, "codebook", "FIX-REAL", "--size", "2", "--force")
    assert code == 0 and "warning" in err


def test_codebook_split_fixture_reports_zero_pairs(capsys):
    code, out, err = run(capsys, "codebook", "FIX-E8", "--size", "32")
    assert code == 1 and "zero_pairs" in err


def test_codebook_write_failure(capsys, tmp_path):
    code, _, _ = run(capsys, "codebook", "FIX-TRIV", "--size", "2", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2


def test_codebook_byte_identical(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run(capsys, "codebook", "FIX-E8-DIV", "--strategy", "mixed", "--size", "6", "--seed", "4",
                   "--out", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
