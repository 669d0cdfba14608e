import json

from padicres.cli import dispatch, main
from padicres import documents as docs


NEWTON_JOB = {"context": {"p": 2, "N": 30},
              "series": [{"coeffs": [2, 2, 1]}], "params": {}}
IRRED_JOB = {"context": {"p": 3, "N": 30},
             "series": [{"coeffs": [-3, 0, 1]}], "params": {}}
RES_JOB = {"context": {"p": 2, "N": 30},
           "series": [{"coeffs": [-2, 1]}, {"coeffs": [-4, 1]}],
           "params": {"disc": "open"}}


def clean(report):
    report.pop("_rows", None)
    report.pop("_figure", None)
    return report


def test_newton_report():
    rep = clean(dispatch("newton", NEWTON_JOB))
    assert rep["result"]["slopes"] == ["1/2"]
    assert rep["result"]["roots_by_slope"] == [{"slope": "1/2", "count": 2}]


def test_irred_report():
    rep = clean(dispatch("irred", IRRED_JOB))
    assert rep["result"]["verdict"] == "Irreducible"
    assert rep["result"]["certificate"] == "newton_screen"


def test_res_report():
    rep = clean(dispatch("res", RES_JOB))
    assert rep["result"]["valuation"] == "1"
    assert rep["result"]["invariant_factors"] == ["0", "1"]
    assert rep["result"]["quotient_exponent"] == 1


def test_round_trip_echo():
    rep = clean(dispatch("newton", NEWTON_JOB))
    echo = rep["input"]
    ctx, series, params, echo2 = docs.job_from_doc(echo)
    assert echo2 == echo


def test_element_literal_and_tail_forms():
    job = {"context": {"p": 3, "e": 2, "N": 20},
           "series": [{"coeffs": [{"base_exp": "1/2", "digits": [1]},
                                  "2/1", 1],
                       "tail": {"bound": "5", "strict": True}}],
           "params": {}}
    rep = clean(dispatch("newton", job))
    assert rep["result"]["complete"] is False or rep["result"]["slopes"]


def test_determinism_same_seed():
    a = docs.dump_report(clean(dispatch("phi-bound", RES_JOB, seed=7)))
    b = docs.dump_report(clean(dispatch("phi-bound", RES_JOB, seed=7)))
    assert a == b


def test_cli_main_stdout_and_outdir(tmp_path, capsys, monkeypatch):
    job = tmp_path / "job.json"
    job.write_text(json.dumps(NEWTON_JOB))
    out = tmp_path / "out"
    code = main(["newton", str(job), "--outdir", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    rep = json.loads(captured.out)
    assert rep["result"]["slopes"] == ["1/2"]
    assert (out / "report.json").exists()
    assert (out / "newton.tsv").exists()
    assert (out / "newton.png").exists()
    tsv = (out / "newton.tsv").read_text().splitlines()
    assert tsv[0].split("\t") == ["k", "v_p", "slope_to_next"]


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"context": {"p": 4}}))
    assert main(["newton", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "p = 4" in err

    missing_field = tmp_path / "missing.json"
    missing_field.write_text(json.dumps({"context": {"N": 10}}))
    assert main(["newton", str(missing_field)]) == 2
    assert "context.p" in capsys.readouterr().err

    tail = tmp_path / "tail.json"
    tail.write_text(json.dumps({
        "context": {"p": 2, "N": 10},
        "series": [{"coeffs": [2, 1], "tail": None}], "params": {}}))
    assert main(["newton", str(tail)]) == 3

    wild = tmp_path / "wild.json"
    wild.write_text(json.dumps({
        "context": {"p": 2, "N": 30},
        "series": [{"coeffs": [-4, 0, 0, 0, 1]}], "params": {}}))
    assert main(["irred", str(wild)]) == 4


def test_construct_emits_reusable_document():
    rep = clean(dispatch("construct",
                         {"context": {"p": 2, "N": 24}, "series": [],
                          "params": {"kind": "c31", "s": 1}}))
    doc = rep["result"]["document"]
    res_rep = clean(dispatch("res", {**doc, "params": {"disc": "closed"}}))
    assert res_rep["result"]["valuation_pi"] == "2"


def test_construct_c51():
    rep = clean(dispatch("construct",
                         {"context": {"p": 3, "N": 24}, "series": [],
                          "params": {"kind": "c51", "n": 2}}))
    meta = rep["result"]["meta"]
    assert meta["phi_at_witness"] == meta["expected_phi"] == "5/2"


def test_precision_override():
    rep = clean(dispatch("newton", NEWTON_JOB, override_N=12))
    assert rep["input"]["context"]["N"] == 12
