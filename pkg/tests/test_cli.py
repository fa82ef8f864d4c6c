import io
import json

import pytest

from bitarm.cli import main
from bitarm.dataset import DiscretizeConfig, parse_similarity_matrix
from bitarm.pipeline import RunConfig, run_mine
from bitarm.report import read_rules_table
from bitarm.rules import rank_key
from bitarm.synth import BadDensity, synth_csv, synth_matrix


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text(synth_csv(3, 60, 8, 0.45))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_mine_tsv_defaults(capsys, corpus):
    code, out, _ = run(capsys, "mine", corpus)
    assert code == 0
    header, rows = read_rules_table(out)
    assert header[:4] == ["antecedent", "consequent", "support", "confidence"]
    assert header[-4:] == ["n", "n_a", "n_b", "n_ab"]
    assert 0 < len(rows) <= 15
    assert "# config: " in out and '"discretize": "max-minus-x:25"' in out
    assert "# entropy_mean=" in out and "# variance=" in out


def test_mine_is_deterministic(capsys, corpus):
    a = run(capsys, "mine", corpus, "--format", "json")[1]
    b = run(capsys, "mine", corpus, "--format", "json", "--workers", "3")[1]
    assert a == run(capsys, "mine", corpus, "--format", "json")[1]
    assert json.loads(a)["rules"] == json.loads(b)["rules"]


def test_tsv_and_json_agree(capsys, corpus):
    _, tsv, _ = run(capsys, "mine", corpus, "--min-confidence", "0.3", "--top", "40")
    _, js, _ = run(capsys, "mine", corpus, "--min-confidence", "0.3", "--top", "40",
                   "--format", "json")
    doc = json.loads(js)
    header, rows = read_rules_table(tsv)
    assert header == doc["columns"]
    assert len(rows) == len(doc["rules"])
    for row, rec in zip(rows, doc["rules"]):
        for col in header:
            v = rec[col]
            if isinstance(v, list):
                assert row[col] == ";".join(v)
            elif isinstance(v, str):
                assert row[col] == v
            else:
                assert float(row[col]) == v
    footer = dict(line[2:].split("=", 1) for line in tsv.splitlines()
                  if line.startswith("# ") and "=" in line and "config" not in line
                  and line.startswith(("# entropy", "# variance")))
    assert float(footer["entropy_mean"]) == doc["diversity"]["entropy_mean"]
    assert float(footer["variance"]) == doc["diversity"]["variance"]


def test_report_order_is_rank_order(capsys, corpus):
    _, js, _ = run(capsys, "mine", corpus, "--format", "json", "--top", "100",
                   "--min-confidence", "0.2")
    rules = json.loads(js)["rules"]
    keys = [(-r["confidence"], -r["support"]) for r in rules]
    assert keys == sorted(keys)


def test_infinite_measures_render_as_inf(capsys, tmp_path):
    path = tmp_path / "perfect.csv"
    path.write_text("probe,a,b,c\np1,0.9,0.9,0\np2,0.9,0.9,0\np3,0,0.9,0.9\np4,0,0,0.9\n")
    _, out, _ = run(capsys, "mine", path, "--min-support", "0.5", "--min-confidence", "1.0")
    _, rows = read_rules_table(out)
    a_to_b = next(r for r in rows if r["antecedent"] == "a" and r["consequent"] == "b")
    assert a_to_b["CONV"] == "inf" and a_to_b["SEB"] == "inf"
    _, js, _ = run(capsys, "mine", path, "--min-support", "0.5", "--min-confidence", "1.0",
                   "--format", "json")
    assert json.loads(js)["rules"][0]["CONV"] == "inf"


def test_no_rules_still_succeeds(capsys, corpus):
    code, out, _ = run(capsys, "mine", corpus, "--min-support", "1.0")
    assert code == 0
    assert read_rules_table(out)[1] == []
    assert "# entropy_mean=NA" in out


def test_measure_selection(capsys, corpus):
    _, out, _ = run(capsys, "mine", corpus, "--measures", "lift,conv")
    header, _ = read_rules_table(out)
    assert header == ["antecedent", "consequent", "support", "confidence", "LIFT", "CONV",
                      "n", "n_a", "n_b", "n_ab"]


@pytest.mark.parametrize("argv, code, kind", [
    (["mine", "/nonexistent/x.csv"], 1, "io"),
    (["mine", "{corpus}", "--min-support", "1.5"], 3, "config"),
    (["mine", "{corpus}", "--min-confidence", "0"], 3, "config"),
    (["mine", "{corpus}", "--discretize", "median:3"], 3, "config"),
    (["mine", "{corpus}", "--measures", "FOO"], 3, "config"),
    (["mine", "{corpus}", "--top", "0"], 3, "config"),
    (["mine", "{corpus}", "--entropy-mode", "max"], 3, "config"),
    (["mine", "{bad}"], 2, "ValueOutOfRange"),
    (["synth", "--density", "0"], 3, "BadDensity"),
])
def test_errors(capsys, corpus, tmp_path, argv, code, kind):
    bad = tmp_path / "bad.csv"
    bad.write_text("probe,g1\np1,1.2\n")
    argv = [a.format(corpus=corpus, bad=bad) for a in argv]
    got, _, err = run(capsys, *argv)
    assert got == code
    doc = json.loads(err.strip().splitlines()[-1])
    assert doc["error"] == kind and doc["exit"] == code


def test_usage_error_is_config_exit(capsys):
    assert main(["mine"]) == 3
    assert main(["frobnicate"]) == 3


def test_strict_paper_and_early_exit_flags(capsys, corpus, caplog):
    base = run(capsys, "mine", corpus, "--format", "json")[1]
    strict = run(capsys, "mine", corpus, "--format", "json", "--strict-paper")[1]
    assert json.loads(base)["rules"] == json.loads(strict)["rules"]
    _, diag, _ = run(capsys, "mine", corpus, "--format", "json", "--paper-early-exit")
    doc = json.loads(diag)
    assert "early_exit_would_skip" in doc["summary"]
    assert doc["rules"] == json.loads(base)["rules"]


def test_output_file(capsys, corpus, tmp_path):
    out = tmp_path / "r.tsv"
    assert main(["mine", str(corpus), "-o", str(out)]) == 0
    assert out.read_text().startswith("# bitarm mine")


def test_stdin(capsys, corpus, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(corpus.read_text()))
    code, out, _ = run(capsys, "mine", "-")
    assert code == 0 and "antecedent" in out


class TestMeasuresCommand:
    def test_roundtrip_from_mine_report(self, capsys, corpus, tmp_path):
        _, mined, _ = run(capsys, "mine", corpus, "--format", "json")
        report = tmp_path / "rules.tsv"
        run(capsys, "mine", corpus, "-o", report)
        code, js, _ = run(capsys, "measures", report, "--format", "json")
        assert code == 0
        a, b = json.loads(mined), json.loads(js)
        assert a["rules"] == b["rules"]
        assert a["diversity"] == b["diversity"]

    def test_count_from_matrix(self, capsys, corpus, tmp_path):
        _, mined, _ = run(capsys, "mine", corpus, "--format", "json")
        first = json.loads(mined)["rules"][0]
        rules = tmp_path / "r.csv"
        rules.write_text("antecedent,consequent\n"
                         f"{';'.join(first['antecedent'])},{';'.join(first['consequent'])}\n")
        code, js, _ = run(capsys, "measures", rules, "--matrix", corpus, "--format", "json")
        assert code == 0
        assert json.loads(js)["rules"][0] == first

    def test_missing_counts_needs_matrix(self, capsys, tmp_path):
        rules = tmp_path / "r.csv"
        rules.write_text("antecedent,consequent\na,b\n")
        assert run(capsys, "measures", rules)[0] == 3

    def test_unknown_item(self, capsys, corpus, tmp_path):
        rules = tmp_path / "r.csv"
        rules.write_text("antecedent,consequent\nnope,g1\n")
        assert run(capsys, "measures", rules, "--matrix", corpus)[0] == 2


class TestSynth:
    def test_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["synth", "--seed", "1", "--rows", "10", "--items", "8", "--density", "0.3", "-o", str(a)])
        main(["synth", "--seed", "1", "--rows", "10", "--items", "8", "--density", "0.3", "-o", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_parseable(self):
        m = parse_similarity_matrix(synth_csv(2, 100, 12, 0.5))
        assert m.shape == (100, 12)
        assert m == synth_matrix(2, 100, 12, 0.5)

    def test_density_is_ones_fraction(self):
        from bitarm.dataset import discretize
        m = synth_matrix(5, 400, 20, 0.3)
        ones = discretize(m, DiscretizeConfig()).to_array().mean()
        assert ones == pytest.approx(0.3, abs=0.02)
        beta = discretize(m, DiscretizeConfig.parse("beta:0.7")).to_array()
        assert (beta == discretize(m, DiscretizeConfig()).to_array()).all()

    @pytest.mark.parametrize("d", [0, 1, -0.1])
    def test_bad_density(self, d):
        with pytest.raises(BadDensity):
            synth_csv(0, 5, 5, d)


class TestBenchmarkCommand:
    def test_small_corpus(self, capsys):
        code, js, _ = run(capsys, "benchmark", "--rows", "300", "--items", "12", "--density", "0.4",
                          "--min-support", "0.1", "--repeat", "1", "--format", "json")
        assert code == 0
        doc = json.loads(js)
        assert doc["miner"]["itemsets"] == doc["apriori"]["itemsets"] > 0
        assert doc["source_passes"] == 1 and doc["miner"]["database_passes"] == 1

    def test_empty_corpus(self, capsys, tmp_path):
        path = tmp_path / "z.csv"
        path.write_text("probe,a,b\np1,0,0\np2,0,0\n")
        code, out, _ = run(capsys, "benchmark", "--input", path, "--repeat", "1",
                           "--discretize", "beta:0.5")
        assert code == 0
        assert "\t0\n" in out

    def test_outputs_repeatable(self, capsys):
        argv = ["benchmark", "--rows", "200", "--items", "10", "--seed", "4", "--repeat", "1",
                "--format", "json"]
        a, b = json.loads(run(capsys, *argv)[1]), json.loads(run(capsys, *argv)[1])
        for doc in (a, b):
            for algo in ("miner", "apriori"):
                doc[algo].pop("wall_clock_s")
                doc[algo].pop("peak_alloc_bytes")
            doc.pop("miner_faster")
            doc.pop("miner_leaner")
        assert a == b


def test_run_mine_counts_one_pass(corpus):
    with open(corpus) as fh:
        res = run_mine(fh, RunConfig(min_support=0.1))
    assert res.source_passes == 1
    assert [rank_key(r) for r in res.ranked] == sorted(rank_key(r) for r in res.ranked)
