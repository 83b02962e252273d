import csv
import io
import json
import subprocess
import sys

import pytest

from lagsob.cli import format_number, main
from lagsob.numerics import context


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# params: alpha=")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


class TestTable:
    def test_norms(self, capsys):
        code, out, _ = run(capsys, "table", "--what", "norms", "--alpha", "0", "--n-max", "3", "--M", "0", "--N", "0", "--c", "1")
        assert code == 0
        row = csv_rows(out)[2]
        assert row["n"] == "2" and float(row["norm_sq"]) == 4

    def test_kernels(self, capsys):
        code, out, _ = run(capsys, "table", "--what", "kernels", "--alpha", "0", "--c", "1", "--n-max", "2")
        assert code == 0
        rows = csv_rows(out)
        assert rows[-1]["n"] == "2" and float(rows[-1]["K"]) == 1

    def test_lambda_columns(self, capsys):
        code, out, _ = run(capsys, "table", "--what", "lambda", "--alpha", "0", "--c", "1", "--M", "1", "--N", "1", "--n-max", "10")
        assert code == 0
        rows = csv_rows(out)
        assert rows[0]["n"] == "2" and rows[-1]["n"] == "10"
        for prefix in ("projection", "paper_formula", "closed_form"):
            assert f"{prefix}_l_m2" in rows[0]
        for r in rows:
            assert float(r["projection_l_m2"]) == pytest.approx(float(r["closed_form_l_m2"]), rel=1e-12)

    @pytest.mark.parametrize("what", ["laguerre", "connection", "values_at_c"])
    def test_other_tables(self, capsys, what):
        code, out, _ = run(capsys, "table", "--what", what, "--M", "1", "--N", "2", "--n-list", "1,5,9")
        assert code == 0
        assert [r["n"] for r in csv_rows(out)] == ["1", "5", "9"]

    def test_scientific_notation(self, capsys):
        _, out, _ = run(capsys, "table", "--what", "norms", "--n-max", "2", "--precision", "20")
        cell = csv_rows(out)[1]["norm_sq"]
        mant, exp = cell.split("e")
        assert len(mant.replace("-", "").replace(".", "")) == 20
        assert exp.startswith(("+", "-"))

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "table", "--what", "norms", "--n-max", "3", "--format", "json", "--M", "1")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"params", "columns", "rows"}
        assert doc["params"]["precision"] == 64 and doc["params"]["M"] == "1.0"
        assert doc["columns"] == ["n", "norm_sq", "log_norm_sq"]
        assert len(doc["rows"]) == 4 and all(len(r) == 3 for r in doc["rows"])

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "norms.csv"
        code, out, _ = run(capsys, "table", "--what", "norms", "--n-max", "3", "--out", str(path))
        assert code == 0 and out == ""
        assert path.read_text().startswith("# params:")

    def test_determinism(self, capsys):
        args = ("table", "--what", "lambda", "--M", "1", "--N", "1", "--n-max", "8", "--format", "json")
        first = run(capsys, *args)[1]
        second = run(capsys, *args)[1]
        assert first == second


class TestErrors:
    def test_alpha_domain(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "sobolev", "--alpha", "-1.5")
        assert code == 2 and "alpha" in err

    def test_positive_axis_point(self, capsys):
        code, _, _ = run(capsys, "asymptotics", "--n-list", "10,20", "--x-re", "2")
        assert code == 2

    def test_descending_list(self, capsys):
        code, _, _ = run(capsys, "asymptotics", "--n-list", "20,10")
        assert code == 2

    def test_bad_list(self, capsys):
        assert run(capsys, "table", "--what", "norms", "--n-list", "1,x")[0] == 2

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, _ = run(capsys, "table", "--what", "norms", "--out", str(tmp_path / "missing" / "x.csv"))
        assert code == 2

    def test_argparse_usage(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["table", "--what", "nonsense"])
        assert info.value.code == 2

    def test_low_precision(self, capsys):
        assert run(capsys, "table", "--what", "norms", "--precision", "10")[0] == 2


class TestAsymptotics:
    def test_columns_and_classical_ratio(self, capsys):
        code, out, _ = run(capsys, "asymptotics", "--n-list", "100,1000", "--x-re", "2", "--x-im", "3")
        assert code == 0
        rows = csv_rows(out)
        assert [r["n"] for r in rows] == ["100", "1000"]
        assert all(float(r["ratio_re"]) == 1 and float(r["ratio_im"]) == 0 for r in rows)

    def test_standard_config(self, capsys):
        code, out, _ = run(capsys, "asymptotics", "--n-list", "1000", "--alpha", "0", "--c", "1", "--M", "1", "--N", "1")
        assert code == 0
        assert abs(float(csv_rows(out)[0]["l_m2_over_n4"]) - 1) < 0.1

    def test_kernel_ratio_window(self, capsys):
        ns = ",".join(str(n) for n in range(100_000, 120_001, 1000))
        code, out, _ = run(capsys, "asymptotics", "--n-list", ns)
        assert code == 0
        ratios = sorted(float(r["K_ratio"]) for r in csv_rows(out))
        assert abs(ratios[len(ratios) // 2] - 1) < 0.05


class TestVerify:
    def test_core_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "core", "--precision", "64", "--seed", "1")
        assert code == 0
        assert all(line.startswith("PASS") for line in out.strip().splitlines()[:-1])

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "core", "--format", "json", "--precision", "40")
        doc = json.loads(out)
        assert doc["passed"] is (code == 0)
        assert {"name", "passed", "measured", "threshold"} <= set(doc["checks"][0])

    def test_report_deterministic(self, capsys):
        a = run(capsys, "verify", "--suite", "core", "--format", "json", "--precision", "40", "--seed", "3")[1]
        b = run(capsys, "verify", "--suite", "core", "--format", "json", "--precision", "40", "--seed", "3")[1]
        assert a == b

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "lagsob", "table", "--what", "norms", "--n-max", "2"],
            capture_output=True, text=True, check=False,
        )
        assert proc.returncode == 0 and proc.stdout.startswith("# params:")


def test_format_number():
    ctx = context(30)
    assert format_number(ctx.mpf(4), 5) == "4.0000e+00"
    assert format_number(ctx.mpf("-0.000123"), 3) == "-1.23e-04"
    assert format_number(0.0, 4) == "0.000e+00"
    assert format_number(None, 4) == "nan"
