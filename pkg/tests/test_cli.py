"""CLI surface: subcommands, exit codes, file formats."""

import json

from xyzcodes import cli


def run(argv):
    return cli.main(argv)


class TestConstruct:
    def test_chamon4(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        assert run(["construct", "chamon4", "2", "2", "2", "2", "--out", str(out)]) == 0
        text = capsys.readouterr().out
        assert "N=128" in text and "k=32" in text
        assert out.exists()

    def test_toric4_k6(self, capsys):
        assert run(["construct", "toric4", "3", "3", "3", "3"]) == 0
        assert "k=6" in capsys.readouterr().out

    def test_invalid_lengths_usage_error(self):
        assert run(["construct", "chamon4", "1", "1", "1", "1"]) == cli.EXIT_USAGE

    def test_unknown_family_usage_error(self):
        assert run(["construct", "bogus", "2"]) == cli.EXIT_USAGE


class TestVerify:
    def test_constructed_code_passes(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        run(["construct", "xyz4-concat", "3", "3", "3", "3", "--out", str(out)])
        capsys.readouterr()
        assert run(["verify", str(out)]) == 0
        text = capsys.readouterr().out
        assert "PASS" in text
        assert "k by closed form: 1" in text
        assert "distance upper bound: 9" in text

    def test_corrupted_code_fails(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        run(["construct", "chamon3", "2", "2", "2", "--out", str(out)])
        capsys.readouterr()
        lines = out.read_text().splitlines()
        # flip one Hz bit inside the first matrix row after the Hz label
        iz = lines.index("Hz") + 2
        row = list(lines[iz])
        row[0] = "1" if row[0] == "0" else "0"
        lines[iz] = "".join(row)
        out.write_text("\n".join(lines) + "\n")
        code = run(["verify", str(out)])
        assert code == cli.EXIT_VALIDATION
        assert "FAIL" in capsys.readouterr().out

    def test_missing_file_io_error(self):
        assert run(["verify", "/nonexistent/code.txt"]) == cli.EXIT_IO


class TestSimulateThreshold:
    def test_zero_rate_zero_failures(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        run(["construct", "chamon3", "2", "2", "2", "--out", str(out)])
        capsys.readouterr()
        assert (
            run(
                [
                    "simulate", str(out), "--noise", "depolarizing", "--p", "0",
                    "--trials", "20", "--seed", "1",
                ]
            )
            == 0
        )
        csv_text = capsys.readouterr().out
        assert ",0," in csv_text.splitlines()[1]

    def test_missing_p_usage_error(self, tmp_path):
        out = tmp_path / "code.txt"
        run(["construct", "chamon3", "2", "2", "2", "--out", str(out)])
        assert run(["simulate", str(out), "--noise", "depolarizing"]) == cli.EXIT_USAGE

    def test_threshold_scan_csv(self, tmp_path, capsys):
        out_csv = tmp_path / "scan.csv"
        code = run(
            [
                "threshold", "chamon3", "--sizes", "2,2,2", "3,3,3",
                "--grid", "0.08", "0.12", "0.16",
                "--noise", "depolarizing", "--trials", "100", "--seed", "2",
                "--out", str(out_csv),
            ]
        )
        assert code == 0
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0].startswith("family,n1,n2,n3,n4,p,eta")
        assert len(lines) == 7

    def test_config_file_defaults(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        run(["construct", "chamon3", "2", "2", "2", "--out", str(out)])
        capsys.readouterr()
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"p": 0.0, "noise": "depolarizing", "trials": 10}))
        assert run(["simulate", str(out), "--config", str(cfg), "--seed", "3"]) == 0

    def test_pure_z_threshold_flag(self, tmp_path):
        out_csv = tmp_path / "scan.csv"
        code = run(
            [
                "threshold", "xyz4-concat", "--sizes", "3,3,3,3", "3,5,3,5",
                "--grid", "0.30", "0.36", "0.42",
                "--noise", "pure-z", "--trials", "50", "--seed", "4",
                "--out", str(out_csv),
            ]
        )
        assert code == 0
        assert "inf" in out_csv.read_text()


class TestCycles:
    def test_table2_entry(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        run(["construct", "chamon3", "2", "2", "2", "--out", str(out)])
        capsys.readouterr()
        assert run(["cycles", str(out)]) == 0
        assert "240" in capsys.readouterr().out


class TestDistanceCmd:
    def test_exhaustive(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        run(["construct", "chamon4", "2", "2", "2", "2", "--out", str(out)])
        capsys.readouterr()
        assert run(["distance", str(out), "--w-max", "4"]) == 0
        text = capsys.readouterr().out
        assert "distance = 4" in text
        assert "witness:" in text

    def test_randomized(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        run(["construct", "xyz4-concat", "3", "3", "3", "3", "--out", str(out)])
        capsys.readouterr()
        assert run(["distance", str(out), "--budget", "300", "--seed", "1"]) == 0
        assert "distance <= 9" in capsys.readouterr().out


class TestDimension:
    def test_reports_both_oracles(self, tmp_path, capsys):
        out = tmp_path / "code.txt"
        run(["construct", "chamon4", "2", "3", "2", "3", "--out", str(out)])
        capsys.readouterr()
        assert run(["dimension", str(out)]) == 0
        text = capsys.readouterr().out
        assert "k=8" in text
        assert "k by closed form: 8" in text
