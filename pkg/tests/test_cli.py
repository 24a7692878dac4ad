"""End-to-end command-line behavior: tables, reports, exit codes, manifests."""

import csv
import json
import math

import numpy as np
import pytest

from boxent import benford_frequency, omega, rank_distribution
from boxent.cli import main


def run(tmp_path, *argv):
    """Invoke the CLI against a file and return (exit_code, text)."""
    out = tmp_path / "out.txt"
    code = main([*argv, "--output", str(out)])
    return code, out.read_text(encoding="utf-8")


def data_rows(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    return list(csv.reader(lines))


def summary_of(text):
    found = {}
    for line in text.splitlines():
        if line.startswith("# ") and "=" in line and not line.startswith("# manifest="):
            key, _, value = line[2:].partition("=")
            found[key] = value
    return found


def manifest_of(text):
    for line in text.splitlines():
        if line.startswith("# manifest="):
            return json.loads(line[len("# manifest=") :])
    raise AssertionError("no manifest line")


class TestDist:
    def test_rank_table_matches_library(self, tmp_path):
        code, text = run(tmp_path, "dist", "rank", "--max-rank", "10")
        assert code == 0
        header, *rows = data_rows(text)
        assert header == ["rank", "frequency"]
        dist = rank_distribution(10)
        assert [int(r[0]) for r in rows] == list(range(1, 11))
        # repr round-trips: parsed CSV floats equal the library bit for bit
        assert [float(r[1]) for r in rows] == list(dist.frequencies)

    def test_rank_requires_max_rank(self, tmp_path, capsys):
        assert main(["dist", "rank"]) == 2
        assert "max-rank" in capsys.readouterr().err

    def test_benford_table(self, tmp_path):
        code, text = run(tmp_path, "dist", "benford", "--format", "json")
        assert code == 0
        objects = [json.loads(l) for l in text.splitlines()]
        rows = [o for o in objects if "digit" in o]
        assert len(rows) == 9
        assert rows[0]["frequency"] == benford_frequency(1)
        assert objects[-1]["manifest"]["command"] == "dist"
        assert math.fsum(o["frequency"] for o in rows) == pytest.approx(1.0, abs=1e-12)

    def test_bell_curve_peaks_at_reciprocal_beta(self, tmp_path):
        code, text = run(
            tmp_path, "dist", "bell",
            "--beta", "0.02", "--phi-max", "250", "--steps", "501",
        )
        assert code == 0
        header, *rows = data_rows(text)
        assert header == ["phi", "particle_fraction", "weight"]
        assert len(rows) == 501
        phis = [float(r[0]) for r in rows]
        weights = [float(r[2]) for r in rows]
        assert phis[int(np.argmax(weights))] == pytest.approx(50.0, abs=0.5)

    def test_loglog_rows_regress_to_minus_one(self, tmp_path):
        code, text = run(
            tmp_path, "dist", "loglog",
            "--beta", "1.0", "--n-min", "1e3", "--n-max", "1e6", "--points", "50",
        )
        assert code == 0
        rows = data_rows(text)[1:]
        x = np.array([float(r[0]) for r in rows])
        y = np.array([float(r[1]) for r in rows])
        slope = np.sum((x - x.mean()) * (y - y.mean())) / np.sum((x - x.mean()) ** 2)
        assert slope == pytest.approx(-1.0, abs=0.005)

    def test_invalid_parameters_exit_2(self, tmp_path, capsys):
        assert main(["dist", "rank", "--max-rank", "0"]) == 2
        assert main(["dist", "bell", "--beta", "-1"]) == 2
        assert main(["dist", "loglog", "--n-min", "0"]) == 2
        err = capsys.readouterr().err
        assert err.count("\n") >= 3


class TestEnumerate:
    def test_census_output(self, tmp_path):
        code, text = run(tmp_path, "enumerate", "3", "3")
        assert code == 0
        rows = data_rows(text)[1:]
        assert [(int(r[0]), int(r[1])) for r in rows] == [(1, 9), (2, 6), (3, 3)]
        footer = summary_of(text)
        assert footer["microstates"] == "10"
        assert float(footer["entropy_exact"]) == pytest.approx(math.log(10), rel=1e-12)
        assert float(footer["entropy_stirling"]) == pytest.approx(
            6 * math.log(2), rel=1e-12
        )

    def test_states_zero_particles(self, tmp_path):
        code, text = run(tmp_path, "enumerate", "0", "4", "--emit", "states")
        assert code == 0
        rows = data_rows(text)
        assert rows[0] == ["box_1", "box_2", "box_3", "box_4"]
        assert rows[1:] == [["0", "0", "0", "0"]]

    def test_states_count(self, tmp_path):
        code, text = run(tmp_path, "enumerate", "5", "4", "--emit", "states")
        assert code == 0
        assert len(data_rows(text)) - 1 == 56

    def test_guard_exits_3_with_exact_count(self, tmp_path, capsys):
        assert main(["enumerate", "30", "30"]) == 3
        assert str(omega(30, 30)) in capsys.readouterr().err

    def test_census_of_zero_particles_is_an_input_error(self, tmp_path, capsys):
        assert main(["enumerate", "0", "4", "--emit", "census"]) == 2
        capsys.readouterr()


class TestSample:
    def test_single_state(self, tmp_path):
        code, text = run(tmp_path, "sample", "1", "1", "--draws", "10", "--seed", "0")
        assert code == 0
        rows = data_rows(text)[1:]
        assert rows == [["1", "10", "1.0"]]

    def test_requires_seed(self, tmp_path, capsys):
        assert main(["sample", "3", "3", "--draws", "100"]) == 2
        assert "--seed" in capsys.readouterr().err

    def test_compare_exact_small_deviation(self, tmp_path):
        code, text = run(
            tmp_path, "sample", "3", "3",
            "--draws", "1000000", "--seed", "42", "--compare", "exact",
        )
        assert code == 0
        footer = summary_of(text)
        assert float(footer["max_abs_deviation"]) < 0.002

    def test_compare_theory_reports_systematic_gap(self, tmp_path):
        code, text = run(
            tmp_path, "sample", "3", "3",
            "--draws", "1000000", "--seed", "42", "--compare", "theory",
        )
        assert code == 0
        header, *rows = data_rows(text)
        assert header[-2:] == ["reference_frequency", "deviation"]
        deviation_n2 = float(rows[1][4])
        assert deviation_n2 == pytest.approx(0.0409, abs=0.005)

    def test_thread_count_does_not_change_bytes(self, tmp_path):
        args = ["sample", "6", "4", "--draws", "30000", "--seed", "9",
                "--chunk-size", "4096"]
        _, base = run(tmp_path, *args, "--threads", "1")
        _, threaded = run(tmp_path, *args, "--threads", "4")
        assert base == threaded

    def test_bad_config_exits_2(self, tmp_path, capsys):
        assert main(["sample", "3", "3", "--draws", "0", "--seed", "1"]) == 2
        assert main(["sample", "0", "3", "--draws", "10", "--seed", "1"]) == 2
        capsys.readouterr()


class TestGen:
    def test_benford_generator_is_deterministic(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        assert main(["gen", "benford", "--count", "500", "--seed", "3",
                     "--output", str(a)]) == 0
        assert main(["gen", "benford", "--count", "500", "--seed", "3",
                     "--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        values = [l for l in a.read_text().splitlines() if not l.startswith("#")]
        assert len(values) == 500
        assert all(1.0 <= float(v) < 10.0 for v in values)

    def test_corpus_generator(self, tmp_path):
        out = tmp_path / "corpus.txt"
        assert main(["gen", "corpus", "--max-rank", "5", "--draws", "200",
                     "--seed", "1", "--output", str(out)]) == 0
        tokens = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert len(tokens) == 200
        assert set(tokens) <= {f"w{k}" for k in range(1, 6)}

    def test_requires_seed_and_sizes(self, tmp_path, capsys):
        assert main(["gen", "benford", "--count", "10"]) == 2
        assert main(["gen", "benford", "--seed", "1"]) == 2
        assert main(["gen", "corpus", "--seed", "1", "--draws", "5"]) == 2
        capsys.readouterr()


class TestBenfordCommand:
    def test_log_uniform_sample_conforms(self, tmp_path):
        data = tmp_path / "sample.txt"
        assert main(["gen", "benford", "--count", "100000", "--seed", "11",
                     "--output", str(data)]) == 0
        code, text = run(tmp_path, "benford", str(data))
        assert code == 0
        footer = summary_of(text)
        assert footer["conforms"] == "true"
        assert float(footer["statistic"]) < 20.09
        assert footer["counted"] == "100000"

    def test_uniform_digits_rejected_with_closed_form_statistic(self, tmp_path):
        data = tmp_path / "uniform.txt"
        data.write_text("\n".join(str(d) for d in range(1, 10) for _ in range(1000)))
        code, text = run(tmp_path, "benford", str(data))
        assert code == 1
        footer = summary_of(text)
        assert footer["conforms"] == "false"
        want = math.fsum(
            (1000 - e) ** 2 / e
            for e in (9000 * math.log10(1 + 1 / d) for d in range(1, 10))
        )
        assert float(footer["statistic"]) == pytest.approx(want, rel=1e-9)

    def test_zeros_only_exits_2(self, tmp_path, capsys):
        data = tmp_path / "zeros.txt"
        data.write_text("\n".join(["0"] * 60))
        assert main(["benford", str(data)]) == 2
        capsys.readouterr()

    def test_mostly_unparseable_exits_2(self, tmp_path, capsys):
        data = tmp_path / "garbage.txt"
        data.write_text("\n".join(["not-a-number"] * 80 + ["5"] * 60))
        assert main(["benford", str(data)]) == 2
        assert "failed numeric parse" in capsys.readouterr().err

    def test_some_unparseable_reported_not_fatal(self, tmp_path):
        data = tmp_path / "mixed.txt"
        data.write_text("\n".join(["oops"] * 10 + [str(100 + k) for k in range(90)]))
        code, text = run(tmp_path, "benford", str(data))
        assert code in (0, 1)
        footer = summary_of(text)
        assert footer["unparseable"] == "10"
        assert footer["counted"] == "90"

    def test_csv_column_by_name_and_index(self, tmp_path):
        data = tmp_path / "table.csv"
        lines = ["label,amount"] + [f"row{k},{k + 100}" for k in range(60)]
        data.write_text("\n".join(lines))
        code, text = run(tmp_path, "benford", str(data), "--column", "amount")
        assert code in (0, 1)
        assert summary_of(text)["counted"] == "60"
        code2, text2 = run(tmp_path, "benford", str(data), "--column", "1")
        # index mode has no header convention: the header cell is unparseable
        assert summary_of(text2)["counted"] == "60"
        assert summary_of(text2)["unparseable"] == "1"

    def test_thousands_separators_are_rejected_values(self, tmp_path):
        data = tmp_path / "sep.txt"
        data.write_text("\n".join(["1,234"] * 10 + [str(200 + k) for k in range(80)]))
        code, text = run(tmp_path, "benford", str(data))
        assert summary_of(text)["unparseable"] == "10"

    def test_missing_file_exits_2(self, tmp_path, capsys):
        assert main(["benford", str(tmp_path / "absent.txt")]) == 2
        capsys.readouterr()

    def test_mad_statistic_mode(self, tmp_path):
        data = tmp_path / "uniform.txt"
        data.write_text("\n".join(str(d) for d in range(1, 10) for _ in range(100)))
        code, text = run(tmp_path, "benford", str(data), "--statistic", "mad")
        assert code == 1
        footer = summary_of(text)
        assert footer["statistic_kind"] == "mad"
        assert float(footer["threshold"]) == 0.012


class TestZipfCommand:
    def test_tiny_corpus(self, tmp_path):
        data = tmp_path / "tiny.txt"
        data.write_text("a a b")
        code, text = run(tmp_path, "zipf", str(data))
        assert code == 0
        rows = data_rows(text)[1:]
        assert rows[0][:3] == ["1", "a", "2"]
        assert rows[1][:3] == ["2", "b", "1"]
        assert float(rows[0][3]) == pytest.approx(2 / 3, rel=1e-12)

    def test_empty_input_exits_2(self, tmp_path, capsys):
        data = tmp_path / "empty.txt"
        data.write_text("\n# only a comment\n")
        assert main(["zipf", str(data)]) == 2
        capsys.readouterr()

    def test_lowercase_folding(self, tmp_path):
        data = tmp_path / "case.txt"
        data.write_text("Dog dog DOG cat")
        _, text = run(tmp_path, "zipf", str(data), "--lowercase")
        rows = data_rows(text)[1:]
        assert rows[0][1:3] == ["dog", "3"]

    def test_synthetic_corpus_matches_theory(self, tmp_path):
        corpus = tmp_path / "corpus.txt"
        assert main(["gen", "corpus", "--max-rank", "100", "--draws", "1000000",
                     "--seed", "11", "--output", str(corpus)]) == 0
        code, text = run(tmp_path, "zipf", str(corpus))
        assert code == 0
        footer = summary_of(text)
        theory = rank_distribution(100)
        assert float(footer["ratio_f1_f2"]) == pytest.approx(
            theory.frequency(1) / theory.frequency(2), abs=0.05
        )
        assert float(footer["slope"]) == pytest.approx(-0.959816247266873, abs=0.02)
        rows = data_rows(text)[1:]
        assert float(rows[0][3]) == pytest.approx(theory.frequency(1), abs=0.01)

    def test_reciprocal_law_corpus_ratio_near_two(self, tmp_path):
        rng = np.random.default_rng(4)
        probs = 1.0 / np.arange(1, 51)
        probs /= probs.sum()
        ranks = rng.choice(50, size=200000, p=probs) + 1
        corpus = tmp_path / "harmonic.txt"
        corpus.write_text("\n".join(f"t{k:02d}" for k in ranks))
        _, text = run(tmp_path, "zipf", str(corpus))
        footer = summary_of(text)
        assert float(footer["ratio_f1_f2"]) == pytest.approx(2.0, abs=0.05)


class TestFitCommand:
    def test_round_trip_from_rank_table(self, tmp_path):
        table = tmp_path / "rank.csv"
        assert main(["dist", "rank", "--max-rank", "1000000",
                     "--output", str(table)]) == 0
        code, text = run(tmp_path, "fit", str(table), "--min-x", "1000")
        assert code == 0
        row = data_rows(text)[1]
        slope, _, r2 = float(row[0]), float(row[1]), float(row[2])
        assert slope == pytest.approx(-1.0, abs=0.02)
        assert r2 > 0.9999

    def test_exact_power_law_table(self, tmp_path):
        table = tmp_path / "power.csv"
        rows = ["x,y"] + [f"{r},{(2.5 * r ** -2.0)!r}" for r in range(1, 200)]
        table.write_text("\n".join(rows))
        code, text = run(tmp_path, "fit", str(table))
        assert code == 0
        assert float(data_rows(text)[1][0]) == pytest.approx(-2.0, abs=1e-9)

    def test_ten_rank_table_is_flagged_non_asymptotic(self, tmp_path):
        table = tmp_path / "rank10.csv"
        assert main(["dist", "rank", "--max-rank", "10", "--output", str(table)]) == 0
        code, text = run(tmp_path, "fit", str(table))
        assert code == 0
        assert float(data_rows(text)[1][0]) == pytest.approx(-0.8696, abs=1e-3)
        assert "regime_note" in summary_of(text)

    def test_whitespace_table_and_column_names(self, tmp_path):
        table = tmp_path / "table.txt"
        table.write_text("idx val\n1 8\n2 2\n4 0.5\n8 0.125\n")
        code, text = run(tmp_path, "fit", str(table),
                         "--x-column", "idx", "--y-column", "val")
        assert code == 0
        assert float(data_rows(text)[1][0]) == pytest.approx(-2.0, abs=1e-9)

    def test_too_few_points_exits_2(self, tmp_path, capsys):
        table = tmp_path / "short.csv"
        table.write_text("x,y\n1,1\n2,0.5\n")
        assert main(["fit", str(table)]) == 2
        capsys.readouterr()


class TestManifestDeterminism:
    def test_identical_runs_are_byte_identical(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        argv = ["sample", "5", "3", "--draws", "20000", "--seed", "31",
                "--compare", "exact"]
        assert main([*argv, "--output", str(a)]) == 0
        assert main([*argv, "--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_manifest_records_parameters(self, tmp_path):
        _, text = run(tmp_path, "dist", "rank", "--max-rank", "12")
        manifest = manifest_of(text)
        assert manifest["command"] == "dist"
        assert manifest["parameters"]["max_rank"] == 12
        assert manifest["parameters"]["kind"] == "rank"
        assert manifest["version"]

    def test_benford_manifest_digests_input(self, tmp_path):
        data = tmp_path / "x.txt"
        data.write_text("\n".join(str(100 + k) for k in range(60)))
        _, text = run(tmp_path, "benford", str(data))
        digest = manifest_of(text)["input_digest"]
        assert isinstance(digest, str) and len(digest) == 64

    def test_json_mode_trailing_manifest(self, tmp_path):
        code, text = run(tmp_path, "enumerate", "2", "2", "--format", "json")
        assert code == 0
        objects = [json.loads(l) for l in text.splitlines()]
        assert "manifest" in objects[-1]
        assert objects[-2]["summary"]["microstates"] == 3
