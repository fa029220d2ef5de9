import json

import pytest

from hassa import generate_king, read_gset, save_gset, WeightedGraph
from hassa.cli import main, memory_report, read_partition
from hassa.schedule import DEFAULT_CONFIG, ScheduleConfig

QUICK = ["--trials", "3", "--mshot", "2", "--tau", "10"]


@pytest.fixture
def triangle(tmp_path):
    path = tmp_path / "tri.txt"
    save_gset(WeightedGraph(3, ((0, 1, 1), (1, 2, 1), (0, 2, 1))), path)
    return path


class TestSolve:
    def test_writes_outputs(self, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["solve", "--instance", "torus:4x5:3", *QUICK, "--out", str(out), "--emit-series"]) == 0
        assert "best cut" in capsys.readouterr().out
        summary = json.loads((out / "summary.json").read_text())
        assert len(summary["cuts"]) == 3
        assert summary["best_cut"] == max(summary["cuts"])
        assert summary["stored_bits"] == [20 * 2 * 10] * 3
        assert "wall_time_s" in summary
        rows = [l for l in (out / "summary.csv").read_text().splitlines() if not l.startswith("#")]
        assert rows[0].startswith("trial,seed,best_cut") and len(rows) == 4
        series = [l for l in (out / "series.csv").read_text().splitlines() if not l.startswith("#")]
        assert series[0] == "cycle,i0,mean_energy" and len(series) == 1 + 2 * 60
        state = [l for l in (out / "best_state.txt").read_text().splitlines() if not l.startswith("#")]
        assert len(state) == 20

    def test_summary_is_byte_identical_across_runs(self, tmp_path):
        for name in ("a", "b"):
            main(["solve", "--instance", "king:3x4:1", *QUICK, "--seed", "0x99", "--out", str(tmp_path / name)])
        assert (tmp_path / "a/summary.csv").read_bytes() == (tmp_path / "b/summary.csv").read_bytes()

    def test_minimal_two_vertex_run(self, tmp_path):
        path = tmp_path / "two.txt"
        path.write_text("2 1\n1 2 1\n")
        out = tmp_path / "o"
        assert main(["solve", "--instance", str(path), "--trials", "1", "--mshot", "1", "--out", str(out)]) == 0
        rows = [l for l in (out / "summary.csv").read_text().splitlines() if not l.startswith("#")]
        assert len(rows) == 2 and rows[1].split(",")[2] == "1"

    def test_seed_changes_results(self, tmp_path):
        for name, seed in (("a", "1"), ("b", "2")):
            main(["solve", "--instance", "king:4x4:1", *QUICK, "--seed", seed, "--out", str(tmp_path / name)])
        assert (tmp_path / "a/summary.csv").read_text() != (tmp_path / "b/summary.csv").read_text()

    def test_sa_and_ssa(self, tmp_path):
        assert main(["solve", "--instance", "torus:3x3:0", "--algo", "sa", "--trials", "2",
                     "--sa-cycles", "500", "--out", str(tmp_path / "sa"), "--emit-series"]) == 0
        meta = json.loads((tmp_path / "sa/summary.json").read_text())
        assert meta["sa_schedule"]["total_cycles"] == 500
        assert "cycle,temperature,mean_energy" in (tmp_path / "sa/series.csv").read_text()
        assert main(["solve", "--instance", "torus:3x3:0", "--algo", "ssa", *QUICK,
                     "--out", str(tmp_path / "ssa")]) == 0
        meta = json.loads((tmp_path / "ssa/summary.json").read_text())
        assert meta["policy"] == "full" and meta["config"]["mode"] == "ratio"
        assert meta["capacity_bits"] is None

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"instance": "torus:3x4:2", "trials": 5, "mshot": 1, "tau": 4}))
        out = tmp_path / "o"
        assert main(["solve", "--config", str(cfg), "--trials", "2", "--out", str(out)]) == 0
        meta = json.loads((out / "summary.json").read_text())
        assert meta["trials"] == 2 and meta["config"]["tau"] == 4

    def test_dump_traces(self, tmp_path):
        out = tmp_path / "o"
        main(["solve", "--instance", "torus:3x3:0", *QUICK, "--dump-traces", "--out", str(out)])
        assert sorted(p.name for p in out.glob("trace_*.bin")) == ["trace_0000.bin", "trace_0001.bin",
                                                                    "trace_0002.bin"]

    @pytest.mark.parametrize(
        "argv",
        [
            ["--instance", "/nonexistent/G99"],
            ["--instance", "torus:3x3:0", "--i0max", "24"],
            ["--instance", "torus:3x3:0", "--mode", "ratio", "--beta", "0.3"],
            [],
        ],
    )
    def test_bad_input_exits_nonzero(self, argv, capsys):
        assert main(["solve", *argv]) == 2
        assert "solve:" in capsys.readouterr().err

    def test_overflow_exits_nonzero(self, capsys):
        code = main(["solve", "--instance", "torus:3x3:0", "--algo", "ssa", "--trials", "1",
                     "--capacity-bits", "900"])
        assert code == 3
        assert "memory full" in capsys.readouterr().err


class TestVerify:
    def test_triangle(self, triangle, tmp_path, capsys):
        part = tmp_path / "p.txt"
        part.write_text("1\n1\n0\n")
        assert main(["verify", "--instance", str(triangle), "--partition", str(part)]) == 0
        assert capsys.readouterr().out.strip() == "cut 2"

    def test_all_zero(self, triangle, tmp_path, capsys):
        part = tmp_path / "p.txt"
        part.write_text("0 0 0\n")
        main(["verify", "--instance", str(triangle), "--partition", str(part)])
        assert "cut 0" in capsys.readouterr().out

    def test_claimed(self, triangle, tmp_path):
        part = tmp_path / "p.txt"
        part.write_text("# comment\n+1\n-1\n-1\n")
        assert main(["verify", "--instance", str(triangle), "--partition", str(part), "--claimed", "2"]) == 0
        assert main(["verify", "--instance", str(triangle), "--partition", str(part), "--claimed", "3"]) == 1

    def test_solver_output_verifies(self, tmp_path, capsys):
        out = tmp_path / "o"
        main(["solve", "--instance", "king:4x4:5", *QUICK, "--out", str(out)])
        best = json.loads((out / "summary.json").read_text())["best_cut"]
        inst = tmp_path / "k.txt"
        save_gset(generate_king(4, 4, 5), inst)
        assert main(["verify", "--instance", str(inst), "--partition", str(out / "best_state.txt"),
                     "--claimed", str(best)]) == 0

    def test_bad_partition(self, triangle, tmp_path):
        part = tmp_path / "p.txt"
        part.write_text("1\n2\n1\n")
        assert main(["verify", "--instance", str(triangle), "--partition", str(part)]) == 2
        part.write_text("1\n1\n")
        assert main(["verify", "--instance", str(triangle), "--partition", str(part)]) == 2

    def test_read_partition(self, tmp_path):
        p = tmp_path / "p.txt"
        p.write_text("1 0\n-1  # trailing\n\n+1\n")
        assert read_partition(p) == [1, -1, -1, 1]


class TestGenKing:
    def test_header(self, tmp_path):
        assert main(["gen-king", "20", "40", "--seed", "7", "--out", str(tmp_path / "k")]) == 0
        assert (tmp_path / "k").read_text().splitlines()[0] == "800 3200"
        main(["gen-king", "3", "3", "--out", str(tmp_path / "s")])
        assert (tmp_path / "s").read_text().splitlines()[0] == "9 36"

    def test_regeneration_is_byte_identical(self, tmp_path):
        for name in ("a", "b"):
            main(["gen-king", "10", "12", "--seed", "3", "--out", str(tmp_path / name)])
        assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()
        assert read_gset(tmp_path / "a") == generate_king(10, 12, 3)

    def test_too_small(self, tmp_path):
        assert main(["gen-king", "2", "2", "--out", str(tmp_path / "k")]) == 2


class TestMemoryReport:
    def test_default(self, capsys):
        assert main(["memory-report"]) == 0
        text = capsys.readouterr().out
        assert "480000" in text and "80000" in text and "ratio 6.0" in text

    def test_sixteen(self):
        text = memory_report(ScheduleConfig(i0_max=16), 800)
        assert "400000" in text

    def test_single_step(self):
        text = memory_report(ScheduleConfig(i0_min=1, i0_max=1, tau=1), 800)
        lines = text.splitlines()
        assert lines[2].split()[1] == lines[3].split()[1] == "800"
        assert lines[-1] == "ratio 1.0"

    def test_flags(self, capsys):
        main(["memory-report", "--n-spins", "100", "--i0max", "16"])
        assert "ratio 5.0" in capsys.readouterr().out

    def test_default_config_unchanged(self):
        assert memory_report(DEFAULT_CONFIG, 800).splitlines()[2].split()[1] == "480000"
