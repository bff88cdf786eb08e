import sys

import numpy as np
import pytest

from l2interp.cli import build_parser, run
from l2interp.lut import min_table_precision, read_table
from l2interp.resample import Image2D, read_pgm, write_pgm
from l2interp.utils.config import PASS_RETURN_CODE, RUNTIME_ERROR_RETURN_CODE, USAGE_ERROR_RETURN_CODE
from l2interp.utils.logger import Logger
from l2interp.utils.version import get_version


def stdout_of(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr().out


class TestParser:

    def test_all_commands_registered(self):
        choices = build_parser()._subparsers._group_actions[0].choices
        assert set(choices) == {
            "kernel-dump", "spectrum", "fae", "fae-table", "tabulate", "resolution", "min-K", "resample", "phantom",
        }

    def test_version(self, capsys):
        code, out = stdout_of(capsys, ["--version"])
        assert code == PASS_RETURN_CODE
        assert get_version() in out

    def test_no_command(self):
        assert run([]) == USAGE_ERROR_RETURN_CODE

    def test_unknown_flag(self):
        assert run(["fae", "--bogus"]) == USAGE_ERROR_RETURN_CODE


class TestFaeCommands:

    def test_single_kernel(self, capsys):
        code, out = stdout_of(capsys, ["fae", "--kernel", "optimal", "--L", "2"])
        assert code == PASS_RETURN_CODE
        assert float(out) == pytest.approx(0.2301, abs=6e-4)
        assert len(out.strip().split(".")[1]) == 4

    def test_unknown_kernel(self):
        assert run(["fae", "--kernel", "lanczos"]) == USAGE_ERROR_RETURN_CODE

    def test_list_with_support_is_rejected(self):
        assert run(["fae", "--kernel", "linear,keys", "--L", "2"]) == USAGE_ERROR_RETURN_CODE

    def test_table_to_file(self, tmp_path):
        out = tmp_path / "fae.csv"
        assert run(["fae", "--kernel", "linear,optimal:1", "--out", str(out)]) == PASS_RETURN_CODE
        lines = out.read_text().splitlines()
        assert lines[0] == "kernel,L,E,E1,E2"
        assert [line.split(",")[0] for line in lines[1:]] == ["linear", "optimal:1"]

    def test_fae_table(self, capsys):
        code, out = stdout_of(capsys, ["fae-table", "--Lmax", "3"])
        assert code == PASS_RETURN_CODE
        lines = out.splitlines()
        assert lines[0] == "L,E_L,E_fit,rel_dev"
        assert [line.split(",")[0] for line in lines[1:]] == ["1", "2", "3"]

    @pytest.mark.parametrize("lmax", ["0", "16"])
    def test_fae_table_range(self, lmax):
        assert run(["fae-table", "--Lmax", lmax]) == USAGE_ERROR_RETURN_CODE


class TestResolutionCommands:

    def test_resolution(self, capsys):
        code, out = stdout_of(capsys, ["resolution", "--L", "1", "--D", "2", "--h", "1", "--gamma", "1", "--K", "1000"])
        assert code == PASS_RETURN_CODE
        assert float(out) == pytest.approx(5.965, abs=1e-3)

    def test_unbounded(self, capsys):
        code, out = stdout_of(capsys, ["resolution", "--L", "1", "--gamma", "0", "--K", "10"])
        assert code == PASS_RETURN_CODE
        assert out.strip() == "unbounded"

    def test_missing_gamma(self):
        assert run(["resolution", "--L", "1", "--K", "1000"]) == USAGE_ERROR_RETURN_CODE

    def test_invalid_support(self):
        assert run(["resolution", "--L", "0", "--gamma", "1", "--K", "1000"]) == USAGE_ERROR_RETURN_CODE

    def test_sweep(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run(["resolution", "--sweep", "--kernels", "linear", "--points", "5", "--out", str(out)]) == PASS_RETURN_CODE
        lines = out.read_text().splitlines()
        assert lines[0] == "kernel,L,log10K,B0,B0_asymptotic"
        assert len(lines) == 6

    def test_min_k(self, capsys):
        code, out = stdout_of(capsys, ["min-K", "--L", "3", "--D", "2", "--h", "1.1", "--gamma", "1.4", "--bits", "12"])
        assert code == PASS_RETURN_CODE
        assert int(out) == min_table_precision(3, 2, 1.1, 1.4, 12)

    def test_min_k_rejects_zero_bits(self):
        assert run(["min-K", "--L", "3", "--gamma", "1.4", "--bits", "0"]) == USAGE_ERROR_RETURN_CODE


class TestKernelCommands:

    def test_kernel_dump(self, capsys):
        code, out = stdout_of(capsys, ["kernel-dump", "--kernel", "linear", "--step", "0.5"])
        assert code == PASS_RETURN_CODE
        lines = out.splitlines()
        assert lines[0] == "x,h"
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert values == [0.0, 0.5, 1.0, 0.5, 0.0]

    def test_aliasing_needs_optimal_kernel(self):
        assert run(["kernel-dump", "--kernel", "linear", "--aliasing"]) == USAGE_ERROR_RETURN_CODE

    def test_aliasing_dump(self, capsys):
        code, out = stdout_of(capsys, ["kernel-dump", "--kernel", "optimal:2", "--step", "0.5", "--aliasing"])
        assert code == PASS_RETURN_CODE
        lines = out.splitlines()
        assert lines[0] == "x,T"
        assert len(lines) == 5

    def test_spectrum(self, capsys):
        code, out = stdout_of(capsys, ["spectrum", "--kernel", "linear", "--tmin", "0", "--tmax", "1", "--points", "3"])
        assert code == PASS_RETURN_CODE
        rows = [tuple(map(float, line.split(","))) for line in out.splitlines()[1:]]
        assert [t for t, _ in rows] == [0.0, 0.5, 1.0]
        assert rows[0][1] == pytest.approx(1.0, abs=1e-9)
        assert rows[1][1] == pytest.approx((2 / np.pi) ** 2, abs=1e-9)
        assert rows[2][1] == pytest.approx(0.0, abs=1e-9)

    def test_spectrum_bad_range(self):
        assert run(["spectrum", "--kernel", "linear", "--tmin", "2", "--tmax", "1"]) == USAGE_ERROR_RETURN_CODE

    def test_tabulate_binary(self, tmp_path):
        out = tmp_path / "h2.l2kt"
        assert run(["tabulate", "--kernel", "optimal:2", "--K", "100", "--out", str(out)]) == PASS_RETURN_CODE
        table = read_table(out)
        assert (table.support, table.precision_k, len(table.entries)) == (2, 100, 201)

    def test_tabulate_csv(self, tmp_path):
        out = tmp_path / "linear.csv"
        assert run(["tabulate", "--kernel", "linear", "--K", "4", "--out", str(out)]) == PASS_RETURN_CODE
        assert len(out.read_text().splitlines()) == 6

    def test_tabulate_over_cap(self, tmp_path):
        argv = ["tabulate", "--kernel", "optimal:3", "--K", "1000", "--max-entries", "100", "--out", str(tmp_path / "t.l2kt")]
        assert run(argv) == RUNTIME_ERROR_RETURN_CODE

    def test_tabulate_cap_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("L2INTERP_LUT_CAP", "100")
        argv = ["tabulate", "--kernel", "linear", "--K", "1000", "--out", str(tmp_path / "t.l2kt")]
        assert run(argv) == RUNTIME_ERROR_RETURN_CODE

    def test_tabulate_bad_precision(self, tmp_path):
        argv = ["tabulate", "--kernel", "linear", "--K", "0", "--out", str(tmp_path / "t.l2kt")]
        assert run(argv) == USAGE_ERROR_RETURN_CODE


class TestResampleCommand:

    @pytest.fixture
    def source(self, tmp_path, rng):
        path = tmp_path / "in.pgm"
        write_pgm(path, Image2D(rng.integers(0, 256, (15, 15)).astype(float), declared_bits=8))
        return path

    def test_unit_zoom_is_identity(self, tmp_path, source):
        out = tmp_path / "out.pgm"
        assert run(["resample", "--in", str(source), "--out", str(out), "--kernel", "keys", "--zoom", "1/1"]) == PASS_RETURN_CODE
        assert out.read_bytes() == source.read_bytes()

    def test_rotation_through_table(self, tmp_path, source):
        out = tmp_path / "out.pgm"
        argv = ["resample", "--in", str(source), "--out", str(out), "--kernel", "optimal:2", "--lut", "1000",
                "--rotate", "7/25", "--round", "--clamp"]
        assert run(argv) == PASS_RETURN_CODE
        assert read_pgm(out).shape == (15, 15)

    def test_stored_table(self, tmp_path, source):
        table = tmp_path / "h1.l2kt"
        assert run(["tabulate", "--kernel", "optimal:1", "--K", "500", "--out", str(table)]) == PASS_RETURN_CODE
        out = tmp_path / "out.f64"
        argv = ["resample", "--in", str(source), "--out", str(out), "--kernel", "optimal:1", "--lut-file", str(table),
                "--zoom", "4/5"]
        assert run(argv) == PASS_RETURN_CODE
        assert out.stat().st_size == 8 + 8 * 15 * 15

    def test_keeps_input_maxval(self, tmp_path, rng):
        source = tmp_path / "ten_bit.pgm"
        samples = rng.integers(0, 1001, (15, 15)).astype(float)
        write_pgm(source, Image2D(samples, declared_bits=10), maxval=1000)
        out = tmp_path / "out.pgm"
        argv = ["resample", "--in", str(source), "--out", str(out), "--kernel", "keys", "--rotate", "7/25",
                "--round", "--clamp"]
        assert run(argv) == PASS_RETURN_CODE
        result = read_pgm(out)
        assert result.maxval == 1000
        assert result.samples.max() <= 1000

    def test_non_pythagorean_rotation(self, tmp_path, source):
        argv = ["resample", "--in", str(source), "--out", str(tmp_path / "o.pgm"), "--kernel", "linear", "--rotate", "2/5"]
        assert run(argv) == USAGE_ERROR_RETURN_CODE

    def test_missing_input(self, tmp_path):
        argv = ["resample", "--in", str(tmp_path / "none.pgm"), "--out", str(tmp_path / "o.pgm"),
                "--kernel", "linear", "--zoom", "2"]
        assert run(argv) == USAGE_ERROR_RETURN_CODE

    def test_malformed_input(self, tmp_path):
        bad = tmp_path / "bad.pgm"
        bad.write_bytes(b"P7\n")
        argv = ["resample", "--in", str(bad), "--out", str(tmp_path / "o.pgm"), "--kernel", "linear", "--zoom", "2"]
        assert run(argv) == USAGE_ERROR_RETURN_CODE


class TestPhantomCommand:

    ARGS = ["phantom", "--size", "17", "--cycles", "1", "--kernels", "linear,optimal:2"]

    def test_outputs(self, tmp_path):
        assert run(self.ARGS + ["--outdir", str(tmp_path)]) == PASS_RETURN_CODE
        for name in ("phantom.pgm", "summary.csv", "linear_final.pgm", "linear_error.f64", "linear_error.ppm",
                     "optimal_2_final.pgm", "optimal_2_error.f64", "optimal_2_error.ppm"):
            assert (tmp_path / name).is_file(), name
        lines = (tmp_path / "summary.csv").read_text().splitlines()
        assert lines[0] == "kernel,L,rms,max,rms_full,max_full"
        assert len(lines) == 3

    def test_outputs_do_not_depend_on_thread_count(self, tmp_path):
        args = ["phantom", "--size", "17", "--cycles", "1", "--kernels", "all"]
        runs = {"single": ["--threads", "1"], "pool": ["--threads", "4"], "pool_again": ["--threads", "4"]}
        for name, threads in runs.items():
            assert run(threads + args + ["--outdir", str(tmp_path / name)]) == PASS_RETURN_CODE

        written = sorted(p.name for p in (tmp_path / "single").iterdir())
        assert len([name for name in written if name.endswith("_error.f64")]) == 6
        for other in ("pool", "pool_again"):
            assert sorted(p.name for p in (tmp_path / other).iterdir()) == written
            for name in written:
                assert (tmp_path / "single" / name).read_bytes() == (tmp_path / other / name).read_bytes(), name

    def test_warns_about_amplifying_kernels(self, tmp_path, capsys):
        Logger.set_stream(sys.stderr)
        assert run(self.ARGS + ["--outdir", str(tmp_path)]) == PASS_RETURN_CODE
        err = capsys.readouterr().err
        assert "optimal:2 scales some frequencies" in err
        assert "linear scales" not in err

    def test_clamp_per_pass(self, tmp_path):
        assert run(self.ARGS + ["--clamp-per-pass", "--round-per-pass", "--outdir", str(tmp_path)]) == PASS_RETURN_CODE
        assert len((tmp_path / "summary.csv").read_text().splitlines()) == 3

    def test_timings_column(self, tmp_path):
        assert run(self.ARGS + ["--timings", "--outdir", str(tmp_path)]) == PASS_RETURN_CODE
        assert (tmp_path / "summary.csv").read_text().splitlines()[0].endswith(",runtime_ms")

    def test_even_size(self, tmp_path):
        assert run(["phantom", "--size", "16", "--outdir", str(tmp_path)]) == USAGE_ERROR_RETURN_CODE
