"""End-to-end checks of the command-line surface (run in-process)."""

import warnings

import numpy as np
import pytest

from trajsmooth import InsufficientCoresWarning, make_synthetic_set, write_trajectories
from trajsmooth import io
from trajsmooth.cli import (
    EXIT_CONFIG,
    EXIT_GROUPING,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VALIDATION,
    main,
)


@pytest.fixture
def dataset(tmp_path):
    path = tmp_path / "input.csv"
    write_trajectories(path, make_synthetic_set(4, 13, seed=0), "csv")
    return path


def test_info_reports_grouping_and_density(dataset, capsys):
    assert main(["info", "--input", str(dataset)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "trajectories (M): 4" in out
    assert "points per trajectory (S): 13" in out
    assert "groups per trajectory: 4" in out
    assert "segments per trajectory: 12" in out
    assert "density of global matrix (<= 1/M): 0.25" in out


def test_info_density_figure_at_m1000(tmp_path, capsys):
    path = tmp_path / "big.csv"
    write_trajectories(path, make_synthetic_set(1000, 13, seed=1), "csv")
    assert main(["info", "--input", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "density of global matrix (<= 1/M): 0.001" in out


def test_eval_sample_count(tmp_path, capsys):
    path = tmp_path / "one.csv"
    write_trajectories(path, make_synthetic_set(1, 4, seed=2), "csv")
    out_path = tmp_path / "samples.csv"
    code = main(
        ["eval", "--input", str(path), "--output", str(out_path), "--ticks", "10"]
    )
    assert code == EXIT_OK
    rows = out_path.read_text().strip().splitlines()
    assert len(rows) == 1 + 31  # header + 3 segments * 10 ticks + 1


def test_eval_outputs_identical_across_worker_counts(dataset, tmp_path):
    out1 = tmp_path / "w1.csv"
    out2 = tmp_path / "w2.csv"
    base = ["eval", "--input", str(dataset), "--ticks", "16"]
    assert main(base + ["--output", str(out1), "--workers", "1"]) == EXIT_OK
    assert main(base + ["--output", str(out2), "--workers", "2"]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()


def test_eval_vtk_export_is_structurally_valid(dataset, tmp_path):
    out_path = tmp_path / "curves.vtk"
    code = main(
        [
            "eval", "--input", str(dataset), "--output", str(out_path),
            "--output-format", "vtk", "--ticks", "5",
        ]
    )
    assert code == EXIT_OK
    info = io.check_vtk_polyline(out_path)
    assert info["points"] == 4 * 61
    assert info["line_lengths"] == [61, 61, 61, 61]


def test_smooth_writes_coefficient_rows(dataset, tmp_path):
    out_path = tmp_path / "coeffs.csv"
    assert main(["smooth", "--input", str(dataset), "--output", str(out_path)]) == EXIT_OK
    rows = out_path.read_text().strip().splitlines()
    assert rows[0] == "trajectory_id,segment_index,axis,a,b,c,d"
    assert len(rows) == 1 + 4 * 12 * 3  # M * segments * axes

    # byte-determinism of the full command
    again = tmp_path / "coeffs2.csv"
    assert main(["smooth", "--input", str(dataset), "--output", str(again)]) == EXIT_OK
    assert again.read_bytes() == out_path.read_bytes()


def test_smooth_binary_input(tmp_path):
    ts = make_synthetic_set(2, 7, seed=3)
    path = tmp_path / "in.bin"
    write_trajectories(path, ts, "binary")
    out_path = tmp_path / "coeffs.csv"
    code = main(
        [
            "smooth", "--input", str(path), "--input-format", "binary",
            "--output", str(out_path),
        ]
    )
    assert code == EXIT_OK
    assert len(out_path.read_text().strip().splitlines()) == 1 + 2 * 6 * 3


def test_alpha_out_of_range_is_config_error(dataset, tmp_path, capsys):
    code = main(
        [
            "smooth", "--input", str(dataset), "--output", str(tmp_path / "x.csv"),
            "--alpha", "1.2",
        ]
    )
    assert code == EXIT_CONFIG
    assert "alpha" in capsys.readouterr().err


def test_gap_in_dataset_is_parse_error(tmp_path, capsys):
    path = tmp_path / "gap.csv"
    path.write_text(
        "trajectory_id,point_index,x,y,z\n"
        "0,0,0.0,0.0,0.0\n0,1,1.0,0.0,0.0\n0,3,3.0,0.0,0.0\n"
    )
    code = main(["info", "--input", str(path)])
    assert code == EXIT_PARSE
    assert "missing point_index" in capsys.readouterr().err


def test_too_short_dataset_is_validation_error(tmp_path, capsys):
    path = tmp_path / "short.csv"
    path.write_text(
        "trajectory_id,point_index,x,y,z\n"
        "0,0,0.0,0.0,0.0\n0,1,1.0,0.0,0.0\n0,2,2.0,0.0,0.0\n"
    )
    assert main(["info", "--input", str(path)]) == EXIT_VALIDATION
    assert "points" in capsys.readouterr().err


def test_incompatible_grouping_exit_code(tmp_path, capsys):
    path = tmp_path / "s6.csv"
    write_trajectories(path, make_synthetic_set(1, 6, seed=4), "csv")
    code = main(["info", "--input", str(path)])
    assert code == EXIT_GROUPING
    capsys.readouterr()


def test_bench_sparse_writes_report(tmp_path, capsys):
    out_path = tmp_path / "sparse.csv"
    code = main(
        [
            "bench-sparse", "--output", str(out_path), "--m-list", "4,8",
            "--repeats", "1",
        ]
    )
    assert code == EXIT_OK
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "M,method,wall_time_s,flops"
    assert len(lines) == 5  # two sizes x two methods
    capsys.readouterr()


def test_bench_scaling_strong_writes_report(tmp_path, capsys):
    out_path = tmp_path / "strong.csv"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InsufficientCoresWarning)
        code = main(
            [
                "bench-scaling", "--output", str(out_path), "--bench-mode", "strong",
                "--worker-list", "1,2", "--bench-trajectories", "8",
                "--bench-points", "7", "--ticks", "8", "--repeats", "1",
            ]
        )
    assert code == EXIT_OK
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "mode,P,M,segments,V,wall_time_s,speedup,efficiency"
    assert len(lines) == 3
    capsys.readouterr()


def test_bench_scaling_weak_writes_report(tmp_path, capsys):
    out_path = tmp_path / "weak.csv"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InsufficientCoresWarning)
        code = main(
            [
                "bench-scaling", "--output", str(out_path), "--bench-mode", "weak",
                "--worker-list", "1,2", "--segments-per-worker", "30",
                "--ticks", "8", "--repeats", "1",
            ]
        )
    assert code == EXIT_OK
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 3
    assert lines[1].startswith("weak,1,10,30,8,")
    capsys.readouterr()


def test_missing_input_file_is_io_error(tmp_path, capsys):
    code = main(["info", "--input", str(tmp_path / "absent.csv")])
    assert code == 5
    capsys.readouterr()


def test_console_entry_point_help():
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0
