"""Dataset ingestion, sample export, and benchmark-report serialization.

Two dataset encodings round-trip bit-exactly:

* CSV — header ``trajectory_id,point_index,x,y,z``; rows grouped by
  trajectory, point indices dense and ascending from 0. Floats are written
  with ``repr`` so parsing returns the identical 64-bit value.
* Binary — magic ``TRJ1``, little-endian uint32 trajectory count M and point
  count S, then M*S coordinate triples as little-endian float64,
  trajectory-major. Trajectory ids are not persisted; the reader assigns
  0..M-1 in file order.

Sample exports are CSV (``trajectory_id,sample_index,x,y,z``) or VTK legacy
ASCII polydata with one polyline per trajectory. Failures from the OS
surface as the built-in OSError.
"""

from __future__ import annotations

import csv
import enum
import struct
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .model import Point3, TrajectorySet, validate_set

MAGIC = b"TRJ1"

DATASET_CSV_HEADER = ["trajectory_id", "point_index", "x", "y", "z"]
SAMPLES_CSV_HEADER = ["trajectory_id", "sample_index", "x", "y", "z"]
SCALING_REPORT_HEADER = ["mode", "P", "M", "segments", "V", "wall_time_s", "speedup", "efficiency"]
SPARSE_REPORT_HEADER = ["M", "method", "wall_time_s", "flops"]


class ParseError(ValueError):
    """Malformed file content (bad header, magic, row shape, or token)."""


class GapError(ValueError):
    """Dataset point indices are not dense from 0."""


class DatasetFormat(enum.Enum):
    CSV = "csv"
    BINARY = "binary"


class SampleFormat(enum.Enum):
    CSV = "csv"
    VTK = "vtk"


def _coerce(fmt, kind):
    if isinstance(fmt, kind):
        return fmt
    try:
        return kind(str(fmt).lower())
    except ValueError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {[f.value for f in kind]}")


# ---------------------------------------------------------------------------
# trajectory datasets


def read_trajectories(path, fmt: Union[DatasetFormat, str] = DatasetFormat.CSV) -> TrajectorySet:
    fmt = _coerce(fmt, DatasetFormat)
    if fmt is DatasetFormat.CSV:
        raw = _read_dataset_csv(path)
    else:
        raw = _read_dataset_binary(path)
    return validate_set(raw)


def write_trajectories(
    path, trajectory_set: TrajectorySet, fmt: Union[DatasetFormat, str] = DatasetFormat.CSV
) -> None:
    fmt = _coerce(fmt, DatasetFormat)
    if fmt is DatasetFormat.CSV:
        _write_dataset_csv(path, trajectory_set)
    else:
        _write_dataset_binary(path, trajectory_set)


def _write_dataset_csv(path, trajectory_set: TrajectorySet) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(DATASET_CSV_HEADER)
        for tr in trajectory_set.trajectories:
            for i, p in enumerate(tr.points):
                writer.writerow([tr.id, i, repr(p.x), repr(p.y), repr(p.z)])


def _read_dataset_csv(path) -> list[tuple[int, list[Point3]]]:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != DATASET_CSV_HEADER:
            raise ParseError(f"{path}: expected header {','.join(DATASET_CSV_HEADER)}")
        raw: list[tuple[int, list[Point3]]] = []
        seen: set[int] = set()
        current_id: Optional[int] = None
        points: list[Point3] = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise ParseError(f"{path}:{line_no}: expected 5 fields, got {len(row)}")
            try:
                tid = int(row[0])
                idx = int(row[1])
                point = Point3(float(row[2]), float(row[3]), float(row[4]))
            except ValueError as exc:
                raise ParseError(f"{path}:{line_no}: {exc}") from exc
            if tid != current_id:
                if tid in seen:
                    raise ParseError(f"{path}:{line_no}: trajectory {tid} rows are not contiguous")
                if current_id is not None:
                    raw.append((current_id, points))
                seen.add(tid)
                current_id = tid
                points = []
            if idx != len(points):
                if idx > len(points):
                    raise GapError(
                        f"{path}:{line_no}: trajectory {tid} missing point_index {len(points)}"
                    )
                raise ParseError(
                    f"{path}:{line_no}: trajectory {tid} point_index {idx} out of order"
                )
            points.append(point)
        if current_id is not None:
            raw.append((current_id, points))
    return raw


def _write_dataset_binary(path, trajectory_set: TrajectorySet) -> None:
    m = trajectory_set.trajectory_count
    s = trajectory_set.point_count
    data = np.empty((m, s, 3), dtype="<f8")
    for i, tr in enumerate(trajectory_set.trajectories):
        data[i] = [(p.x, p.y, p.z) for p in tr.points]
    with open(path, "wb") as handle:
        handle.write(MAGIC)
        handle.write(struct.pack("<II", m, s))
        handle.write(data.tobytes())


def _read_dataset_binary(path) -> list[tuple[int, list[Point3]]]:
    blob = Path(path).read_bytes()
    if blob[:4] != MAGIC:
        raise ParseError(f"{path}: bad magic {blob[:4]!r}, expected {MAGIC!r}")
    if len(blob) < 12:
        raise ParseError(f"{path}: truncated header")
    m, s = struct.unpack("<II", blob[4:12])
    expected = 12 + m * s * 3 * 8
    if len(blob) != expected:
        raise ParseError(f"{path}: expected {expected} bytes for M={m}, S={s}, got {len(blob)}")
    data = np.frombuffer(blob, dtype="<f8", offset=12).reshape(m, s, 3)
    return [(i, [Point3(*row) for row in data[i]]) for i in range(m)]


# ---------------------------------------------------------------------------
# sample exports


def write_samples(
    path,
    polylines: Sequence[np.ndarray],
    fmt: Union[SampleFormat, str] = SampleFormat.CSV,
    trajectory_ids: Optional[Sequence[int]] = None,
) -> None:
    """Write stitched (n_i, 3) polylines; one polyline per trajectory."""
    if len(polylines) == 0:
        raise ValueError("no polylines to write")
    if trajectory_ids is None:
        trajectory_ids = list(range(len(polylines)))
    fmt = _coerce(fmt, SampleFormat)
    if fmt is SampleFormat.CSV:
        _write_samples_csv(path, polylines, trajectory_ids)
    else:
        _write_samples_vtk(path, polylines)


def _write_samples_csv(path, polylines, trajectory_ids) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SAMPLES_CSV_HEADER)
        for tid, line in zip(trajectory_ids, polylines):
            for i, (x, y, z) in enumerate(np.asarray(line)):
                writer.writerow([tid, i, repr(float(x)), repr(float(y)), repr(float(z))])


def read_samples_csv(path) -> list[tuple[int, np.ndarray]]:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != SAMPLES_CSV_HEADER:
            raise ParseError(f"{path}: expected header {','.join(SAMPLES_CSV_HEADER)}")
        by_id: dict[int, list[tuple[float, float, float]]] = {}
        order: list[int] = []
        for row in reader:
            if not row:
                continue
            tid = int(row[0])
            if tid not in by_id:
                by_id[tid] = []
                order.append(tid)
            by_id[tid].append((float(row[2]), float(row[3]), float(row[4])))
    return [(tid, np.array(by_id[tid], dtype=np.float64)) for tid in order]


def _write_samples_vtk(path, polylines) -> None:
    total = sum(len(line) for line in polylines)
    with open(path, "w") as handle:
        handle.write("# vtk DataFile Version 3.0\n")
        handle.write("trajectory samples\n")
        handle.write("ASCII\n")
        handle.write("DATASET POLYDATA\n")
        handle.write(f"POINTS {total} double\n")
        for line in polylines:
            for x, y, z in np.asarray(line):
                handle.write(f"{float(x)!r} {float(y)!r} {float(z)!r}\n")
        size = sum(len(line) + 1 for line in polylines)
        handle.write(f"LINES {len(polylines)} {size}\n")
        offset = 0
        for line in polylines:
            indices = range(offset, offset + len(line))
            handle.write(" ".join([str(len(line))] + [str(i) for i in indices]) + "\n")
            offset += len(line)


def check_vtk_polyline(path) -> dict[str, object]:
    """Structural check of a VTK legacy polydata file.

    Verifies the declared POINTS count matches the emitted coordinate
    triples, the LINES size field is consistent, and every connectivity
    index is in range. Returns the counts for further assertions.
    """
    tokens_by_line = [line.split() for line in Path(path).read_text().splitlines()]
    if not tokens_by_line or tokens_by_line[0][:2] != ["#", "vtk"]:
        raise ParseError(f"{path}: missing VTK header comment")
    flat: list[str] = []
    for tokens in tokens_by_line[1:]:
        flat.extend(tokens)
    cursor = 0

    def expect(token: str) -> None:
        nonlocal cursor
        if cursor >= len(flat) or flat[cursor] != token:
            found = flat[cursor] if cursor < len(flat) else "<eof>"
            raise ParseError(f"{path}: expected {token!r}, found {found!r}")
        cursor += 1

    def take() -> str:
        nonlocal cursor
        if cursor >= len(flat):
            raise ParseError(f"{path}: unexpected end of file")
        token = flat[cursor]
        cursor += 1
        return token

    def take_int() -> int:
        token = take()
        try:
            return int(token)
        except ValueError:
            raise ParseError(f"{path}: expected integer, found {token!r}")

    def take_float() -> float:
        token = take()
        try:
            return float(token)
        except ValueError:
            raise ParseError(f"{path}: expected number, found {token!r}")

    # the title line is free text; skip to the ASCII marker
    try:
        cursor = flat.index("ASCII") + 1
    except ValueError:
        raise ParseError(f"{path}: missing ASCII marker")
    expect("DATASET")
    expect("POLYDATA")
    expect("POINTS")
    point_count = take_int()
    expect("double")
    for _ in range(3 * point_count):
        take_float()
    expect("LINES")
    line_count = take_int()
    declared_size = take_int()
    lengths = []
    consumed = 0
    for _ in range(line_count):
        n = take_int()
        lengths.append(n)
        consumed += n + 1
        for _ in range(n):
            index = take_int()
            if not 0 <= index < point_count:
                raise ParseError(f"{path}: point index {index} out of range [0, {point_count})")
    if consumed != declared_size:
        raise ParseError(f"{path}: LINES size {declared_size} != consumed {consumed}")
    return {"points": point_count, "line_lengths": lengths}


# ---------------------------------------------------------------------------
# benchmark reports


def write_scaling_report(path, report) -> None:
    """CSV rows of a strong/weak scaling report."""
    if not report.rows:
        raise ValueError("empty scaling report")
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SCALING_REPORT_HEADER)
        for row in report.rows:
            writer.writerow(
                [
                    row.mode,
                    row.worker_count,
                    row.trajectory_count,
                    row.segment_count,
                    row.tick_count,
                    repr(row.wall_time_s),
                    repr(row.speedup),
                    repr(row.efficiency),
                ]
            )


def write_sparse_report(path, rows: Iterable[Mapping[str, object]]) -> None:
    """CSV rows of a block-vs-dense matvec benchmark."""
    rows = list(rows)
    if not rows:
        raise ValueError("empty sparse report")
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SPARSE_REPORT_HEADER)
        for row in rows:
            writer.writerow(
                [row["M"], row["method"], repr(float(row["wall_time_s"])), row["flops"]]
            )


def write_report(path, report) -> None:
    """Serialize either report flavor based on its shape."""
    if hasattr(report, "rows"):
        write_scaling_report(path, report)
    else:
        write_sparse_report(path, report)


# ---------------------------------------------------------------------------
# synthetic data


def make_synthetic_set(
    trajectory_count: int,
    point_count: int,
    seed: int = 0,
    step_scale: float = 0.25,
) -> TrajectorySet:
    """Random-walk trajectories for demos and benchmarks (deterministic per seed)."""
    rng = np.random.default_rng(seed)
    starts = rng.uniform(-1.0, 1.0, size=(trajectory_count, 1, 3))
    steps = rng.normal(0.0, step_scale, size=(trajectory_count, point_count - 1, 3))
    walks = np.concatenate([starts, starts + np.cumsum(steps, axis=1)], axis=1)
    raw = [
        (i, [Point3(*row) for row in walks[i]])
        for i in range(trajectory_count)
    ]
    return validate_set(raw)
