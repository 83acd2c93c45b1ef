"""Tests for CSV snapshots and snapshot sinks."""

import numpy as np
import pytest

from src.domain.errors import ConfigurationError
from src.services.numerics.wetdry import redefine_bottom
from src.services.simulation import (
    CsvSnapshotSink,
    MemorySnapshotSink,
    read_snapshot_csv,
    write_snapshot_csv,
)
from tests.helpers import make_field


class TestWriteSnapshot:
    def test_header_and_one_row_per_cell(self, tmp_path):
        path = write_snapshot_csv(make_field([1.0, 0.5], b=[0.0, 0.2]), tmp_path / "snap.csv")
        lines = path.read_text().splitlines()
        assert len(lines) == 3
        assert lines[0] == "x,b,h,q,eta"

    def test_surface_column(self, tmp_path):
        field = make_field([1.0, 0.5], q=[0.1, -0.2], b=[0.0, 0.2])
        table = read_snapshot_csv(write_snapshot_csv(field, tmp_path / "snap.csv"))
        np.testing.assert_array_equal(table.eta, table.h + table.b)
        np.testing.assert_array_equal(table.q, field.q)
        np.testing.assert_array_equal(table.x, field.grid.cell_centers)
        assert table.b_eff is None

    def test_redefined_bottom_adds_effective_column(self, tmp_path):
        field = redefine_bottom(make_field([0.2, 0.0], b=[0.0, 0.5]), 1e-6)
        table = read_snapshot_csv(write_snapshot_csv(field, tmp_path / "snap.csv"))
        np.testing.assert_array_equal(table.b, [0.0, 0.5])
        np.testing.assert_allclose(table.b_eff, [0.0, 0.2])

    def test_effective_column_on_request(self, tmp_path):
        path = write_snapshot_csv(make_field([1.0, 1.0]), tmp_path / "snap.csv", include_effective=True)
        assert path.read_text().splitlines()[0] == "x,b,h,q,eta,b_eff"

    def test_creates_missing_directories(self, tmp_path):
        path = write_snapshot_csv(make_field([1.0, 1.0]), tmp_path / "a" / "b" / "snap.csv")
        assert path.is_file()

    def test_unwritable_path_names_the_file(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        with pytest.raises(OSError, match="blocker"):
            write_snapshot_csv(make_field([1.0, 1.0]), blocker / "snap.csv")

    def test_foreign_file_rejected(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ConfigurationError):
            read_snapshot_csv(path)


class TestSinks:
    def test_csv_sink_names_files_by_time(self, tmp_path):
        sink = CsvSnapshotSink(tmp_path, prefix="test1_qtra2_")
        path = sink.write(make_field([1.0, 1.0], time=0.25))
        assert path == tmp_path / "test1_qtra2_t=0.25.csv"
        assert sink.paths == [path]
        assert path.is_file()

    def test_memory_sink(self):
        sink = MemorySnapshotSink()
        assert sink.write(make_field([1.0, 1.0], time=1.5)) is None
        assert sink.times == [1.5]
