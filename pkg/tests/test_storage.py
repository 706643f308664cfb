import json
from unittest.mock import patch

import numpy as np
import pytest

from barycenter_rooms_pkg.configuration import ClusterConfig
from barycenter_rooms_pkg.core.clustering import kmeans, run_soft
from barycenter_rooms_pkg.core.errors import CsvFormatError
from barycenter_rooms_pkg.core.evaluation import gen_expansion
from barycenter_rooms_pkg.core.factor import PrincipalCurve
from barycenter_rooms_pkg.core.types import DataSet, LabeledDataSet
from barycenter_rooms_pkg.storage import (
    RunRecord,
    load_csv,
    parse_gaussians,
    read_gaussians,
    read_run_record,
    write_curve_csv,
    write_dataset_csv,
    write_json,
    write_run_record,
)


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadCsv:
    def test_plain_numeric_file(self, tmp_path):
        data = load_csv(write(tmp_path / "plain.csv", "1,2\n3,4\n5,6\n"))

        assert type(data) is DataSet
        assert data.data.shape == (3, 2)

    def test_header_and_label_column(self, tmp_path):
        path = write(tmp_path / "labeled.csv", "a,b,label\n1,2,1\n3,4,2\n5,6,2\n")
        data = load_csv(path, label_column="label")

        assert isinstance(data, LabeledDataSet)
        assert data.dim == 2
        assert data.labels.tolist() == [1, 2, 2]

    def test_label_column_by_negative_index(self, tmp_path):
        data = load_csv(write(tmp_path / "idx.csv", "1,2,1\n3,4,2\n"), label_column=-1)

        assert data.labels.tolist() == [1, 2]
        assert np.array_equal(data.data, [[1.0, 2.0], [3.0, 4.0]])

    def test_forced_header(self, tmp_path):
        data = load_csv(write(tmp_path / "numeric_header.csv", "1,2\n3,4\n"), has_header=True)

        assert data.n_samples == 1

    def test_ragged_rows(self, tmp_path):
        with pytest.raises(CsvFormatError, match="row 3") as info:
            load_csv(write(tmp_path / "ragged.csv", "1,2\n3,4\n5\n"))
        assert info.value.row == 3

    def test_non_numeric_cell(self, tmp_path):
        with pytest.raises(CsvFormatError, match="non-numeric") as info:
            load_csv(write(tmp_path / "bad.csv", "x,y\n1,2\n3,oops\n"))
        assert (info.value.row, info.value.column) == (3, 2)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_csv(tmp_path / "nothing.csv")

    def test_label_name_without_header(self, tmp_path):
        with pytest.raises(CsvFormatError, match="no header"):
            load_csv(write(tmp_path / "nohead.csv", "1,2\n"), has_header=False, label_column="label")

    @patch("barycenter_rooms_pkg.storage.csvio.logger")
    def test_zero_based_labels_relabeled(self, mock_logger, tmp_path):
        data = load_csv(write(tmp_path / "zero.csv", "1,0\n2,1\n3,1\n"), label_column=1)

        assert data.labels.tolist() == [1, 2, 2]
        mock_logger.warning.assert_called_once()

    def test_round_trip_is_exact(self, tmp_path):
        original = gen_expansion(2.2, seed=7)
        path = write_dataset_csv(tmp_path / "data.csv", original)
        loaded = load_csv(path, label_column="label")

        assert np.array_equal(loaded.data, original.data)
        assert np.array_equal(loaded.labels, original.labels)
        assert path.read_text(encoding="utf-8").splitlines()[0] == "x1,x2,label"


class TestCurveCsv:
    def test_header_and_rows(self, tmp_path):
        curve = PrincipalCurve(z=np.array([0.0, 1.0]), points=np.array([[0.0, 0.5], [1.0, 1.5]]))
        lines = write_curve_csv(tmp_path / "curve.csv", curve).read_text(encoding="utf-8").splitlines()

        assert lines[0] == "z,x1,x2"
        assert lines[2] == "1,1,1.5"


class TestRunRecords:
    def test_hard_record_round_trip(self, tmp_path, three_blobs):
        result = kmeans(three_blobs, 3, ClusterConfig(restarts=2, seed=4))
        record = RunRecord.from_result(result, 3, {"algorithm": "kmeans", "seed": 4}, 12.5)
        loaded = read_run_record(write_run_record(tmp_path / "run.json", record))

        assert loaded == record
        assert loaded.assignment is None
        assert loaded.prediction() == record.labels
        assert loaded.seed == 4

    def test_soft_record_keeps_assignment(self, three_blobs):
        result = run_soft(three_blobs, 3, "isotropic", ClusterConfig(restarts=1))
        record = RunRecord.from_result(result, 3, {"seed": 0}, 1.0)

        assert np.allclose(np.asarray(record.prediction()).sum(axis=1), 1.0)

    def test_normalization_flag_recorded(self, three_blobs):
        result = kmeans(three_blobs, 3, ClusterConfig(restarts=1))

        assert RunRecord.from_result(result, 3, {}, 1.0).normalized is False
        assert RunRecord.from_result(result, 3, {}, 1.0, normalized=True).normalized is True

    def test_record_without_normalization_flag_reads_as_raw(self, tmp_path, three_blobs):
        result = kmeans(three_blobs, 3, ClusterConfig(restarts=1))
        payload = RunRecord.from_result(result, 3, {}, 1.0).model_dump()
        del payload["normalized"]
        path = tmp_path / "old.json"
        path.write_text(json.dumps(payload), encoding="utf-8")

        assert read_run_record(path).normalized is False

    def test_missing_record(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="run record"):
            read_run_record(tmp_path / "absent.json")

    def test_write_json_dict(self, tmp_path):
        path = write_json(tmp_path / "payload.json", {"a": 1})

        assert json.loads(path.read_text(encoding="utf-8")) == {"a": 1}


class TestGaussianFiles:
    def test_list_and_wrapped_payloads(self, tmp_path):
        clusters = [{"weight": 0.5, "mean": [0.0], "cov": [[1.0]]}, {"weight": 0.5, "mean": [1.0], "cov": [[2.0]]}]
        path = write(tmp_path / "clusters.json", json.dumps({"clusters": clusters}))

        assert len(read_gaussians(path)) == 2
        assert parse_gaussians(clusters)[1].cov[0, 0] == 2.0

    def test_invalid_cluster_named(self):
        with pytest.raises(ValueError, match="cluster 2"):
            parse_gaussians([{"weight": 1.0, "mean": [0.0], "cov": [[1.0]]}, {"weight": 0.5}])

    def test_empty_payload(self):
        with pytest.raises(ValueError, match="non-empty list"):
            parse_gaussians({"clusters": []})
