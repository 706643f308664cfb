"""CSV persistence of data sets and principal curves.

Comma-separated, UTF-8, '.' decimal, at most one header line. Floats are
written with 17 significant digits so a written data set reads back
bit-for-bit.
"""
import csv
from pathlib import Path
from typing import Optional, Union

import numpy as np
from loguru import logger

from ..core.errors import CsvFormatError
from ..core.factor import PrincipalCurve
from ..core.types import DataSet, LabeledDataSet

PathLike = Union[str, Path]
LabelColumn = Union[int, str]


def _format(value: float) -> str:
    return format(float(value), ".17g")


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _read_rows(path: PathLike) -> list[tuple[int, list[str]]]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"No such data file: {path}")
    with path.open(newline="", encoding="utf-8") as handle:
        rows = [(line, [cell.strip() for cell in row]) for line, row in enumerate(csv.reader(handle), start=1)]
    return [(line, row) for line, row in rows if row and any(row)]


def _label_index(label_column: LabelColumn, header: Optional[list[str]], width: int) -> int:
    if isinstance(label_column, str):
        if header is None:
            raise CsvFormatError(f"label column '{label_column}' given by name but the file has no header")
        if label_column not in header:
            raise CsvFormatError(f"label column '{label_column}' not found in header {header}")
        return header.index(label_column)
    index = label_column + width if label_column < 0 else label_column
    if not 0 <= index < width:
        raise CsvFormatError(f"label column {label_column} out of range for {width} columns")
    return index


def _labels_from_column(values: np.ndarray, first_line: int) -> tuple[np.ndarray, int]:
    if not np.all(np.equal(np.mod(values, 1), 0)):
        raise CsvFormatError("label column holds non-integer values", row=first_line)
    labels = values.astype(int)
    if labels.min() >= 1:
        return labels, int(labels.max())
    uniques, labels = np.unique(labels, return_inverse=True)
    logger.warning(f"Relabeled classes {uniques.tolist()} to 1..{uniques.size}")
    return labels + 1, int(uniques.size)


def load_csv(
    path: PathLike,
    has_header: Optional[bool] = None,
    label_column: Optional[LabelColumn] = None,
) -> Union[DataSet, LabeledDataSet]:
    """Read a rectangular numeric table.

    ``has_header=None`` treats the first line as a header when any of its
    cells is not a number. ``label_column`` (name, or 0-based index with
    negatives counted from the end) is split off as integer labels.
    """
    rows = _read_rows(path)
    if not rows:
        raise CsvFormatError(f"{path} holds no data")

    if has_header is None:
        has_header = not all(_is_number(cell) for cell in rows[0][1])
    header = rows[0][1] if has_header else None
    body = rows[1:] if has_header else rows
    if not body:
        raise CsvFormatError(f"{path} holds a header but no data rows")

    width = len(header) if header is not None else len(body[0][1])
    for line, row in body:
        if len(row) != width:
            raise CsvFormatError(f"ragged row: expected {width} columns, got {len(row)}", row=line)

    values = np.empty((len(body), width))
    for r, (line, row) in enumerate(body):
        for c, cell in enumerate(row):
            try:
                values[r, c] = float(cell)
            except ValueError:
                raise CsvFormatError(f"non-numeric cell '{cell}'", row=line, column=c + 1) from None

    if label_column is None:
        logger.debug(f"Loaded {values.shape[0]}x{values.shape[1]} data set from {path}")
        return DataSet(data=values)

    index = _label_index(label_column, header, width)
    labels, n_classes = _labels_from_column(values[:, index], body[0][0])
    data = np.delete(values, index, axis=1)
    logger.debug(f"Loaded {data.shape[0]}x{data.shape[1]} data set with {n_classes} classes from {path}")
    return LabeledDataSet(data=data, labels=labels, n_classes=n_classes)


def write_dataset_csv(path: PathLike, dataset: Union[DataSet, np.ndarray]) -> Path:
    """Header ``x1..xd`` (plus ``label`` for labeled sets), one sample per row."""
    if not isinstance(dataset, DataSet):
        dataset = DataSet(data=dataset)
    labeled = isinstance(dataset, LabeledDataSet)
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        header = [f"x{j + 1}" for j in range(dataset.dim)]
        writer.writerow(header + ["label"] if labeled else header)
        for i, row in enumerate(dataset.data):
            cells = [_format(v) for v in row]
            if labeled:
                cells.append(str(int(dataset.labels[i])))
            writer.writerow(cells)
    logger.debug(f"Wrote {dataset.n_samples} samples to {path}")
    return path


def write_curve_csv(path: PathLike, curve: PrincipalCurve) -> Path:
    """Header ``z,x1..xd``, rows ordered by z."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["z"] + [f"x{j + 1}" for j in range(curve.points.shape[1])])
        for row in curve.rows():
            writer.writerow([_format(v) for v in row])
    logger.debug(f"Wrote {len(curve)} curve points to {path}")
    return path
