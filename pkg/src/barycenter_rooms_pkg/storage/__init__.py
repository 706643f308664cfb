from .csvio import load_csv, write_curve_csv, write_dataset_csv
from .records import (
    RunRecord,
    parse_gaussians,
    read_gaussians,
    read_run_record,
    write_json,
    write_run_record,
)

__all__ = [
    "RunRecord",
    "load_csv",
    "parse_gaussians",
    "read_gaussians",
    "read_run_record",
    "write_curve_csv",
    "write_dataset_csv",
    "write_json",
    "write_run_record",
]
