from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from .errors import LabelRangeError


class ArrayModel(BaseModel):
    """Immutable value holding numpy arrays; arrays serialize as nested lists."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_serializer("*", when_used="json")
    def _arrays_to_lists(self, value):
        if isinstance(value, np.ndarray):
            return value.tolist()
        if isinstance(value, BaseModel):
            return value.model_dump(mode="json")
        if isinstance(value, list) and value and isinstance(value[0], np.ndarray):
            return [item.tolist() for item in value]
        return value


class DataSet(ArrayModel):
    data: np.ndarray = Field(..., description="N x d matrix of samples")

    @field_validator("data", mode="before")
    @classmethod
    def _as_matrix(cls, value):
        value = np.asarray(value, dtype=float)
        if value.ndim == 1:
            value = value[:, None]
        if value.ndim != 2 or value.shape[0] < 1 or value.shape[1] < 1:
            raise ValueError(f"data must be a non-empty N x d matrix, got shape {value.shape}")
        if not np.all(np.isfinite(value)):
            raise ValueError("data contains non-finite values")
        return value

    @property
    def n_samples(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]


class LabeledDataSet(DataSet):
    labels: np.ndarray = Field(..., description="N integer labels in [1, K]")
    n_classes: int = Field(..., ge=1, description="Number of classes K")

    @field_validator("labels", mode="before")
    @classmethod
    def _as_labels(cls, value):
        value = np.asarray(value)
        if value.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if value.size and not np.all(np.equal(np.mod(value, 1), 0)):
            raise LabelRangeError("labels must be integers")
        return value.astype(int)

    @model_validator(mode="after")
    def _check_labels(self):
        if self.labels.shape[0] != self.data.shape[0]:
            raise ValueError(f"{self.labels.shape[0]} labels for {self.data.shape[0]} samples")
        if self.labels.size and (self.labels.min() < 1 or self.labels.max() > self.n_classes):
            raise LabelRangeError(f"labels must lie in [1, {self.n_classes}]")
        return self


def as_dataset(data: Union[DataSet, np.ndarray, list]) -> DataSet:
    if isinstance(data, DataSet):
        return data
    return DataSet(data=data)


def as_matrix(data: Union[DataSet, np.ndarray, list]) -> np.ndarray:
    return as_dataset(data).data


def as_labels(labels, n_classes: Optional[int] = None) -> np.ndarray:
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise LabelRangeError("labels must be one-dimensional")
    labels = labels.astype(int)
    upper = n_classes if n_classes is not None else (labels.max() if labels.size else 1)
    if labels.size and (labels.min() < 1 or labels.max() > upper):
        raise LabelRangeError(f"labels must lie in [1, {upper}], got [{labels.min()}, {labels.max()}]")
    return labels
