import time
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict

from barycenter_rooms_pkg.configuration import CustomAddonConfig


class UsageSchema(BaseModel):
    iterations: int = 0
    wall_ms: float = 0.0


class OutputBase(BaseModel):
    """for output. Should be overwritted per action."""

    model_config = ConfigDict(arbitrary_types_allowed=True)


class ActionResponse(BaseModel):
    output: OutputBase
    usage: UsageSchema
    message: Optional[str] = None
    code: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.code is not None and 200 <= self.code < 300


def resolve_config(config: Union[CustomAddonConfig, dict, None]) -> CustomAddonConfig:
    """The addon passes ``{}`` until a configuration is loaded; fall back to defaults."""
    if isinstance(config, CustomAddonConfig):
        return config
    payload = {"id": "barycenter-rooms", "name": "Barycenter rooms"}
    payload.update(config or {})
    return CustomAddonConfig(**payload)


class Stopwatch:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def ms(self) -> float:
        return (time.perf_counter() - self.start) * 1000.0
