from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator


class BaseAddonConfig(BaseModel):
    """Fields every rooms addon configuration carries; unknown keys are kept as extras."""

    model_config = ConfigDict(extra="allow", validate_assignment=True)

    id: str = Field(..., description="Unique identifier for the addon")
    type: str = Field(..., description="Type of the addon")
    name: str = Field(..., description="Display name of the addon")
    description: str = Field("", description="Description of the addon")
    enabled: bool = Field(True, description="Whether the addon is enabled")
    config: dict[str, Any] = Field(default_factory=dict, description="Free-form settings passed through untouched")

    @field_validator("id", "type", "name")
    @classmethod
    def validate_not_blank(cls, value: str, info):
        value = value.strip()
        if not value:
            raise ValueError(f"{info.field_name} must not be blank")
        return value
