"""Request and response bodies for the HTTP endpoints.

Scenario configuration travels as a plain JSON object and is validated
server-side against the documented key set, so the service is the single
authority on defaults. Checkpoints travel as their JSON document form.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

AllocatorName = Literal["static", "pf", "drl"]


class HealthResponse(BaseModel):
    status: str
    version: str


class ValidateRequest(BaseModel):
    config: dict = Field(default_factory=dict)


class ValidateResponse(BaseModel):
    valid: bool
    config: dict  # fully resolved values, defaults filled in


class RunRequest(BaseModel):
    config: dict = Field(default_factory=dict)
    allocator: AllocatorName = "static"
    seed: Optional[int] = None          # falls back to the config's rng_seed
    checkpoint: Optional[dict] = None   # required when allocator == "drl"
    horizon: Optional[int] = None


class RunResponse(BaseModel):
    csv: str
    summary: dict


class CompareRequest(BaseModel):
    config: dict = Field(default_factory=dict)
    seed: Optional[int] = None
    checkpoint: Optional[dict] = None
    horizon: Optional[int] = None


class CompareResponse(BaseModel):
    csv: str
    summaries: dict


class TrainRequest(BaseModel):
    config: dict = Field(default_factory=dict)
    seed: Optional[int] = None
    episodes: Optional[int] = None
    horizon: Optional[int] = None


class TrainResponse(BaseModel):
    checkpoint: dict
    curve_csv: str
    summary: dict
