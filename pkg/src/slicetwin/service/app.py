"""FastAPI application wrapping the simulator.

Endpoints are synchronous and compute in-request; runs at the documented desk
scale finish in seconds and training in minutes, which suits a local or
single-tenant deployment. CSV payloads are rendered server-side so every
client stores byte-identical files.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..config import ConfigError, ScenarioConfig
from ..ddpg.checkpoint import CheckpointError, agent_from_doc, agent_to_doc
from ..experiment import (
    compare,
    curve_summary,
    format_curve_csv,
    run_experiment,
    split_by_allocator,
    summarize,
    train_slice,
)
from ..metrics import format_csv
from .schemas import (
    CompareRequest,
    CompareResponse,
    HealthResponse,
    RunRequest,
    RunResponse,
    TrainRequest,
    TrainResponse,
    ValidateRequest,
    ValidateResponse,
)


def _resolve(config: dict, seed, horizon=None, episodes=None) -> tuple[ScenarioConfig, int]:
    cfg = ScenarioConfig.from_mapping(config or {})
    overrides = {}
    if horizon is not None:
        overrides["horizon_steps"] = horizon
    if episodes is not None:
        overrides["episodes"] = episodes
    if overrides:
        cfg = cfg.replace(**overrides)
    return cfg, int(seed) if seed is not None else cfg.rng_seed


def _tail_records(cfg: ScenarioConfig) -> int:
    return max(1, cfg.final_window // cfg.record_interval)


def create_app() -> FastAPI:
    app = FastAPI(title="slicetwin", version=__version__)

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(CheckpointError)
    async def _checkpoint_error(request: Request, exc: CheckpointError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/config/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest) -> ValidateResponse:
        cfg = ScenarioConfig.from_mapping(req.config or {})
        return ValidateResponse(valid=True, config=cfg.to_mapping())

    @app.post("/experiments/run", response_model=RunResponse)
    def run(req: RunRequest) -> RunResponse:
        cfg, seed = _resolve(req.config, req.seed, horizon=req.horizon)
        agent = agent_from_doc(req.checkpoint, cfg) if req.checkpoint is not None else None
        records = run_experiment(cfg, req.allocator, seed, agent=agent)
        return RunResponse(
            csv=format_csv(records),
            summary=summarize(records, _tail_records(cfg)),
        )

    @app.post("/experiments/compare", response_model=CompareResponse)
    def run_compare(req: CompareRequest) -> CompareResponse:
        cfg, seed = _resolve(req.config, req.seed, horizon=req.horizon)
        agent = agent_from_doc(req.checkpoint, cfg) if req.checkpoint is not None else None
        records = compare(cfg, seed, agent=agent)
        tail = _tail_records(cfg)
        summaries = {
            name: summarize(recs, tail) for name, recs in split_by_allocator(records).items()
        }
        return CompareResponse(csv=format_csv(records), summaries=summaries)

    @app.post("/train", response_model=TrainResponse)
    def run_train(req: TrainRequest) -> TrainResponse:
        cfg, seed = _resolve(req.config, req.seed, horizon=req.horizon, episodes=req.episodes)
        result = train_slice(cfg, seed)
        return TrainResponse(
            checkpoint=agent_to_doc(result.agent),
            curve_csv=format_curve_csv(result.curve),
            summary=curve_summary(result.curve),
        )

    return app


app = create_app()
