"""Command line for the simulator: train, run, compare, serve.

The CLI is a thin client: it reads local files, forwards JSON to the service
(in-process by default, remote with --url), and writes the returned artifacts
verbatim. Exit codes: 0 success, 1 validation error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .client import ServiceClient, ServiceRuntimeError, ServiceValidationError
from .config import ConfigError
from .ddpg.checkpoint import CheckpointError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; our contract reserves 2 for runtime."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _load_config_mapping(path: str | None) -> dict:
    if path is None:
        return {}
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not text.strip():
        return {}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return doc


def _load_checkpoint_doc(path: str | None) -> dict | None:
    if path is None:
        return None
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint {path} is not valid JSON: {exc}") from exc
    return doc


def _fmt_summary(s: dict) -> str:
    return (
        f"{s['allocator']}: avg latency {s['avg_latency_s'] * 1e3:.2f} ms, "
        f"utilization {s['utilization']:.3f}, jitter {s['jitter_s'] * 1e3:.2f} ms"
    )


def _cmd_train(args) -> int:
    payload = {
        "config": _load_config_mapping(args.config),
        "seed": args.seed,
        "episodes": args.episodes,
        "horizon": args.horizon,
    }
    data = ServiceClient(args.url).post("/train", payload)
    Path(args.checkpoint).write_text(json.dumps(data["checkpoint"]) + "\n")
    Path(args.out).write_text(data["curve_csv"])
    s = data["summary"]
    print(
        f"trained {s['episodes']} episodes: mean reward "
        f"{s['first_window_mean_reward']:.4f} (first window) -> "
        f"{s['final_window_mean_reward']:.4f} (final window)"
    )
    print(f"wrote checkpoint to {args.checkpoint}, learning curve to {args.out}")
    return EXIT_OK


def _cmd_run(args) -> int:
    payload = {
        "config": _load_config_mapping(args.config),
        "allocator": args.allocator,
        "seed": args.seed,
        "checkpoint": _load_checkpoint_doc(args.checkpoint),
        "horizon": args.horizon,
    }
    data = ServiceClient(args.url).post("/experiments/run", payload)
    Path(args.out).write_text(data["csv"])
    print(_fmt_summary(data["summary"]))
    print(f"wrote metrics to {args.out}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    payload = {
        "config": _load_config_mapping(args.config),
        "seed": args.seed,
        "checkpoint": _load_checkpoint_doc(args.checkpoint),
        "horizon": args.horizon,
    }
    data = ServiceClient(args.url).post("/experiments/compare", payload)
    Path(args.out).write_text(data["csv"])
    for name in ("static", "pf", "drl"):
        if name in data["summaries"]:
            print(_fmt_summary(data["summaries"][name]))
    print(f"wrote combined metrics to {args.out}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="slicetwin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_url=True):
        p.add_argument("--config", help="JSON config file (defaults apply when omitted)")
        p.add_argument("--seed", type=int, help="master seed (default: config rng_seed)")
        if with_url:
            p.add_argument("--url", help="remote service URL (default: in-process)")

    p = sub.add_parser("train", help="train an allocator and save a checkpoint")
    common(p)
    p.add_argument("--episodes", type=int, help="override training episode count")
    p.add_argument("--horizon", type=int, help="override steps per episode")
    p.add_argument("--out", default="training_curve.csv", help="learning-curve CSV path")
    p.add_argument("--checkpoint", default="checkpoint.json", help="checkpoint output path")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("run", help="evaluate one allocator and write a metrics CSV")
    common(p)
    p.add_argument(
        "--allocator", required=True, choices=("static", "pf", "drl"), help="allocator to evaluate"
    )
    p.add_argument("--checkpoint", help="checkpoint file (required for drl)")
    p.add_argument("--horizon", type=int, help="override steps in the evaluation episode")
    p.add_argument("--out", default="metrics.csv", help="metrics CSV path")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("compare", help="evaluate all three allocators on paired seeds")
    common(p)
    p.add_argument("--checkpoint", help="checkpoint file for the drl allocator")
    p.add_argument("--horizon", type=int, help="override steps in the evaluation episodes")
    p.add_argument("--out", default="comparison.csv", help="combined metrics CSV path")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, CheckpointError, ServiceValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ServiceRuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
