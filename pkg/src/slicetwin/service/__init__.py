"""HTTP facade over the simulator: run, compare, and train over JSON."""

from .app import app, create_app

__all__ = ["app", "create_app"]
