"""Command-line interface for voltprobe."""

from voltprobe.cli.main import app, main

__all__ = ["app", "main"]
