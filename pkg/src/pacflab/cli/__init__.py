"""
PACFLab CLI Module

Command-line front end: run configuration, commands and output writers.
"""

from pacflab.cli.commands import CommandResult, RunConfig, run
from pacflab.cli.main import build_parser, main
from pacflab.cli.output import RunManifest, emit

__all__ = [
    # Models
    "RunConfig",
    "CommandResult",
    "RunManifest",
    # Operations
    "run",
    "emit",
    "build_parser",
    "main",
]
