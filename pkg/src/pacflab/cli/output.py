"""
PACFLab Output

CSV/JSON emission and the run manifest written next to every output file.
"""

import json
import os
import sys
from pathlib import Path
from typing import Any, TextIO

import pandas as pd
from pydantic import BaseModel

from pacflab import __version__
from pacflab.cli.commands import CommandResult, RunConfig
from pacflab.core.errors import ConfigError

FLOAT_FORMAT = "%.17g"


def _json_default(value: Any) -> Any:
    # numpy scalars and arrays
    if hasattr(value, "tolist"):
        return value.tolist()
    return str(value)


def _plain(data: dict[str, Any]) -> dict[str, Any]:
    return json.loads(json.dumps(data, default=_json_default))


class RunManifest(BaseModel):
    """Config echo, version and diagnostics of one run."""

    pacflab_version: str
    command: str
    config: dict[str, Any]
    model: dict[str, Any]
    diagnostics: dict[str, Any]
    outputs: list[str]
    passed: bool


def check_writable(out: Path | None) -> None:
    """Fail before computing when the output cannot be written."""
    if out is None:
        return
    directory = out.parent if str(out.parent) else Path(".")
    if not directory.is_dir():
        raise ConfigError(f"output directory {directory} does not exist", out=str(out))
    if not os.access(directory, os.W_OK):
        raise ConfigError(f"output directory {directory} is not writable", out=str(out))


def write_frame(frame: pd.DataFrame, target: Path | TextIO, fmt: str) -> None:
    if fmt == "json":
        text = frame.to_json(orient="records", double_precision=15)
        if isinstance(target, Path):
            target.write_text(text + "\n", encoding="utf-8")
        else:
            target.write(text + "\n")
        return
    frame.to_csv(target, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def trace_path(out: Path, name: str) -> Path:
    return out.with_name(f"{out.stem}.{name}.trace.csv")


def manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


def emit(result: CommandResult, config: RunConfig, stream: TextIO | None = None) -> list[Path]:
    """Write the result to config.out (or the stream) and, with an output file, the manifest."""
    stream = stream or sys.stdout
    written: list[Path] = []
    if result.payload is not None:
        text = json.dumps(result.payload, indent=2, sort_keys=True, default=_json_default)
        if config.out is None:
            stream.write(text + "\n")
        else:
            config.out.write_text(text + "\n", encoding="utf-8")
            written.append(config.out)
            for name, frame in result.traces.items():
                path = trace_path(config.out, name)
                write_frame(frame, path, "csv")
                written.append(path)
    elif result.frame is not None:
        if config.out is None:
            write_frame(result.frame, stream, config.format)
        else:
            write_frame(result.frame, config.out, config.format)
            written.append(config.out)

    if config.out is not None:
        manifest = RunManifest(
            pacflab_version=__version__,
            command=config.command,
            config=config.model_dump(mode="json"),
            model=_plain(result.model),
            diagnostics=_plain(result.diagnostics),
            outputs=[path.name for path in written],
            passed=result.passed,
        )
        path = manifest_path(config.out)
        path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
        written.append(path)
    return written
