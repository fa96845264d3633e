"""Quiver files: JSON or TOML, chosen by suffix

Schema::

    vertices = [{id, dim, alpha}]   # alpha is "1" or "*"
    phi      = [[u, v], ...]        # 2-cycles; unlisted vertices are fixed
    arrows   = [{id, tail, head}]

Unknown fields are rejected.
"""

import tempfile
from pathlib import Path

import msgspec

from quiverdp.core.errors import QuiverParseError
from quiverdp.core.logging import get_logger
from quiverdp.quiver.model import MixedQuiver

log = get_logger("quiver.io")


def _is_toml(path: Path) -> bool:
    return path.suffix.lower() == ".toml"


def decode_quiver(data: bytes | str, fmt: str = "json") -> MixedQuiver:
    """Decode quiver text; fmt is "json" or "toml" """
    try:
        if fmt == "toml":
            return msgspec.toml.decode(data, type=MixedQuiver)
        return msgspec.json.decode(data, type=MixedQuiver)
    except (msgspec.ValidationError, msgspec.DecodeError) as e:
        raise QuiverParseError(f"Invalid quiver {fmt}: {e}") from e


def load_quiver(path: str | Path) -> MixedQuiver:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise QuiverParseError(f"Cannot read quiver file {path}: {e}") from e
    quiver = decode_quiver(data, "toml" if _is_toml(path) else "json")
    log.debug("Quiver loaded", path=str(path), vertices=len(quiver.vertices), arrows=len(quiver.arrows))
    return quiver


def encode_quiver(quiver: MixedQuiver, fmt: str = "json") -> bytes:
    if fmt == "toml":
        return msgspec.toml.encode(quiver)
    return msgspec.json.format(msgspec.json.encode(quiver), indent=2) + b"\n"


def dump_quiver(quiver: MixedQuiver, path: str | Path) -> Path:
    """Write a quiver file atomically"""
    path = Path(path)
    data = encode_quiver(quiver, "toml" if _is_toml(path) else "json")
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with open(fd, "wb") as f:
            f.write(data)
        Path(tmp_path).replace(path)
    except Exception:
        Path(tmp_path).unlink(missing_ok=True)
        raise
    log.info("Quiver saved", path=str(path))
    return path
