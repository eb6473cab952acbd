"""Output helpers: stable float formatting, atomic CSV/JSON writes,
checksums, and run manifests.

Writes are atomic (temp file in the target directory, then rename) so a
crash never leaves a partial output, and reruns with identical inputs
produce byte-identical files. Each run directory gets a ``manifest.json``
recording the tool version, master seed, config digest, a checksum per
output, and per-column documentation; the manifest carries the only
timestamp, so everything else can be compared byte for byte.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import os
import tempfile

from . import __version__
from .errors import ParameterError

#: Round-trip exact for doubles.
FLOAT_FMT = "%.17g"

MANIFEST_NAME = "manifest.json"


def fmt_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return FLOAT_FMT % x
    if isinstance(x, int):
        return str(x)
    return str(x)


def _atomic_bytes(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_csv_atomic(path: str, header: list[str], rows) -> None:
    """Write a CSV with LF line endings and %.17g floats, atomically."""
    lines = [",".join(header)]
    width = len(header)
    for row in rows:
        if len(row) != width:
            raise ParameterError(
                f"row width {len(row)} does not match header width {width}"
            )
        lines.append(",".join(fmt_value(x) for x in row))
    _atomic_bytes(path, ("\n".join(lines) + "\n").encode("utf-8"))


def write_json_atomic(path: str, obj) -> None:
    """Write sorted-key, indented JSON with a trailing newline, atomically."""
    _atomic_bytes(
        path, (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")
    )


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def config_digest(obj) -> str:
    """Digest of the canonical compact JSON encoding of a config object."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def write_manifest(
    out_dir: str,
    config: dict | None,
    master_seed: int,
    outputs: dict,
) -> str:
    """Record every output file's checksum next to the run metadata.

    ``outputs`` maps a filename (relative to ``out_dir``) to its
    documentation: a column-name-to-meaning dict for CSVs, or a plain
    description string. Returns the manifest path.
    """
    entries = {}
    for name, doc in sorted(outputs.items()):
        path = os.path.join(out_dir, name)
        entry = {
            "sha256": sha256_file(path),
            "bytes": os.path.getsize(path),
        }
        if isinstance(doc, dict):
            entry["columns"] = doc
        else:
            entry["description"] = str(doc)
        entries[name] = entry
    manifest = {
        "tool": "llgames",
        "version": __version__,
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "master_seed": master_seed,
        "config_digest": None if config is None else config_digest(config),
        "outputs": entries,
    }
    path = os.path.join(out_dir, MANIFEST_NAME)
    write_json_atomic(path, manifest)
    return path
