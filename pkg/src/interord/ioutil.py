"""Small I/O helpers: atomic writes, canonical float/CSV formatting, hashing.

Every artifact file is written atomically (temp file in the target directory,
then rename) so a crashed run never leaves a partial CSV behind. Floats are
serialized with ``repr`` (shortest round-trip form), which makes output files
byte-stable for identical inputs.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

CSV_NEWLINE = "\n"  # LF line endings, part of the file contract


def fmt_float(x) -> str:
    """Shortest decimal string that round-trips to the same double."""
    return repr(float(x))


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file + rename in the same directory."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_csv(path, header, rows) -> None:
    """Write a comma-separated file: '.' decimals, header row, LF endings.

    ``rows`` yields tuples; floats are formatted via :func:`fmt_float`,
    everything else via ``str``.
    """
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row)
        )
    atomic_write_text(path, CSV_NEWLINE.join(lines) + CSV_NEWLINE)


def canonical_json(obj) -> str:
    """Deterministic JSON encoding (sorted keys, no whitespace)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()
