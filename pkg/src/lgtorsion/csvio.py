"""CSV output: comma-separated, 9 significant digits, '#' comment block.

Files are written atomically (temp file + rename) and contain nothing
run-dependent, so repeated runs of the same scenario are byte-identical.
"""

from __future__ import annotations

import os
import tempfile
from typing import Iterable, Sequence


def _fmt(cell) -> str:
    if cell is None:
        return ""
    if isinstance(cell, str):
        return cell.replace(",", ";")
    if isinstance(cell, bool):
        return str(int(cell))
    if isinstance(cell, int):
        return str(cell)
    return f"{cell:.8e}"


def write_csv(
    path: str,
    header: Sequence[str],
    rows: Iterable[Sequence],
    meta: Sequence[str] = (),
) -> None:
    lines = [f"# {entry}" for entry in meta]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    payload = "\n".join(lines) + "\n"

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
