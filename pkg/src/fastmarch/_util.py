"""Small shared helpers."""

from __future__ import annotations

import os
import tempfile


def atomic_write(path, data):
    """Write bytes or text to `path` via a temp file and rename.

    A crashed or interrupted run never leaves a truncated file behind.
    """
    directory = os.path.dirname(os.path.abspath(path)) or "."
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
