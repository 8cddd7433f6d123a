"""
Atomic file writing for reports.

A report is written to a temporary file next to the target and renamed into
place, so readers never see a half-written file.
"""

import logging
import os
import shutil
import tempfile

logger = logging.getLogger(__name__)


def atomic_write(
    file_path: str,
    content: str,
    encoding: str = 'utf-8',
    backup: bool = False
) -> None:
    """
    Atomically write content to a file.

    Args:
        file_path: Target file path
        content: Content to write
        encoding: File encoding (default utf-8)
        backup: Copy an existing target to `<file_path>.backup` first

    Raises:
        OSError: If the write or rename fails
        ValueError: If content is empty
    """
    if not content or not content.strip():
        raise ValueError("Cannot write empty content to file")

    dir_name = os.path.dirname(os.path.abspath(file_path))
    os.makedirs(dir_name, exist_ok=True)

    if backup and os.path.exists(file_path):
        try:
            shutil.copy2(file_path, f"{file_path}.backup")
        except OSError as e:
            logger.warning(f"Failed to create backup: {e}")

    fd, temp_path = tempfile.mkstemp(dir=dir_name, prefix='.tmp_', suffix='.json')
    try:
        with os.fdopen(fd, 'w', encoding=encoding) as f:
            f.write(content)
            f.flush()
            os.fsync(f.fileno())
        os.replace(temp_path, file_path)
    except BaseException:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise
    logger.debug(f"Wrote {len(content)} characters to {file_path}")
