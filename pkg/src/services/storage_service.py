import os
import tempfile
from pathlib import Path
from typing import Iterable

import orjson
import pandas as pd
import structlog

from models.experiment import RESULT_COLUMNS, ResultRow
from models.provenance import Provenance


class StorageService:
    """Writes result tables as CSV with a provenance sidecar next to them."""

    def __init__(self):
        self.logger = structlog.get_logger("ncergo.storage")

    @staticmethod
    def to_frame(rows: Iterable[ResultRow]) -> pd.DataFrame:
        """Rows in the fixed column order, sorted by size."""
        records = [row.to_record() for row in sorted(rows, key=lambda r: r.size)]
        return pd.DataFrame.from_records(records, columns=list(RESULT_COLUMNS))

    @staticmethod
    def sidecar_path(out_path: str) -> Path:
        return Path(f"{out_path}.meta.json")

    def save_table(self, frame: pd.DataFrame, out_path: str, provenance: Provenance) -> Path:
        """
        Write ``frame`` to ``out_path`` atomically, then the provenance sidecar.

        Args:
            frame: table with exactly the result columns
            out_path: CSV destination; its directory is created when missing
            provenance: run metadata for ``<out_path>.meta.json``

        Returns:
            Path of the written CSV

        Raises:
            StorageError: when either file cannot be written
        """
        target = Path(out_path)
        self.logger.info("Saving result table", out_path=str(target), rows=len(frame))

        try:
            if list(frame.columns) != list(RESULT_COLUMNS):
                raise StorageError(f"Unexpected columns {list(frame.columns)}")
            target.parent.mkdir(parents=True, exist_ok=True)
            self._atomic_write(
                target,
                frame.to_csv(index=False, float_format="%.17g", lineterminator="\n").encode("utf-8"),
            )
            self._atomic_write(
                self.sidecar_path(out_path),
                orjson.dumps(provenance.to_dict(), option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2),
            )
        except StorageError:
            raise
        except Exception as e:
            self.logger.error("Failed to save result table", out_path=str(target), error=str(e))
            raise StorageError(f"Failed to save result table: {str(e)}")

        self.logger.info("Result table saved", out_path=str(target))
        return target

    def load_provenance(self, out_path: str) -> Provenance:
        try:
            return Provenance.from_dict(orjson.loads(self.sidecar_path(out_path).read_bytes()))
        except (OSError, orjson.JSONDecodeError, KeyError) as e:
            raise StorageError(f"Cannot read provenance for {out_path}: {str(e)}")

    @staticmethod
    def _atomic_write(target: Path, payload: bytes) -> None:
        """Temp file in the target directory, then os.replace."""
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(payload)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


class StorageError(Exception):
    """Raised when storage operations fail."""
    pass
