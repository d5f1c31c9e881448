import hashlib
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

GENERATOR_VERSION = "ncergo 0.1.0"


@dataclass
class Provenance:
    """Where a result table came from; written next to the CSV, never inside it."""

    subcommand: str
    config_path: Optional[str]
    config_sha256: Optional[str]
    seed: int
    row_count: int
    generated_at: str
    generator: str = GENERATOR_VERSION

    @staticmethod
    def digest(path: str) -> str:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()

    @classmethod
    def for_run(
        cls, subcommand: str, config_path: Optional[str], seed: int, row_count: int
    ) -> "Provenance":
        """Provenance stamped with the current UTC time."""
        return cls(
            subcommand=subcommand,
            config_path=config_path,
            config_sha256=cls.digest(config_path) if config_path else None,
            seed=seed,
            row_count=row_count,
            generated_at=datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
        )

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "config_path": self.config_path,
            "config_sha256": self.config_sha256,
            "seed": self.seed,
            "row_count": self.row_count,
            "generated_at": self.generated_at,
            "generator": self.generator,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Provenance":
        return cls(
            subcommand=data["subcommand"],
            config_path=data.get("config_path"),
            config_sha256=data.get("config_sha256"),
            seed=data["seed"],
            row_count=data["row_count"],
            generated_at=data["generated_at"],
            generator=data.get("generator", GENERATOR_VERSION),
        )

    def __str__(self) -> str:
        return f"Provenance(subcommand='{self.subcommand}', rows={self.row_count}, seed={self.seed})"
