from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from dotenv import load_dotenv


@dataclass(frozen=True)
class KtgConfig:
    cache_dir: Path | None = None  # no on-disk basis cache when unset
    workers: int = 1
    log_level: str = "WARNING"
    report_format: Literal["text", "machine"] = "text"

    @classmethod
    def from_env(cls) -> "KtgConfig":
        load_dotenv()
        cache_dir = os.getenv("KTG_CACHE_DIR")
        workers = os.getenv("KTG_WORKERS")
        return cls(
            cache_dir=Path(cache_dir) if cache_dir else None,
            workers=int(workers) if workers else 1,
            log_level=os.getenv("KTG_LOG_LEVEL", "WARNING").upper(),
        )
