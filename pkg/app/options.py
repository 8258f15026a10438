import sys
from dataclasses import dataclass
from typing import Optional

from utils.config import SeriesConfig, resolve_series_config, resolve_workers
from utils.errors import ConfigError

FORMATS = ("csv", "json", "text")


@dataclass(frozen=True)
class CliConfig:
    tol: float
    max_terms: int
    output_path: Optional[str] = None
    format: str = "text"
    workers: int = 1

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ConfigError(f"formato {self.format!r} inválido; opções: {', '.join(FORMATS)}")

    @classmethod
    def from_args(cls, args) -> "CliConfig":
        # valida tudo antes de qualquer conta
        series = resolve_series_config(args.tol, args.max_terms)
        fmt = "json" if getattr(args, "json", False) else (args.format or "text")
        return cls(
            tol=series.tol,
            max_terms=series.max_terms,
            output_path=args.out,
            format=fmt,
            workers=resolve_workers(args.workers),
        )

    @property
    def series(self) -> SeriesConfig:
        return SeriesConfig(self.tol, self.max_terms)

    def emit(self, text: str) -> None:
        if self.output_path:
            with open(self.output_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
