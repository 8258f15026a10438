import logging
import os
from dataclasses import dataclass
from typing import Optional

from utils.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 100000

ENV_TOL = "SUITA_TORUS_TOL"
ENV_MAX_TERMS = "SUITA_TORUS_MAX_TERMS"
ENV_WORKERS = "SUITA_TORUS_WORKERS"


@dataclass(frozen=True)
class SeriesConfig:
    """Tolerância absoluta de truncamento e teto de termos para toda q-série."""

    tol: float = DEFAULT_TOL
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        if not (self.tol > 0):
            raise ConfigError(f"tol deve ser > 0 (recebido {self.tol!r})")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ConfigError(f"max_terms deve ser inteiro >= 1 (recebido {self.max_terms!r})")

    def halved(self) -> "SeriesConfig":
        return SeriesConfig(tol=self.tol / 2, max_terms=self.max_terms)


def _env_value(name: str, cast):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return cast(raw.strip())
    except ValueError as exc:
        raise ConfigError(f"variável de ambiente {name}={raw!r} inválida") from exc


def resolve_series_config(tol: Optional[float] = None, max_terms: Optional[int] = None) -> SeriesConfig:
    """
    Resolve a configuração efetiva.
    Prioriza:
    1) argumentos explícitos (flags da CLI)
    2) variáveis de ambiente SUITA_TORUS_TOL / SUITA_TORUS_MAX_TERMS
    3) padrões (1e-14, 100000)
    """

    if tol is None:
        tol = _env_value(ENV_TOL, float)
        if tol is not None:
            logger.debug("tol=%g via %s", tol, ENV_TOL)
    if max_terms is None:
        max_terms = _env_value(ENV_MAX_TERMS, int)

    return SeriesConfig(
        tol=DEFAULT_TOL if tol is None else tol,
        max_terms=DEFAULT_MAX_TERMS if max_terms is None else max_terms,
    )


def resolve_workers(workers: Optional[int] = None) -> int:
    if workers is None:
        workers = _env_value(ENV_WORKERS, int)
    if workers is None:
        return 1
    if workers < 1:
        raise ConfigError(f"workers deve ser >= 1 (recebido {workers!r})")
    return workers
