import logging
import math
from dataclasses import dataclass

import numpy as np

from utils.config import SeriesConfig
from utils.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

# Abaixo disso |q| -> 1 e o truncamento explode
IM_FLOOR = 1e-3

__all__ = [
    "IM_FLOOR",
    "SeriesConfig",
    "Tau",
    "eta",
    "eta_norm",
    "half_period",
    "nome",
    "product_truncation",
    "sum_log_abs_one_minus_q2n",
    "theta_norm",
    "theta_product",
    "theta_series",
    "theta_truncation",
]


@dataclass(frozen=True)
class Tau:
    """Ponto do semiplano superior que parametriza o toro X_tau = C/(Z + tau Z)."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"tau precisa ser finito (recebido {self.re!r}, {self.im!r})")
        if not (self.im > 0):
            raise DomainError(f"tau fora do semiplano superior: Im tau > 0 é obrigatório (recebido Im tau = {self.im!r})")

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def shifted(self, n: int = 1) -> "Tau":
        return Tau(self.re + n, self.im)

    def reflected(self) -> "Tau":
        # -conj(tau)
        return Tau(-self.re, self.im)


def _require_series_domain(tau: Tau) -> None:
    if tau.im < IM_FLOOR:
        raise DomainError(f"Im tau = {tau.im!r} abaixo do piso {IM_FLOOR} para avaliação de séries")


def half_period(tau: Tau) -> complex:
    """(1 + tau)/2, o zero de theta."""
    return (1 + tau.value) / 2


def nome(tau: Tau) -> complex:
    return complex(np.exp(1j * np.pi * tau.value))


def _geometric_cutoff(im_tau: float, log_const: float, cfg: SeriesConfig, what: str) -> int:
    # menor N com const * |q|^(2N+2) < tol, |q|^2 = exp(-2 pi Im tau)
    need = (log_const - math.log(cfg.tol)) / (2 * math.pi * im_tau)
    n_terms = max(0, math.floor(need))
    if n_terms > cfg.max_terms:
        raise ConvergenceError(
            f"{what}: truncamento exige N={n_terms} > max_terms={cfg.max_terms} (Im tau={im_tau!r}, tol={cfg.tol!r})"
        )
    return n_terms


def theta_truncation(z, tau: Tau, cfg: SeriesConfig) -> int:
    """
    Menor N tal que a cauda sum_{|n|>N} |q|^(n^2) e^(2 pi |n| |Im z|) fica abaixo de tol.
    Para arrays usa o maior |Im z|.
    """
    _require_series_domain(tau)
    t = tau.im
    y = float(np.max(np.abs(np.imag(z))))
    log_tol = math.log(cfg.tol)

    for n_terms in range(cfg.max_terms + 1):
        n = n_terms + 1
        log_ratio = -math.pi * t * (2 * n + 1) + 2 * math.pi * y
        if log_ratio >= 0:
            continue
        log_first = -math.pi * t * n * n + 2 * math.pi * y * n
        # dois lados (n > N e n < -N), cauda geométrica a partir de n
        log_tail = math.log(2.0) + log_first - math.log1p(-math.exp(log_ratio))
        if log_tail < log_tol:
            return n_terms

    raise ConvergenceError(
        f"theta_series: nenhum N <= max_terms={cfg.max_terms} satisfaz tol={cfg.tol!r} (tau={tau.value!r}, |Im z|={y!r})"
    )


def product_truncation(tau: Tau, cfg: SeriesConfig, im_w: float = 0.0, magnitude: float = 1.0) -> int:
    """
    Corte do produto triplo: o erro relativo da cauda fica abaixo de tol / magnitude,
    logo o erro absoluto fica abaixo de tol enquanto |theta| <= magnitude.
    """
    _require_series_domain(tau)
    q2 = math.exp(-2 * math.pi * tau.im)
    const = (2.0 + 2.0 * math.exp(2 * math.pi * abs(im_w))) / (1.0 - q2)
    return _geometric_cutoff(tau.im, math.log(const) + max(0.0, math.log(magnitude)), cfg, "theta_product")


def theta_series(z, tau: Tau, cfg: SeriesConfig = SeriesConfig()):
    """theta(z; tau) = sum_n exp(pi i n^2 tau + 2 pi i n z), soma simétrica em [-N, N]."""
    n_terms = theta_truncation(z, tau, cfg)
    logger.debug("theta_series: tau=%r N=%d", tau.value, n_terms)

    zz = np.asarray(z, dtype=complex)
    n = np.arange(-n_terms, n_terms + 1)
    phase = 1j * np.pi * (n * n * tau.value + 2 * n * zz[..., None])
    out = np.exp(phase).sum(axis=-1)
    return complex(out) if out.ndim == 0 else out


def _theta_product_terms(w, tau: Tau, n_terms: int):
    t = tau.value
    n = np.arange(1, n_terms + 1)
    q2n = np.exp(2j * np.pi * n * t)
    cos_w = np.cos(2 * np.pi * w)[..., None]
    factors = (1 - q2n) * (1 - 2 * cos_w * q2n + q2n * q2n)
    prod = np.prod(factors, axis=-1)

    # q^(1/4) via exp(pi i tau / 4), nunca potência principal de q
    prefactor = -np.exp(-0.25j * np.pi * t - 1j * np.pi * (w + 0.5)) * 2 * np.exp(0.25j * np.pi * t)
    return prefactor * np.sin(np.pi * w) * prod


def theta_product(z, tau: Tau, cfg: SeriesConfig = SeriesConfig()):
    """
    theta(z; tau) pela rota do produto triplo de Jacobi, com w = z - (1+tau)/2:
    theta(w + (1+tau)/2) = -exp(-pi i tau/4 - pi i (w + 1/2)) * 2 q^(1/4) sin(pi w)
                           * prod_n (1 - q^2n)(1 - 2 cos(2 pi w) q^2n + q^4n)
    """
    zz = np.asarray(z, dtype=complex)
    w = zz - half_period(tau)
    im_w = float(np.max(np.abs(w.imag)))
    n_terms = product_truncation(tau, cfg, im_w)
    out = _theta_product_terms(w, tau, n_terms)

    # cota relativa: com |theta| > 1 refaz o corte pela magnitude observada
    magnitude = 2 * float(np.max(np.abs(out)))
    if magnitude > 1:
        n_terms = product_truncation(tau, cfg, im_w, magnitude)
        out = _theta_product_terms(w, tau, n_terms)
    logger.debug("theta_product: tau=%r N=%d", tau.value, n_terms)
    return complex(out) if out.ndim == 0 else out


def _eta_terms(tau: Tau, n_terms: int) -> complex:
    n = np.arange(1, n_terms + 1)
    prod = np.prod(1 - np.exp(2j * np.pi * n * tau.value))
    return complex(np.exp(1j * np.pi * tau.value / 12) * prod)


def eta(tau: Tau, cfg: SeriesConfig = SeriesConfig()) -> complex:
    """eta(tau) = q^(1/12) prod_{n>=1} (1 - q^2n), com q^(1/12) = exp(pi i tau / 12)."""
    _require_series_domain(tau)
    q2 = math.exp(-2 * math.pi * tau.im)
    log_const = -math.log1p(-q2)
    n_terms = _geometric_cutoff(tau.im, log_const, cfg, "eta")
    out = _eta_terms(tau, n_terms)

    # mesma cota relativa de theta_product
    magnitude = 2 * abs(out)
    if magnitude > 1:
        n_terms = _geometric_cutoff(tau.im, log_const + math.log(magnitude), cfg, "eta")
        out = _eta_terms(tau, n_terms)
    return out


def sum_log_abs_one_minus_q2n(tau: Tau, cfg: SeriesConfig = SeriesConfig()) -> float:
    """S(tau) = sum_{n>=1} log|1 - q^2n|."""
    _require_series_domain(tau)
    q2 = math.exp(-2 * math.pi * tau.im)
    # |log|1 - a|| <= |a| / (1 - |a|)
    log_const = math.log(max(2.0, 1.0 / (1.0 - q2))) - math.log1p(-q2)
    n_terms = _geometric_cutoff(tau.im, log_const, cfg, "sum_log_abs_one_minus_q2n")
    logger.debug("S(tau): tau=%r N=%d", tau.value, n_terms)

    n = np.arange(1, n_terms + 1)
    a = np.exp(2j * np.pi * n * tau.value)
    # log|1 - a| = log1p(-2 Re a + |a|^2) / 2
    arg = -2 * a.real + a.real * a.real + a.imag * a.imag
    if np.any(arg <= -1.0):
        raise DomainError(f"fator 1 - q^2n nulo em precisão de trabalho (tau={tau.value!r})")
    return float(np.sum(0.5 * np.log1p(arg)))


def theta_norm(z, tau: Tau, cfg: SeriesConfig = SeriesConfig()):
    """||theta||(x+iy; tau) = (Im tau)^(1/4) exp(-pi y^2 / Im tau) |theta(x+iy; tau)|."""
    zz = np.asarray(z, dtype=complex)
    gauss = np.exp(-np.pi * zz.imag ** 2 / tau.im)
    out = tau.im ** 0.25 * gauss * np.abs(theta_series(zz, tau, cfg))
    return float(out) if np.ndim(out) == 0 else out


def eta_norm(tau: Tau, cfg: SeriesConfig = SeriesConfig()) -> float:
    return tau.im ** 0.25 * abs(eta(tau, cfg))
