import logging
import math
from dataclasses import dataclass

import numpy as np

from utils.config import SeriesConfig
from utils.errors import CoincidentPointsError, DomainError
from utils.specfun import Tau, eta_norm, half_period, sum_log_abs_one_minus_q2n, theta_norm

logger = logging.getLogger(__name__)

# dist_omega abaixo disso conta como o mesmo ponto do toro
COINCIDENCE_EPS = 1e-12

# busca de translações m + n tau, m, n em {-2..2}
_LATTICE_SEARCH = np.arange(-2, 3)


def lattice_coords(z: complex, tau: Tau) -> tuple:
    """Coordenadas reais (a, b) com z = a + b tau."""
    b = z.imag / tau.im
    a = z.real - b * tau.re
    return a, b


def canonical_rep(z: complex, tau: Tau) -> complex:
    """Representante de z na célula fundamental {a + b tau : a, b em [0, 1)}."""
    a, b = lattice_coords(complex(z), tau)
    a, b = a % 1.0, b % 1.0
    # -1e-17 % 1.0 == 1.0 em ponto flutuante
    if a >= 1.0:
        a = 0.0
    if b >= 1.0:
        b = 0.0
    return a + b * tau.value


def _reduce_difference(d: complex, tau: Tau) -> complex:
    # tira o vetor de rede mais próximo pelas coordenadas da base
    a, b = lattice_coords(d, tau)
    return d - round(a) - round(b) * tau.value


@dataclass(frozen=True)
class TorusPoint:
    """Ponto de X_tau dado por um representante z."""

    z: complex
    tau: Tau

    def translated(self, m: int = 0, n: int = 0) -> "TorusPoint":
        return TorusPoint(self.z + m + n * self.tau.value, self.tau)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusPoint) or other.tau != self.tau:
            return NotImplemented
        return dist_omega(self, other) <= COINCIDENCE_EPS

    def __hash__(self):
        # igualdade é módulo rede; só tau entra no hash
        return hash(self.tau)


@dataclass(frozen=True)
class RatioComponents:
    """F(tau) e suas quatro parcelas."""

    f: float
    log_im_term: float
    const_term: float
    linear_term: float
    qsum_term: float

    def as_dict(self) -> dict:
        return {
            "F": self.f,
            "log_im_term": self.log_im_term,
            "const_term": self.const_term,
            "linear_term": self.linear_term,
            "qsum_term": self.qsum_term,
        }


def _same_lattice(p: TorusPoint, q: TorusPoint) -> Tau:
    if p.tau != q.tau:
        raise DomainError(f"pontos em toros diferentes: {p.tau} vs {q.tau}")
    return p.tau


def dist_omega(p: TorusPoint, q: TorusPoint) -> float:
    """Distância geodésica plana na métrica de área 1, omega = dz dz̄ / Im tau."""
    tau = _same_lattice(p, q)
    d = _reduce_difference(complex(p.z) - complex(q.z), tau)
    m, n = np.meshgrid(_LATTICE_SEARCH, _LATTICE_SEARCH)
    candidates = np.abs(d + m + n * tau.value)
    return float(candidates.min()) / math.sqrt(tau.im)


def green_function(p: TorusPoint, q: TorusPoint, cfg: SeriesConfig = SeriesConfig()) -> float:
    """g(z, w) = log ||theta||(z - w + (1+tau)/2; tau) / ||eta||(tau)."""
    tau = _same_lattice(p, q)
    if dist_omega(p, q) <= COINCIDENCE_EPS:
        raise CoincidentPointsError(f"g(w, w) = -inf: pontos coincidentes em X_tau (z={p.z!r}, w={q.z!r})")

    d = _reduce_difference(complex(p.z) - complex(q.z), tau)
    return math.log(theta_norm(d + half_period(tau), tau, cfg) / eta_norm(tau, cfg))


def green_grid(z, tau: Tau, cfg: SeriesConfig = SeriesConfig()):
    """g(z, 0) vetorizado para um array de z já reduzidos e longe de 0."""
    return np.log(theta_norm(np.asarray(z, dtype=complex) + half_period(tau), tau, cfg) / eta_norm(tau, cfg))


def capacity(tau: Tau, cfg: SeriesConfig = SeriesConfig()) -> float:
    """
    Capacidade logarítmica modificada; não depende de z (invariância por translação):
    c = sqrt(Im tau) * 2 pi * exp(-(pi/6) Im tau) * |prod (1 - q^2n)|^2
    """
    s = sum_log_abs_one_minus_q2n(tau, cfg)
    return math.sqrt(tau.im) * 2 * math.pi * math.exp(-(math.pi / 6) * tau.im + 2 * s)


def bergman_density(tau: Tau) -> float:
    """Coeficiente de K = (1/Im tau) dz ^ dz̄."""
    return 1.0 / tau.im


def f_ratio(tau: Tau, cfg: SeriesConfig = SeriesConfig()) -> RatioComponents:
    """F(tau) = log(pi K / c^2) = -2 log Im tau - log 4 pi + (pi/3) Im tau - 4 S(tau)."""
    log_im_term = -2 * math.log(tau.im)
    const_term = -math.log(4 * math.pi)
    linear_term = (math.pi / 3) * tau.im
    qsum_term = -4 * sum_log_abs_one_minus_q2n(tau, cfg)
    return RatioComponents(
        f=log_im_term + const_term + linear_term + qsum_term,
        log_im_term=log_im_term,
        const_term=const_term,
        linear_term=linear_term,
        qsum_term=qsum_term,
    )
