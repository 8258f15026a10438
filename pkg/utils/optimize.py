import logging
import math
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Callable, Tuple

import numpy as np
import pandas as pd

from utils.config import SeriesConfig
from utils.errors import ConvergenceError, DomainError, SweepConvergenceError, SweepError, TorusError
from utils.specfun import IM_FLOOR, Tau
from utils.torus import f_ratio

logger = logging.getLogger(__name__)

DEFAULT_RE_RANGE = (-1.0, 1.0)
DEFAULT_IM_RANGE = (0.05, 4.0)
DEFAULT_COARSE = (100, 100)
DEFAULT_MAX_ITER = 2000

# coeficientes padrão do simplex
REFLECTION = 1.0
EXPANSION = 2.0
CONTRACTION = 0.5
SHRINK = 0.5


@dataclass
class FSurface:
    """Malha de F(tau): linhas indexadas por Im tau, colunas por Re tau."""

    re_grid: np.ndarray
    im_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.re_grid = np.asarray(self.re_grid, dtype=float)
        self.im_grid = np.asarray(self.im_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.im_grid), len(self.re_grid)):
            raise DomainError(
                f"values {self.values.shape} não bate com grades ({len(self.im_grid)}, {len(self.re_grid)})"
            )
        if not np.all(np.isfinite(self.values)):
            raise DomainError("FSurface com valores não finitos")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    def to_frame(self) -> pd.DataFrame:
        re, im = np.meshgrid(self.re_grid, self.im_grid)
        return pd.DataFrame({
            "re_tau": re.ravel(),
            "im_tau": im.ravel(),
            "F": self.values.ravel(),
        })


@dataclass
class MinimizeResult:
    tau_star: Tau
    f_min: float
    exp_f_min: float
    alpha: float
    grid_min: Tuple[Tau, float]
    refined: bool
    evaluations: int
    iterations: int = 0
    # perto do ótimo F quase não varia em Re tau
    flat_direction: str = "re"
    re_uncertainty: float = 0.0

    def as_dict(self) -> dict:
        grid_tau, grid_f = self.grid_min
        return {
            "f_min": self.f_min,
            "exp_f_min": self.exp_f_min,
            "alpha": self.alpha,
            "tau_re": self.tau_star.re,
            "tau_im": self.tau_star.im,
            "grid_f_min": grid_f,
            "grid_tau_re": grid_tau.re,
            "grid_tau_im": grid_tau.im,
            "refined": self.refined,
            "evaluations": self.evaluations,
        }


@dataclass
class ParityResult:
    """Saída de myplot(x, y, K, M, N): mínimo f em tau = a + b i."""

    f: float
    a: float
    b: float
    surface: FSurface
    clamped: bool = False


@dataclass
class _SimplexState:
    vertices: list = field(default_factory=list)
    iterations: int = 0


def _f_node(node: tuple) -> float:
    re_tau, im_tau, tol, max_terms = node
    try:
        return f_ratio(Tau(re_tau, im_tau), SeriesConfig(tol, max_terms)).f
    except ConvergenceError as exc:
        raise SweepConvergenceError(str(exc), re_tau, im_tau) from exc
    except TorusError as exc:
        raise SweepError(str(exc), re_tau, im_tau) from exc


def sweep_grid(re_grid, im_grid, cfg: SeriesConfig = SeriesConfig(), workers: int = 1) -> FSurface:
    """Avalia F em todos os nós; resultado row-major independe da ordem de avaliação."""
    re_grid = np.asarray(re_grid, dtype=float)
    im_grid = np.asarray(im_grid, dtype=float)
    nodes = [(float(x), float(y), cfg.tol, cfg.max_terms) for y in im_grid for x in re_grid]
    logger.info("sweep: %d x %d nós, workers=%d", len(im_grid), len(re_grid), workers)

    if workers > 1:
        # Pool.map preserva a ordem
        with Pool(processes=workers) as pool:
            flat = pool.map(_f_node, nodes, chunksize=max(1, len(nodes) // (4 * workers)))
    else:
        flat = [_f_node(node) for node in nodes]

    values = np.array(flat, dtype=float).reshape(len(im_grid), len(re_grid))
    return FSurface(re_grid, im_grid, values)


def _validate_ranges(re_range, im_range, rows: int, cols: int) -> None:
    a, b = re_range
    c, d = im_range
    if not (a < b):
        raise DomainError(f"intervalo de Re inválido: {a!r} >= {b!r}")
    if not (c < d):
        raise DomainError(f"intervalo de Im inválido: {c!r} >= {d!r}")
    if c < IM_FLOOR:
        raise DomainError(f"Im mínimo {c!r} abaixo do piso {IM_FLOOR} (Im tau > 0 e acima do piso)")
    if rows < 2 or cols < 2:
        raise DomainError(f"malha precisa de pelo menos 2x2 nós (recebido {rows}x{cols})")


def sweep(re_range, im_range, rows: int, cols: int,
          cfg: SeriesConfig = SeriesConfig(), workers: int = 1) -> FSurface:
    _validate_ranges(re_range, im_range, rows, cols)
    re_grid = np.linspace(re_range[0], re_range[1], cols)
    im_grid = np.linspace(im_range[0], im_range[1], rows)
    return sweep_grid(re_grid, im_grid, cfg, workers)


def grid_min(surface: FSurface, order: str = "C") -> Tuple[Tau, float]:
    """
    Nó de menor valor. order="C": empate resolvido por menor Im e depois menor Re.
    order="F": varredura por colunas, primeiro mínimo (como min(min(F)) do MATLAB).
    """
    flat = surface.values.ravel(order=order)
    if flat.size == 0:
        raise DomainError("superfície vazia")
    k = int(np.argmin(flat))
    i, j = np.unravel_index(k, surface.shape, order=order)
    return Tau(float(surface.re_grid[j]), float(surface.im_grid[i])), float(surface.values[i, j])


def nelder_mead(func: Callable, x_start, step, xtol: float = 1e-6, ftol: float = 1e-10,
                max_iter: int = DEFAULT_MAX_ITER):
    """
    Simplex de Nelder-Mead (reflexão, expansão, contração, encolhimento).
    Para quando diâmetro < xtol e espalhamento dos valores < ftol.
    Retorna (x, f, iterações); estoura ConvergenceError com o melhor ponto.
    """
    x_start = np.asarray(x_start, dtype=float)
    dim = len(x_start)
    state = _SimplexState()
    state.vertices.append([x_start, func(x_start)])
    for i in range(dim):
        x = np.copy(x_start)
        x[i] = x[i] + step[i]
        state.vertices.append([x, func(x)])

    res = state.vertices
    while True:
        # ordenação estável: empate mantém o vértice mais antigo na frente
        res.sort(key=lambda v: v[1])
        points = np.array([v[0] for v in res])
        diameter = max(np.linalg.norm(p - q) for p in points for q in points)
        spread = res[-1][1] - res[0][1]
        if diameter < xtol and spread < ftol:
            return res[0][0], res[0][1], state.iterations

        if state.iterations >= max_iter:
            raise ConvergenceError(
                f"simplex não convergiu em {max_iter} iterações (diâmetro={diameter:.3g}, espalhamento={spread:.3g})",
                best=(res[0][0], res[0][1]),
            )
        state.iterations += 1

        # centróide sem o pior vértice
        x0 = np.mean(points[:-1], axis=0)

        xr = x0 + REFLECTION * (x0 - res[-1][0])
        rscore = func(xr)
        if res[0][1] <= rscore < res[-2][1]:
            res[-1] = [xr, rscore]
            continue

        if rscore < res[0][1]:
            xe = x0 + EXPANSION * (x0 - res[-1][0])
            escore = func(xe)
            res[-1] = [xe, escore] if escore < rscore else [xr, rscore]
            continue

        xc = x0 + CONTRACTION * (res[-1][0] - x0)
        cscore = func(xc)
        if cscore < res[-1][1]:
            res[-1] = [xc, cscore]
            continue

        x1 = res[0][0]
        res[1:] = [[x1 + SHRINK * (v[0] - x1), None] for v in res[1:]]
        for v in res[1:]:
            v[1] = func(v[0])


class _CountingObjective:
    def __init__(self, cfg: SeriesConfig):
        self.cfg = cfg
        self.evaluations = 0
        self.best = None

    def __call__(self, x) -> float:
        self.evaluations += 1
        re_tau, im_tau = float(x[0]), float(x[1])
        # restrição Im >= IM_FLOOR como barreira
        if not (im_tau >= IM_FLOOR):
            return math.inf
        f = f_ratio(Tau(re_tau, im_tau), self.cfg).f
        if self.best is None or f < self.best[1]:
            self.best = (np.array([re_tau, im_tau]), f)
        return f


def _grid_spacing(grid: np.ndarray) -> float:
    return float(grid[1] - grid[0]) if len(grid) > 1 else 0.0


def minimize(re_range=DEFAULT_RE_RANGE, im_range=DEFAULT_IM_RANGE, coarse=DEFAULT_COARSE,
             cfg: SeriesConfig = SeriesConfig(), refine: bool = True, workers: int = 1,
             max_iter: int = DEFAULT_MAX_ITER) -> MinimizeResult:
    rows, cols = coarse
    surface = sweep(re_range, im_range, rows, cols, cfg, workers)
    grid_tau, grid_f = grid_min(surface)
    evaluations = surface.values.size
    dx, dy = _grid_spacing(surface.re_grid), _grid_spacing(surface.im_grid)
    logger.info("grade: mínimo F=%.10g em tau=%r", grid_f, grid_tau.value)

    def _result(tau_star: Tau, f_min: float, refined: bool, evals: int, iterations: int) -> MinimizeResult:
        exp_f_min = math.exp(f_min)
        return MinimizeResult(
            tau_star=tau_star,
            f_min=f_min,
            exp_f_min=exp_f_min,
            alpha=1.0 / exp_f_min,
            grid_min=(grid_tau, grid_f),
            refined=refined,
            evaluations=evals,
            iterations=iterations,
            re_uncertainty=dx / 2,
        )

    if not refine:
        return _result(grid_tau, grid_f, False, evaluations, 0)

    objective = _CountingObjective(cfg)
    try:
        x, f_min, iterations = nelder_mead(objective, [grid_tau.re, grid_tau.im], step=(dx, dy), max_iter=max_iter)
    except ConvergenceError as exc:
        # falha da série dentro do simplex chega sem best
        if exc.best is None:
            exc.best = objective.best or (np.array([grid_tau.re, grid_tau.im]), grid_f)
        x, f_best = exc.best
        exc.best = _result(Tau(float(x[0]), float(x[1])), float(f_best), True,
                           evaluations + objective.evaluations, max_iter)
        raise

    logger.info("simplex: %d iterações, %d avaliações", iterations, objective.evaluations)
    return _result(Tau(float(x[0]), float(x[1])), float(f_min), True, evaluations + objective.evaluations, iterations)


def smooth_stationary_point() -> float:
    """Ponto estacionário de t -> -2 log t + (pi/3) t."""
    return 6 / math.pi


def golden_section(func: Callable[[float], float], a: float, b: float, tol: float = 1e-10,
                   max_iter: int = 500) -> Tuple[float, float]:
    """Busca da seção áurea em [a, b] para função unimodal."""
    inv_phi = (math.sqrt(5) - 1) / 2
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if abs(b - a) < tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = func(d)
    x = (a + b) / 2
    return x, func(x)


def f_ratio_terms(x: float, y: float, K: int) -> float:
    """Rotina MATLAB test(x, y, N): soma da q-série com K termos fixos, sem certificação."""
    k = np.arange(1, K + 1)
    q = np.exp(np.pi * (-y + x * 1j))
    s = np.log(np.abs(1 - q ** (2 * k)))
    return float(-2 * np.log(y) - np.log(4 * np.pi) + np.pi * y / 3 - 4 * np.sum(s))


def parity_min(x: float, y: float, K: int, M: int = 100, N: int = 100,
               cfg: SeriesConfig = SeriesConfig()) -> ParityResult:
    """
    Emula myplot(x, y, K, M, N): malha linspace(-x, x, M) x linspace(0, y, N),
    com a linha Im = 0 levada ao piso IM_FLOOR, e primeiro mínimo por colunas.
    No MATLAB essa linha dava +Inf e nunca vencia.
    """
    if not (x > 0) or not (y > IM_FLOOR):
        raise DomainError(f"paridade exige x > 0 e y > {IM_FLOOR} (recebido x={x!r}, y={y!r})")
    if K < 1 or M < 2 or N < 2:
        raise DomainError(f"K >= 1, M >= 2 e N >= 2 (recebido K={K}, M={M}, N={N})")

    re_grid = np.linspace(-x, x, M)
    im_grid = np.linspace(0, y, N)
    low = im_grid < IM_FLOOR
    clamped = bool(np.any(low))
    im_grid = np.maximum(im_grid, IM_FLOOR)

    # no piso K termos fixos não convergem (precisa de ~5000); linha clampada usa a série certificada
    values = np.array([
        [f_ratio(Tau(float(xx), float(yy)), cfg).f if is_low else f_ratio_terms(xx, yy, K) for xx in re_grid]
        for yy, is_low in zip(im_grid, low)
    ])
    surface = FSurface(re_grid, im_grid, values)
    tau, f = grid_min(surface, order="F")
    return ParityResult(f=f, a=tau.re, b=tau.im, surface=surface, clamped=clamped)


def refine_im_only(re_tau: float, im_range=(1.5, 2.5), cfg: SeriesConfig = SeriesConfig(),
                   tol: float = 1e-10) -> Tuple[float, float]:
    """Oráculo 1-D: seção áurea em t -> F(re_tau + i t)."""
    return golden_section(lambda t: f_ratio(Tau(re_tau, t), cfg).f, im_range[0], im_range[1], tol)
