import argparse
import logging
import sys
from typing import List, Optional, Sequence

from app.commands_check import run_check
from app.commands_eval import run_eval
from app.commands_green import run_green
from app.commands_minimize import run_minimize
from app.commands_parity import run_parity
from app.commands_surface import run_surface
from app.options import FORMATS, CliConfig
from utils.errors import ConvergenceError, TorusError
from utils.optimize import DEFAULT_MAX_ITER
from utils.verify import SUITES

logger = logging.getLogger(__name__)

# flags que recebem "A,B"; valores como "-1,1" confundem o argparse
_PAIR_FLAGS = {"--tau", "--z", "--w", "--re", "--im"}


def _pair(text: str) -> tuple:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"esperado 'A,B', recebido {text!r}")
    return a, b


def _grid(text: str) -> tuple:
    try:
        rows, cols = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"esperado 'RxC', recebido {text!r}")
    return rows, cols


def _glue_pair_values(argv: Sequence[str]) -> List[str]:
    out: List[str] = []
    it = iter(argv)
    for token in it:
        if token in _PAIR_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerância de truncamento (padrão 1e-14 ou SUITA_TORUS_TOL)")
    common.add_argument("--max-terms", type=int, default=None, help="teto de termos por série (padrão 100000)")
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--json", action="store_true", help="atalho para --format json")
    common.add_argument("--out", default=None, help="arquivo de saída (padrão: stdout)")
    common.add_argument("--workers", type=int, default=None, help="processos na varredura (padrão 1)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="suita-torus",
        description="Função de Green de Arakelov, capacidade e núcleo de Bergman no toro X_tau; minimização de F(tau).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="F(tau), capacidade e densidade de Bergman")
    p.add_argument("--tau", type=_pair, required=True, metavar="RE,IM")
    p.set_defaults(handler=run_eval)

    p = sub.add_parser("surface", parents=[common], help="malha de F em CSV")
    p.add_argument("--re", type=_pair, required=True, metavar="A,B")
    p.add_argument("--im", type=_pair, required=True, metavar="C,D")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.set_defaults(handler=run_surface)

    p = sub.add_parser("minimize", parents=[common], help="mínimo de F e a constante alpha")
    p.add_argument("--re", type=_pair, default=(-1.0, 1.0), metavar="A,B")
    p.add_argument("--im", type=_pair, default=(0.05, 4.0), metavar="C,D")
    p.add_argument("--grid", type=_grid, default=(100, 100), metavar="RxC")
    p.add_argument("--refine", action="store_true")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.set_defaults(handler=run_minimize)

    p = sub.add_parser("green", parents=[common], help="g(z, w) no toro")
    p.add_argument("--tau", type=_pair, required=True, metavar="RE,IM")
    p.add_argument("--z", type=_pair, required=True, metavar="RE,IM")
    p.add_argument("--w", type=_pair, required=True, metavar="RE,IM")
    p.set_defaults(handler=run_green)

    p = sub.add_parser("check", parents=[common], help="bateria de verificação")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--strict-mean-zero", action="store_true", help="falha (em vez de avisar) na média nula")
    p.set_defaults(handler=run_check)

    p = sub.add_parser("parity", parents=[common], help="emula myplot(x, y, K, M, N)")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--M", type=int, default=100)
    p.add_argument("--N", type=int, default=100)
    p.set_defaults(handler=run_parity)

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """0 sucesso; 1 falha de verificação ou não convergência; 2 uso/domínio."""
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_pair_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)

    _configure_logging(args.verbose)
    try:
        cfg = CliConfig.from_args(args)
        return args.handler(args, cfg)
    except ConvergenceError as exc:
        print(f"erro: {exc}", file=sys.stderr)
        return 1
    except TorusError as exc:
        print(f"erro: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
