import sys

from app.options import CliConfig
from utils.errors import ConvergenceError
from utils.formatting import key_value_lines, to_json
from utils.optimize import minimize, smooth_stationary_point


def _render(result, cfg: CliConfig) -> str:
    out = result.as_dict()
    if cfg.format == "json":
        return to_json(out)
    out["flat_direction"] = result.flat_direction
    out["re_uncertainty"] = result.re_uncertainty
    out["smooth_stationary_im"] = smooth_stationary_point()
    return key_value_lines(out)


def run_minimize(args, cfg: CliConfig) -> int:
    try:
        result = minimize(args.re, args.im, args.grid, cfg.series, refine=args.refine,
                          workers=cfg.workers, max_iter=args.max_iter)
    except ConvergenceError as exc:
        print(f"erro: {exc}", file=sys.stderr)
        if exc.best is not None:
            print("melhor ponto até aqui:", file=sys.stderr)
            sys.stderr.write(_render(exc.best, cfg))
        return 1

    cfg.emit(_render(result, cfg))
    return 0
