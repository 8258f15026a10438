import sys

from app.options import CliConfig
from utils.formatting import key_value_lines, to_json
from utils.optimize import parity_min
from utils.specfun import IM_FLOOR


def run_parity(args, cfg: CliConfig) -> int:
    result = parity_min(args.x, args.y, args.K, args.M, args.N, cfg.series)
    if result.clamped:
        print(f"aviso: linha Im = 0 da malha levada ao piso Im = {IM_FLOOR:g}", file=sys.stderr)

    out = {"f": result.f, "a": result.a, "b": result.b}
    cfg.emit(to_json(out) if cfg.format == "json" else key_value_lines(out))
    return 0
