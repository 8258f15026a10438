from app.options import CliConfig
from utils.formatting import key_value_lines, to_json
from utils.specfun import Tau
from utils.torus import TorusPoint, dist_omega, green_function


def run_green(args, cfg: CliConfig) -> int:
    tau = Tau(*args.tau)
    p = TorusPoint(complex(*args.z), tau)
    q = TorusPoint(complex(*args.w), tau)

    # pontos coincidentes: CoincidentPointsError sobe para a CLI (saída 2)
    out = {
        "g": green_function(p, q, cfg.series),
        "dist_omega": dist_omega(p, q),
    }
    cfg.emit(to_json(out) if cfg.format == "json" else key_value_lines(out))
    return 0
