import math

from app.options import CliConfig
from utils.formatting import key_value_lines, to_json
from utils.specfun import Tau
from utils.torus import bergman_density, capacity, f_ratio


def run_eval(args, cfg: CliConfig) -> int:
    tau = Tau(*args.tau)
    parts = f_ratio(tau, cfg.series)

    out = {
        "tau_re": tau.re,
        "tau_im": tau.im,
        **parts.as_dict(),
        # exp F = pi K / c^2
        "exp_F": math.exp(parts.f),
        "capacity": capacity(tau, cfg.series),
        "bergman_density": bergman_density(tau),
    }

    cfg.emit(to_json(out) if cfg.format == "json" else key_value_lines(out))
    return 0
