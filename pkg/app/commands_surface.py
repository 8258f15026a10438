import logging

from app.options import CliConfig
from utils.formatting import surface_csv, to_json
from utils.optimize import sweep

logger = logging.getLogger(__name__)


def run_surface(args, cfg: CliConfig) -> int:
    surface = sweep(args.re, args.im, args.rows, args.cols, cfg.series, cfg.workers)

    if cfg.format == "json":
        text = to_json(surface.to_frame().to_dict(orient="records"))
    else:
        text = surface_csv(surface)

    cfg.emit(text)
    if cfg.output_path:
        logger.info("superfície %dx%d gravada em %s", args.rows, args.cols, cfg.output_path)
    return 0
