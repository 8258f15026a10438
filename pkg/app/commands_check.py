from app.options import CliConfig
from utils.formatting import reports_json, reports_text
from utils.verify import run_suite, suite_passed


def run_check(args, cfg: CliConfig) -> int:
    reports = run_suite(args.suite, args.seed, cfg.series, strict_mean_zero=args.strict_mean_zero)
    cfg.emit(reports_json(reports) if cfg.format == "json" else reports_text(reports))
    return 0 if suite_passed(reports) else 1
