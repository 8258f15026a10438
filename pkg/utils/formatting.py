import json
import math
from typing import Sequence

import pandas as pd

# Saída determinística: 10 algarismos significativos, chaves ordenadas
SIGNIFICANT_DIGITS = 10
FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return FLOAT_FORMAT % value
    return str(value)


def _rounded(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return float(FLOAT_FORMAT % obj)
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def to_json(obj) -> str:
    return json.dumps(_rounded(obj), sort_keys=True, indent=2) + "\n"


def key_value_lines(values: dict) -> str:
    return "".join(f"{k} = {fmt(v)}\n" for k, v in values.items())


def surface_csv(surface) -> str:
    # cabeçalho re_tau,im_tau,F; uma linha por nó, row-major em im e depois re
    return surface.to_frame().to_csv(index=False, lineterminator="\n", float_format=FLOAT_FORMAT)


def reports_frame(reports: Sequence) -> pd.DataFrame:
    return pd.DataFrame([r.as_dict() for r in reports],
                        columns=["name", "passed", "hard", "observed", "expected", "tolerance", "detail"])


def reports_text(reports: Sequence) -> str:
    df = reports_frame(reports)
    df["passed"] = df["passed"].map({True: "ok", False: "FALHOU"})
    df["hard"] = df["hard"].map({True: "hard", False: "warn"})
    for col in ("observed", "expected", "tolerance"):
        df[col] = df[col].map(fmt)
    return df.to_string(index=False) + "\n"


def reports_json(reports: Sequence) -> str:
    return to_json([r.as_dict() for r in reports])
