import json
import math
from pathlib import Path
from typing import Any, TextIO

SIGNIFICANT_DIGITS: int = 12


def round_sig(value: float, digits: int = SIGNIFICANT_DIGITS) -> float | None:
    if value is None:
        return None
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return None
    return float(f"{value:.{digits}g}")


def to_jsonable(obj: Any) -> Any:
    """
        Recursively converts floats (and numpy scalars/arrays) to 12-significant-digit
        JSON values; NaN and infinities become null.
    """
    if hasattr(obj, "tolist"):
        obj = obj.tolist()
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return to_jsonable(obj.as_dict())
    return str(obj)


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, allow_nan=False)


def write_text(text: str, path: str | Path | None, stream: TextIO) -> None:
    if path is None:
        stream.write(text)
        if not text.endswith("\n"):
            stream.write("\n")
        return
    path = Path(path)
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as e:
        raise OSError(f"Unable to write {path}: {e.strerror or e}") from e
