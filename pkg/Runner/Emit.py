from pathlib import Path
from typing import List, Optional, Sequence, Union

import orjson
import pandas as pd

from Common.CEnum import REPORT_FORMAT
from Common.IllusionException import CIllusionException, ErrCode
from Common.func_util import fmt_value

JSON_OPTION = orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def write_json(obj, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(orjson.dumps(obj, option=JSON_OPTION))
    except OSError as e:
        raise CIllusionException(f"cannot write {path}: {e}", ErrCode.IO_ERROR) from e
    return path


def emit_report(records: List[dict], fmt: REPORT_FORMAT, path: Union[str, Path], columns: Optional[Sequence[str]] = None) -> Path:
    """
    csv: one row per record, columns in `columns` order (default: keys of the first record)
    json: list of records
    floats keep 12 significant digits, rationals become "num/den"
    """
    if not records:
        raise CIllusionException(f"no records to write to {path}", ErrCode.EMPTY_RECORDS)
    if columns is None:
        columns = list(records[0].keys())
    rows = [{c: fmt_value(rec.get(c)) for c in columns} for rec in records]
    path = Path(path)
    if fmt == "json":
        return write_json(rows, path)
    elif fmt != "csv":
        raise CIllusionException(f"unknown report format {fmt}", ErrCode.PARA_ERROR)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        pd.DataFrame(rows, columns=list(columns)).to_csv(path, index=False, float_format="%.12g", lineterminator="\n")
    except OSError as e:
        raise CIllusionException(f"cannot write {path}: {e}", ErrCode.IO_ERROR) from e
    return path
