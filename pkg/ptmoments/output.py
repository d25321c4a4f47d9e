#
#  ptmoments/output.py
#  PartialTransposeMoments
#
#  JSON run reports and CSV tables.
#
import logging
log = logging.getLogger(__name__)

import io
import json
import math
import numpy as np
import pandas as pd
from fractions import Fraction
from dataclasses import is_dataclass, fields
from natsort import natsorted

from . import __version__
from .utils import fraction_to_dict
from .permutations import CycleType, Permutation

def _key(k):
    if isinstance(k, CycleType):
        return '(' + ','.join(str(p) for p in k) + ')'
    if isinstance(k, Permutation):
        return str(list(k.images))
    return str(k)

def to_jsonable(obj):
    """ Convert results into plain JSON types; exact rationals become
    {"num": "...", "den": "..."} and non-finite floats become strings. """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return fraction_to_dict(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, Permutation):
        return list(obj.images)
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, 'asdict'):
        return to_jsonable(obj.asdict())
    return str(obj)

def run_record(command, parameters, seed, results, runtime_ms):
    return {'tool_version': __version__,
            'command': command,
            'parameters': to_jsonable(parameters),
            'seed': seed,
            'results': to_jsonable(results),
            'runtime_ms': runtime_ms}

def write_json(record, fh = None):
    """ Write a run record as JSON to `fh`, or return it as a string. """
    text = json.dumps(record, indent = 2) + '\n'
    if fh is None:
        return text
    fh.write(text)

def flatten(row, prefix = ''):
    """ Nested dicts become `outer_inner` columns. """
    out = {}
    for k, v in row.items():
        name = f'{prefix}{k}'
        if isinstance(v, dict):
            out.update(flatten(v, name + '_'))
        elif isinstance(v, list):
            out[name] = ' '.join(str(x) for x in v)
        else:
            out[name] = v
    return out

def rows_frame(rows, parameters = None):
    """ A DataFrame with one row per entry of `rows`, each prefixed by the
    run parameters. """
    params = flatten(to_jsonable(parameters or {}))
    data = [dict(params, **flatten(to_jsonable(r))) for r in rows]
    return pd.DataFrame(data)

def write_csv(rows, parameters = None, fh = None):
    df = rows_frame(rows, parameters)
    if fh is None:
        buf = io.StringIO()
        df.to_csv(buf, index = False)
        return buf.getvalue()
    df.to_csv(fh, index = False)

def table_rows(mapping, key_name, value_name):
    """ [{key_name: k, value_name: v}] in natural order of the keys. """
    items = natsorted(mapping.items(), key = lambda kv: _key(kv[0]))
    return [{key_name: _key(k), value_name: v} for k, v in items]

