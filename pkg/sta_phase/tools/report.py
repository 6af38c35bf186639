r"""
Serialization of :class:`~sta_phase.algorithms.phase.PhaseReport`.

CSV reports start with three comment lines, ``# scenario``, ``# finals`` and
``# meta``, each followed by a JSON object, and then the rate series with the
columns of :data:`~sta_phase.algorithms.phase.SERIES_COLUMNS`. Rates that were
not requested are empty cells. JSON reports hold the same four blocks as one
object, with ``null`` for missing rates. Floats carry 17 significant digits in
CSV, so a report is byte-identical for identical inputs.
"""

import json
import logging
import math
import os

import pandas as pd

from .. import _settings

logger = logging.getLogger(__name__)

FORMATS = ('csv', 'json')
_BLOCKS = ('scenario', 'finals', 'meta')


def _clean(obj):
    # NaN -> None, numpy scalars -> python
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, 'item'):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _blocks(report):
    return {'scenario': _clean(report.scenario),
            'finals': _clean(report.finals),
            'meta': _clean(report.meta)}


def report_to_csv(report):
    """CSV text of a report."""
    header = ''.join('# %s %s\n' % (name, json.dumps(block, sort_keys=True))
                     for name, block in _blocks(report).items())
    body = report.series.to_csv(index=False, float_format='%.17g', na_rep='',
                                lineterminator='\n')
    return header + body


def report_to_json(report):
    """JSON text of a report."""
    out = _blocks(report)
    out['series'] = {col: _clean(report.series[col].tolist())
                     for col in report.series.columns}
    return json.dumps(out, indent=2, sort_keys=True, allow_nan=False) + '\n'


def resolve_output_path(path):
    """
    Place a bare file name in :func:`sta_phase._settings.output_dir`.

    Paths with a directory component are returned unchanged.
    """

    if os.path.dirname(path):
        return path
    return os.path.join(_settings.output_dir(), path)


def write_report(report, path, fmt='csv'):
    """
    Write a report to disk.

    Args:
        report: :class:`~sta_phase.algorithms.phase.PhaseReport`
        path (str): Output file; bare names go to the default output directory
        fmt (str): ``'csv'`` or ``'json'``

    Returns:
        str: The path written
    """

    if fmt not in FORMATS:
        raise ValueError('format must be one of %s, got %r' % (FORMATS, fmt))
    text = report_to_csv(report) if fmt == 'csv' else report_to_json(report)
    path = resolve_output_path(path)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.info('wrote %s report to %s', fmt, path)
    return path


def read_csv_report(path):
    """
    Read a CSV report back.

    Returns:
        ``(series, blocks)``: :class:`pandas.DataFrame` of the rate series and
        a dict with the ``scenario``, ``finals`` and ``meta`` blocks
    """

    blocks = {}
    with open(path, encoding='utf-8') as f:
        for line in f:
            if not line.startswith('# '):
                break
            name, _, payload = line[2:].partition(' ')
            if name in _BLOCKS:
                blocks[name] = json.loads(payload)
    series = pd.read_csv(path, comment='#')
    return series, blocks
