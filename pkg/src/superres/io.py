"""CSV reading and writing.

Every file starts with a ``# schema_version=1`` comment line followed by a
header row. Floats are written with ``repr`` so output is byte-stable and
round-trips exactly.
"""

import csv
import os

import numpy as np

from .errors import SampleFileError

__all__ = [
    "SCHEMA_VERSION",
    "read_samples",
    "write_samples",
    "write_table",
    "write_cells",
    "write_curve",
    "write_slopes",
    "write_bounds",
    "write_estimate",
    "write_metadata",
    "ensure_dir",
]

SCHEMA_VERSION = 1


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_table(path, header, rows):
    """Write a versioned CSV and return ``path``."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# schema_version={SCHEMA_VERSION}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    return path


def write_samples(path, y):
    y = np.asarray(y, dtype=complex)
    return write_table(path, ["k", "re", "im"], [(k, v.real, v.imag) for k, v in enumerate(y)])


def read_samples(path):
    """Read a ``k,re,im`` file; ``k`` must run 0, 1, 2, ... in order.

    Raises
    ------
    SampleFileError
        On an empty file, a bad header, non-numeric fields or out-of-order ``k``.
    """
    with open(path, newline="") as fh:
        lines = [(n, line) for n, line in enumerate(fh, start=1)
                 if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise SampleFileError("no samples in file")
    n0, first = lines[0]
    if [c.strip() for c in first.split(",")] != ["k", "re", "im"]:
        raise SampleFileError(f"expected header 'k,re,im', got {first.strip()!r}", n0)
    values = []
    for n, line in lines[1:]:
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise SampleFileError(f"expected 3 fields, got {len(parts)}", n)
        try:
            k = int(parts[0])
            re, im = float(parts[1]), float(parts[2])
        except ValueError:
            raise SampleFileError(f"non-numeric field in {line.strip()!r}", n) from None
        if k != len(values):
            raise SampleFileError(f"expected k={len(values)}, got k={k}", n)
        if not (np.isfinite(re) and np.isfinite(im)):
            raise SampleFileError("non-finite sample", n)
        values.append(complex(re, im))
    if not values:
        raise SampleFileError("header but no samples")
    return np.array(values)


def write_cells(path, result):
    rows = [(r.srf, r.sigma, r.phase_draw, r.mean_md, r.success_rate, r.failures)
            for r in result.records]
    return write_table(
        path, ["srf", "sigma", "phase_draw", "mean_md", "success_rate", "failures"], rows
    )


def write_curve(path, curve):
    return write_table(path, ["srf", "sigma_star", "status"],
                       [(p.srf, p.sigma_star, p.status) for p in curve])


def write_slopes(path, rows):
    """``rows`` are ``(label, estimator, slope, intercept, r2, q)`` tuples."""
    return write_table(path, ["label", "estimator", "slope", "intercept", "r2", "q"], rows)


def _params(context):
    return ";".join(f"{k}={_fmt(v)}" for k, v in sorted(context.items()))


def write_bounds(path, reports):
    rows = [(r.name, r.lhs, r.rhs, r.satisfied, _params(r.context)) for r in reports]
    return write_table(path, ["name", "lhs", "rhs", "satisfied", "parameters"], rows)


def write_estimate(path, result, md=None):
    """One row per atom: ``j, omega_hat, amp_re, amp_im, md``, sorted by ``omega_hat``."""
    x = result.amplitudes_estimate
    order = np.argsort(result.support_estimate)
    rows = []
    for j, i in enumerate(order):
        w = result.support_estimate[i]
        a = complex(x[i]) if x is not None else complex("nan")
        rows.append((j, float(w), a.real, a.imag, float("nan") if md is None else md))
    return write_table(path, ["j", "omega_hat", "amp_re", "amp_im", "md"], rows)


def write_metadata(path, metadata):
    return write_table(path, ["key", "value"], sorted(metadata.items()))


def ensure_dir(path):
    """Create ``path`` if needed; raises ``OSError`` when it is not writable."""
    os.makedirs(path, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise PermissionError(f"output directory {path!r} is not writable")
    return path
