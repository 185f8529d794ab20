"""Two-dimensional (x, t) fields and their CSV / SVG emitters."""

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Axis:
    start: float
    step: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("an axis needs at least 2 points")
        if not self.step > 0:
            raise ValueError("axis step must be positive")

    @classmethod
    def span(cls, start, stop, count):
        if not stop > start:
            raise ValueError(f"degenerate range [{start}, {stop}]")
        return cls(float(start), (stop - start) / (count - 1), int(count))

    @property
    def values(self):
        return self.start + self.step * np.arange(self.count)


@dataclass(frozen=True)
class Field2D:
    """Complex samples ``values[i, j] = f(x_i, t_j)`` with a mask for singular cells."""

    x_axis: Axis
    t_axis: Axis
    values: np.ndarray
    mask: np.ndarray

    def __post_init__(self):
        shape = (self.x_axis.count, self.t_axis.count)
        values = np.asarray(self.values, dtype=complex)
        mask = np.asarray(self.mask, dtype=bool) | ~np.isfinite(values)
        if values.shape != shape or mask.shape != shape:
            raise ValueError(f"field arrays must have shape {shape}")
        values = np.where(mask, 0.0, values)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def evaluate(cls, func, x_axis, t_axis):
        """Evaluate a vectorised ``func(x, t)`` on the grid; NaN cells are masked."""
        X, T = np.meshgrid(x_axis.values, t_axis.values, indexing="ij")
        vals = np.asarray(func(X, T), dtype=complex)
        return cls(x_axis, t_axis, vals, ~np.isfinite(vals))

    def masked_values(self):
        return np.ma.masked_array(self.values, self.mask)


def worker_count():
    """Worker pool size from ``FRACWAVE_THREADS`` (default 1)."""
    raw = os.environ.get("FRACWAVE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def map_chunks(func, arr, workers=None):
    """Apply a vectorised ``func`` to chunks of a 1-D array, optionally threaded."""
    workers = worker_count() if workers is None else workers
    arr = np.asarray(arr)
    if workers <= 1 or arr.size < 2 * workers:
        return func(arr)
    chunks = np.array_split(arr, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(func, chunks))
    return np.concatenate(parts)


def write_csv(field, path=None):
    """Write ``x,t,re,im,masked`` rows (x-major); returns text when ``path`` is None."""
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "t", "re", "im", "masked"])
    xs = field.x_axis.values
    ts = field.t_axis.values
    for i, xv in enumerate(xs):
        for j, tv in enumerate(ts):
            v = field.values[i, j]
            m = bool(field.mask[i, j])
            writer.writerow(
                [
                    f"{float(xv):.17g}",
                    f"{float(tv):.17g}",
                    "nan" if m else f"{v.real:.17g}",
                    "nan" if m else f"{v.imag:.17g}",
                    int(m),
                ]
            )
    text = buf.getvalue()
    if path is None:
        return text
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return None


def read_csv(path):
    """Read a field CSV back; axes are recovered from the distinct x and t values."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    xs = np.unique([float(r["x"]) for r in rows])
    ts = np.unique([float(r["t"]) for r in rows])
    values = np.zeros((xs.size, ts.size), dtype=complex)
    mask = np.zeros(values.shape, dtype=bool)
    for k, r in enumerate(rows):
        i, j = divmod(k, ts.size)
        if int(r["masked"]):
            mask[i, j] = True
        else:
            values[i, j] = complex(float(r["re"]), float(r["im"]))
    x_axis = Axis(xs[0], (xs[-1] - xs[0]) / (xs.size - 1), xs.size)
    t_axis = Axis(ts[0], (ts[-1] - ts[0]) / (ts.size - 1), ts.size)
    return Field2D(x_axis, t_axis, values, mask)


# viridis anchors
_PALETTE = np.array(
    [
        [0x44, 0x01, 0x54],
        [0x3B, 0x52, 0x8B],
        [0x21, 0x91, 0x8C],
        [0x5E, 0xC9, 0x62],
        [0xFD, 0xE7, 0x25],
    ],
    dtype=float,
)


def _colors(levels):
    pos = levels * (len(_PALETTE) - 1)
    lo = np.clip(np.floor(pos).astype(int), 0, len(_PALETTE) - 2)
    frac = (pos - lo)[..., None]
    rgb = _PALETTE[lo] * (1 - frac) + _PALETTE[lo + 1] * frac
    return np.rint(rgb).astype(int)


def write_svg(field, path=None, cell=2, title=None):
    """Heatmap of ``Re f``: x to the right, t upward, masked cells left transparent.

    Colours map ``[min Re f, max Re f]`` linearly onto a viridis ramp.  The
    output depends only on the field, so identical fields give identical bytes.
    """
    nx, nt = field.values.shape
    re = field.values.real
    live = ~field.mask
    width, height = nx * cell, nt * cell
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" shape-rendering="crispEdges">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    if np.any(live):
        lo, hi = float(re[live].min()), float(re[live].max())
        span = hi - lo
        levels = (re - lo) / span if span > 0 else np.full(re.shape, 0.5)
        rgb = _colors(np.clip(levels, 0.0, 1.0))
        out.append(f"<desc>Re f range [{lo:.6g}, {hi:.6g}]</desc>")
        for j in range(nt):
            y = (nt - 1 - j) * cell
            for i in range(nx):
                if not live[i, j]:
                    continue
                r, g, b = rgb[i, j]
                out.append(
                    f'<rect x="{i * cell}" y="{y}" width="{cell}" height="{cell}" '
                    f'fill="#{r:02x}{g:02x}{b:02x}"/>'
                )
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is None:
        return text
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return None
