"""Grid sampling of a signomial's sign over a box in log coordinates.

This is evidence, not proof: cells are labelled by the sign at their centre
and grouped into face-connected components.  Components touching the box
boundary may merge with (or split from) others outside the window.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .signomial import Signomial

__all__ = [
    "ComponentCount",
    "GridLabeling",
    "LogBox",
    "OracleDimensionError",
    "StabilityResult",
    "count_components",
    "grid_labeling",
    "stability_check",
    "write_csv",
    "write_ppm",
]

MAX_DIM = 3
SIGN_BAND = 1e-12
_LOG_MAX = 709.0

NEGATIVE, ZERO, POSITIVE, INVALID = -1, 0, 1, 2


class OracleDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class LogBox:
    """Axis-aligned box ``lo[i] <= log x_i <= hi[i]`` split into cells."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]
    resolution: tuple[int, ...]

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        res = self.resolution
        res = tuple(int(r) for r in (res if np.ndim(res) else [res] * len(lo)))
        if not (len(lo) == len(hi) == len(res)) or not lo:
            raise ValueError("lo, hi and resolution must have one entry per axis")
        if any(not a < b for a, b in zip(lo, hi)):
            raise ValueError("each axis needs lo < hi")
        if any(r < 2 for r in res):
            raise ValueError("resolution must be at least 2")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "resolution", res)

    @classmethod
    def cube(cls, lo: float, hi: float, n: int, resolution: int) -> "LogBox":
        return cls((lo,) * n, (hi,) * n, (resolution,) * n)

    @property
    def n(self) -> int:
        return len(self.lo)

    def with_resolution(self, resolution: int) -> "LogBox":
        return LogBox(self.lo, self.hi, (resolution,) * self.n)

    def axes(self) -> list[np.ndarray]:
        """Cell centres along each axis, in log coordinates."""
        out = []
        for a, b, r in zip(self.lo, self.hi, self.resolution):
            h = (b - a) / r
            out.append(a + h * (np.arange(r) + 0.5))
        return out


@dataclass(frozen=True)
class GridLabeling:
    box: LogBox
    signs: np.ndarray  # int8 raster: -1, 0 (dead band), +1, 2 (overflow)
    negative_labels: np.ndarray  # 0 = not negative, else component id
    positive_labels: np.ndarray
    negative_touches: tuple[bool, ...]  # per component id - 1
    positive_touches: tuple[bool, ...]


@dataclass(frozen=True)
class ComponentCount:
    count: int
    boundary: tuple[bool, ...]

    @property
    def touches_boundary(self) -> bool:
        return any(self.boundary)


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    count: int | None
    counts: tuple[int, ...]
    resolutions: tuple[int, ...]
    boundary: tuple[bool, ...]

    def verdict(self) -> str:
        return "stable" if self.stable else "unstable"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SIGNCERT_THREADS", "")))
    except ValueError:
        return min(8, os.cpu_count() or 1)


def _sign_rows(f: Signomial, logs: np.ndarray, band: float) -> np.ndarray:
    expo = logs @ f.exponents.T  # (cells, terms)
    over = np.any(expo > _LOG_MAX, axis=1)
    terms = np.exp(np.minimum(expo, _LOG_MAX)) * f.coefficients
    val = terms.sum(axis=1)
    scale = np.abs(terms).max(axis=1)
    out = np.where(val > band * scale, POSITIVE, np.where(val < -band * scale, NEGATIVE, ZERO))
    out[over | ~np.isfinite(val)] = INVALID
    return out.astype(np.int8)


def _boundary_mask(shape) -> np.ndarray:
    mask = np.zeros(shape, dtype=bool)
    for ax in range(len(shape)):
        idx = [slice(None)] * len(shape)
        idx[ax] = 0
        mask[tuple(idx)] = True
        idx[ax] = -1
        mask[tuple(idx)] = True
    return mask


def _label(region: np.ndarray, edge: np.ndarray) -> tuple[np.ndarray, tuple[bool, ...]]:
    structure = ndimage.generate_binary_structure(region.ndim, 1)  # face neighbours only
    labels, k = ndimage.label(region, structure=structure)
    touched = np.zeros(k + 1, dtype=bool)
    touched[np.unique(labels[edge])] = True
    return labels, tuple(bool(t) for t in touched[1:])


def grid_labeling(f: Signomial, box: LogBox, band: float = SIGN_BAND, chunk: int = 65536) -> GridLabeling:
    """Sample the sign of ``f`` at cell centres and label the sign regions."""
    if f.n != box.n:
        raise ValueError(f"box has {box.n} axes, signomial has {f.n} variables")
    if f.n > MAX_DIM:
        raise OracleDimensionError(f"grid oracle supports n <= {MAX_DIM}, got {f.n}")
    shape = box.resolution
    mesh = np.meshgrid(*box.axes(), indexing="ij")
    logs = np.stack([m.ravel() for m in mesh], axis=1)
    if len(f) == 0:
        signs = np.zeros(shape, dtype=np.int8)
    else:
        chunks = [logs[i : i + chunk] for i in range(0, logs.shape[0], chunk)]
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            parts = list(pool.map(lambda c: _sign_rows(f, c, band), chunks))
        signs = np.concatenate(parts).reshape(shape)
    edge = _boundary_mask(shape)
    neg, neg_touch = _label(signs == NEGATIVE, edge)
    pos, pos_touch = _label(signs == POSITIVE, edge)
    return GridLabeling(box, signs, neg, pos, neg_touch, pos_touch)


def count_components(g: GridLabeling, sign: str) -> ComponentCount:
    if sign == "negative":
        return ComponentCount(len(g.negative_touches), g.negative_touches)
    if sign == "positive":
        return ComponentCount(len(g.positive_touches), g.positive_touches)
    raise ValueError("sign must be 'negative' or 'positive'")


def stability_check(
    f: Signomial,
    box: LogBox,
    resolutions=(128, 256, 512),
    sign: str = "negative",
    band: float = SIGN_BAND,
) -> StabilityResult:
    """Count components at increasing resolutions.

    Stable iff the last two counts agree and the number of boundary-touching
    components did not grow between them.
    """
    resolutions = tuple(sorted(int(r) for r in resolutions))
    if len(resolutions) < 2:
        raise ValueError("need at least two resolutions")
    counts, flags = [], []
    for r in resolutions:
        c = count_components(grid_labeling(f, box.with_resolution(r), band), sign)
        counts.append(c.count)
        flags.append(c.boundary)
    stable = counts[-1] == counts[-2] and sum(flags[-1]) <= sum(flags[-2])
    return StabilityResult(stable, counts[-1] if stable else None, tuple(counts), resolutions, flags[-1])


# ------------------------------------------------------------------ rasters


def _as_2d(g: GridLabeling) -> np.ndarray:
    if g.signs.ndim == 1:
        return g.signs[None, :]
    if g.signs.ndim == 2:
        # rows run top to bottom, so put the second axis upward
        return g.signs.T[::-1]
    raise ValueError("rasters are only written for one or two variables")


def write_ppm(g: GridLabeling, path) -> None:
    """Binary PPM: negative blue, positive red, dead band white, overflow black."""
    img = _as_2d(g)
    palette = np.zeros((4, 3), dtype=np.uint8)
    palette[NEGATIVE + 1] = (40, 80, 220)
    palette[ZERO + 1] = (255, 255, 255)
    palette[POSITIVE + 1] = (220, 50, 40)
    palette[3] = (0, 0, 0)
    rgb = palette[np.where(img == INVALID, 3, img + 1)]
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode())
        fh.write(rgb.tobytes())


def write_csv(g: GridLabeling, path) -> None:
    """One row per cell: log coordinates then the sign code."""
    mesh = np.meshgrid(*g.box.axes(), indexing="ij")
    cols = [m.ravel() for m in mesh] + [g.signs.ravel().astype(float)]
    header = ",".join([f"log_x{i + 1}" for i in range(g.box.n)] + ["sign"])
    np.savetxt(path, np.stack(cols, axis=1), delimiter=",", header=header, comments="", fmt="%.10g")
