"""Mode-field models: analytic cavity surrogates and imported grid maps.

Two concrete field models implement the same evaluation contract:

* :class:`AnalyticSurrogate` - a desk-scale stand-in for the fundamental
  mode of a photonic-crystal cavity: a cosine lobe whose sign changes at
  ``|x| = x0`` under a Gaussian envelope, linearly polarized.
* :class:`GridField` - a regular 2D or 3D grid of complex 3-vectors,
  e.g. a mode map exported from a full-wave solver, evaluated by
  multilinear interpolation.  Queries outside the grid raise instead of
  extrapolating; silent extrapolation would corrupt CDOS signs.

Grid-field file format (text, self-describing header)::

    dims nx ny [nz]
    origin x y [z]
    spacing dx dy [dz]
    components 3
    <one sample per line: Re Ex, Im Ex, Re Ey, Im Ey, Re Ez, Im Ez>

with x-fastest sample ordering and floats carried at full double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import (
    GridFileError,
    InvalidArgumentError,
    Orientation,
    OutOfDomainError,
    Position,
)

__all__ = [
    "AnalyticSurrogateParams",
    "AnalyticSurrogate",
    "GridField",
    "VectorFieldModel",
    "field_at",
    "projected_field",
    "projected_field_many",
    "load_grid_field",
    "save_grid_field",
]


@dataclass(frozen=True, slots=True)
class AnalyticSurrogateParams:
    """Parameters of the analytic surrogate mode profile.

    ``sign_change_half_width`` is the x at which the cosine lobe crosses
    zero; ``sigma_x``/``sigma_y`` are Gaussian envelope widths (nm).
    """

    sign_change_half_width: float
    sigma_x: float
    sigma_y: float
    polarization: Orientation
    amplitude: complex = 1.0 + 0.0j

    def __post_init__(self):
        for name, v in (
            ("sign_change_half_width", self.sign_change_half_width),
            ("sigma_x", self.sigma_x),
            ("sigma_y", self.sigma_y),
        ):
            if not (math.isfinite(v) and v > 0.0):
                raise InvalidArgumentError(f"{name} must be positive, got {v!r}")
        amp = complex(self.amplitude)
        if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
            raise InvalidArgumentError(f"amplitude must be finite, got {amp!r}")
        object.__setattr__(self, "amplitude", amp)


@dataclass(frozen=True, slots=True)
class AnalyticSurrogate:
    """Separable analytic mode profile along a fixed polarization axis.

    The field is ``amplitude * cos(pi*x/(2*x0)) * exp(-x^2/(2 sx^2) - y^2/(2 sy^2))``
    along the polarization axis; z is ignored (slab mid-plane picture).
    """

    params: AnalyticSurrogateParams

    def scalar_profile(self, x, y):
        p = self.params
        shape = np.cos(np.pi * np.asarray(x) / (2.0 * p.sign_change_half_width))
        envelope = np.exp(
            -np.asarray(x) ** 2 / (2.0 * p.sigma_x**2)
            - np.asarray(y) ** 2 / (2.0 * p.sigma_y**2)
        )
        return p.amplitude * shape * envelope

    def field_at(self, r: Position) -> np.ndarray:
        p = self.params
        value = p.amplitude * math.cos(
            math.pi * r.x / (2.0 * p.sign_change_half_width)
        ) * math.exp(-r.x * r.x / (2.0 * p.sigma_x**2) - r.y * r.y / (2.0 * p.sigma_y**2))
        return value * p.polarization.as_array().astype(complex)


class GridField:
    """Complex vector field sampled on a regular 2D or 3D grid.

    ``data`` has shape (nx, ny, 3) or (nx, ny, nz, 3) with complex entries;
    z is ignored for 2D grids (mid-plane maps).
    """

    __slots__ = ("data", "origin", "spacing")

    def __init__(self, data: np.ndarray, origin, spacing):
        data = np.asarray(data, dtype=complex)
        if data.ndim not in (3, 4) or data.shape[-1] != 3:
            raise InvalidArgumentError(
                "GridField data must have shape (nx, ny, 3) or (nx, ny, nz, 3)"
            )
        ndim = data.ndim - 1
        origin = tuple(float(v) for v in origin)
        spacing = tuple(float(v) for v in spacing)
        if len(origin) != ndim or len(spacing) != ndim:
            raise InvalidArgumentError(
                f"origin/spacing must have {ndim} entries for a {ndim}D grid"
            )
        if any(s <= 0.0 or not math.isfinite(s) for s in spacing):
            raise InvalidArgumentError("grid spacing must be positive and finite")
        if any(not math.isfinite(v) for v in origin):
            raise InvalidArgumentError("grid origin must be finite")
        if any(n < 2 for n in data.shape[:-1]):
            raise InvalidArgumentError("grids need at least 2 samples per axis")
        if not np.all(np.isfinite(data.view(float))):
            raise InvalidArgumentError("grid samples must be finite")
        self.data = data
        self.origin = origin
        self.spacing = spacing

    @property
    def ndim(self) -> int:
        return self.data.ndim - 1

    @property
    def shape(self) -> tuple:
        return self.data.shape[:-1]

    def _fractional_index(self, coord: float, axis: int) -> tuple[int, float]:
        t = (coord - self.origin[axis]) / self.spacing[axis]
        top = self.shape[axis] - 1
        if t < 0.0 or t > top:
            lo = self.origin[axis]
            hi = self.origin[axis] + top * self.spacing[axis]
            raise OutOfDomainError(
                f"coordinate {coord!r} outside grid axis {axis} range [{lo}, {hi}]"
            )
        i = min(int(math.floor(t)), top - 1)
        return i, t - i

    def field_at(self, r: Position) -> np.ndarray:
        coords = (r.x, r.y, r.z)[: self.ndim]
        idx_frac = [self._fractional_index(c, ax) for ax, c in enumerate(coords)]
        out = np.zeros(3, dtype=complex)
        # multilinear blend over the 2**ndim surrounding nodes
        for corner in range(1 << self.ndim):
            weight = 1.0
            index = []
            for ax, (i, f) in enumerate(idx_frac):
                if corner >> ax & 1:
                    weight *= f
                    index.append(i + 1)
                else:
                    weight *= 1.0 - f
                    index.append(i)
            if weight != 0.0:
                out += weight * self.data[tuple(index)]
        return out


VectorFieldModel = Union[AnalyticSurrogate, GridField]


def field_at(model: VectorFieldModel, r: Position) -> np.ndarray:
    """Evaluate a field model at a point; returns a complex 3-vector."""
    return model.field_at(r)


def projected_field(model: VectorFieldModel, r: Position, u: Orientation) -> complex:
    """Projection u . e(r) of the model field on a dipole orientation."""
    e = model.field_at(r)
    return complex(u.ux * e[0] + u.uy * e[1] + u.uz * e[2])


def projected_field_many(model: VectorFieldModel, positions: np.ndarray,
                         orientations: np.ndarray) -> np.ndarray:
    """Vectorized ``u_i . e(r_i)`` over M points; shape (M,) complex."""
    if isinstance(model, AnalyticSurrogate):
        profile = model.scalar_profile(positions[:, 0], positions[:, 1])
        pol = model.params.polarization.as_array()
        return profile * (orientations @ pol)
    out = np.empty(positions.shape[0], dtype=complex)
    for i in range(positions.shape[0]):
        e = model.field_at(Position(*positions[i]))
        out[i] = orientations[i, 0] * e[0] + orientations[i, 1] * e[1] + orientations[i, 2] * e[2]
    return out


def save_grid_field(field: GridField, path) -> None:
    """Write a grid field in the text format documented in this module."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("dims " + " ".join(str(n) for n in field.shape) + "\n")
        fh.write("origin " + " ".join(repr(v) for v in field.origin) + "\n")
        fh.write("spacing " + " ".join(repr(v) for v in field.spacing) + "\n")
        fh.write("components 3\n")
        # x-fastest ordering: iterate last axis slowest
        for rev_index in np.ndindex(*reversed(field.shape)):
            index = tuple(reversed(rev_index))
            e = field.data[index]
            fh.write(
                " ".join(repr(float(v)) for pair in ((c.real, c.imag) for c in e) for v in pair)
                + "\n"
            )


def load_grid_field(path) -> GridField:
    """Read a grid field written by :func:`save_grid_field` (lossless round trip)."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()

    def header(line_no: int, key: str, cast):
        if line_no >= len(lines):
            raise GridFileError(path, line_no + 1, f"missing `{key}` header line")
        parts = lines[line_no].split()
        if not parts or parts[0] != key:
            raise GridFileError(path, line_no + 1, f"expected `{key}` header, got {lines[line_no]!r}")
        try:
            values = [cast(tok) for tok in parts[1:]]
        except ValueError as exc:
            raise GridFileError(path, line_no + 1, f"bad `{key}` value: {exc}") from exc
        return values

    dims = header(0, "dims", int)
    if len(dims) not in (2, 3):
        raise GridFileError(path, 1, f"dims must list 2 or 3 axes, got {len(dims)}")
    origin = header(1, "origin", float)
    spacing = header(2, "spacing", float)
    comps = header(3, "components", int)
    if comps != [3]:
        raise GridFileError(path, 4, f"components must be 3, got {comps}")
    if len(origin) != len(dims) or len(spacing) != len(dims):
        raise GridFileError(path, 2, "origin/spacing axis count must match dims")

    count = 1
    for n in dims:
        count *= n
    body = lines[4:]
    if len(body) < count:
        raise GridFileError(path, len(lines), f"expected {count} sample lines, found {len(body)}")

    samples = np.empty((count, 3), dtype=complex)
    for row, line in enumerate(body[:count]):
        line_no = 5 + row
        toks = line.split()
        if len(toks) != 6:
            raise GridFileError(path, line_no, f"expected 6 reals per sample, got {len(toks)}")
        try:
            vals = [float(t) for t in toks]
        except ValueError as exc:
            raise GridFileError(path, line_no, f"bad float: {exc}") from exc
        if any(not math.isfinite(v) for v in vals):
            raise GridFileError(path, line_no, "non-finite sample")
        samples[row] = [complex(vals[0], vals[1]), complex(vals[2], vals[3]),
                        complex(vals[4], vals[5])]

    # samples are x-fastest: reshape with reversed dims then move axes back
    data = samples.reshape(tuple(reversed(dims)) + (3,))
    data = np.moveaxis(data, range(len(dims)), range(len(dims) - 1, -1, -1))
    return GridField(data, origin, spacing)
