"""Shared geometric and spectral types plus free-space reference values.

Unit conventions used across the package:

* lengths are in nanometers,
* the internal frequency variable is the vacuum wavenumber
  ``k = 2*pi/wavelength`` in reciprocal nanometers (speed of light = 1),
* all public decay rates are dimensionless ratios of an emission rate to a
  reference rate, so no electromagnetic constants appear anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Wavenumber",
    "Position",
    "Orientation",
    "PolarizedPoint",
    "Spectrum",
    "free_space_ldos",
    "wavelength_to_k",
    "PurcellxError",
    "InvalidArgumentError",
    "OutOfDomainError",
    "DegenerateReferenceError",
    "UndefinedPhaseError",
    "GridFileError",
    "SweepPointError",
]

#: Vacuum wavenumber ``2*pi/wavelength`` in 1/nm.  Kept as a plain float;
#: operations validate positivity at their boundaries.
Wavenumber = float


class PurcellxError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(PurcellxError, ValueError):
    """An argument violates an operation's precondition."""


class OutOfDomainError(PurcellxError):
    """A field was queried outside the domain it is defined on."""


class DegenerateReferenceError(PurcellxError):
    """The reference double sum is non-positive or too small to divide by."""


class UndefinedPhaseError(PurcellxError):
    """Phase requested where the projected field is numerically zero."""


class GridFileError(PurcellxError):
    """A grid-field file could not be parsed."""

    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line


class SweepPointError(PurcellxError):
    """Failure at a single sweep grid point, wrapping the original error."""

    def __init__(self, index: int, grid_value: float, original: Exception):
        super().__init__(f"sweep point {index} (grid value {grid_value!r}): {original}")
        self.index = index
        self.grid_value = grid_value


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise InvalidArgumentError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True, slots=True)
class Position:
    """A point in space, coordinates in nanometers."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        _require_finite("Position coordinates", self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True, slots=True)
class Orientation:
    """A unit vector giving a transition-dipole direction.

    Components must form a unit vector to within 1e-12; use
    :meth:`from_vector` to normalize an arbitrary nonzero vector.
    """

    ux: float
    uy: float
    uz: float

    def __post_init__(self):
        _require_finite("Orientation components", self.ux, self.uy, self.uz)
        norm = math.sqrt(self.ux**2 + self.uy**2 + self.uz**2)
        if abs(norm - 1.0) > 1e-12:
            raise InvalidArgumentError(
                f"Orientation must have unit norm within 1e-12, got |u| = {norm!r}"
            )

    @classmethod
    def from_vector(cls, x: float, y: float, z: float) -> "Orientation":
        _require_finite("Orientation components", x, y, z)
        norm = math.sqrt(x * x + y * y + z * z)
        if norm < 1e-300:
            raise InvalidArgumentError("cannot orient along a zero vector")
        return cls(x / norm, y / norm, z / norm)

    def as_array(self) -> np.ndarray:
        return np.array([self.ux, self.uy, self.uz], dtype=float)


@dataclass(frozen=True, slots=True)
class PolarizedPoint:
    """A position together with a transition-dipole orientation."""

    position: Position
    orientation: Orientation


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Samples of a frequency-dependent quantity on an ascending k grid."""

    k_values: np.ndarray
    samples: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.k_values, dtype=float)
        s = np.asarray(self.samples)
        if k.ndim != 1 or s.ndim != 1:
            raise InvalidArgumentError("Spectrum arrays must be one-dimensional")
        if k.size != s.size:
            raise InvalidArgumentError(
                f"Spectrum grid and samples differ in length: {k.size} vs {s.size}"
            )
        if k.size == 0:
            raise InvalidArgumentError("Spectrum must contain at least one point")
        if not np.all(np.isfinite(k)):
            raise InvalidArgumentError("Spectrum grid must be finite")
        if k.size > 1 and not np.all(np.diff(k) > 0):
            raise InvalidArgumentError("Spectrum grid must be strictly ascending")
        object.__setattr__(self, "k_values", k)
        object.__setattr__(self, "samples", s)

    def __len__(self) -> int:
        return int(self.k_values.size)


def free_space_ldos(k: Wavenumber, n: float = 1.0) -> float:
    """Projected LDOS of a homogeneous medium of refractive index ``n``.

    Returns ``n * k**2 / (3 * pi**2)``; for ``n = 1`` this is the free-space
    value that every Purcell ratio is ultimately normalized by.

    Parameters
    ----------
    k : float
        Vacuum wavenumber, must be positive.
    n : float
        Refractive index, must be >= 1.
    """
    if not (math.isfinite(k) and k > 0.0):
        raise InvalidArgumentError(f"wavenumber must be positive, got {k!r}")
    if not (math.isfinite(n) and n >= 1.0):
        raise InvalidArgumentError(f"refractive index must be >= 1, got {n!r}")
    return n * k * k / (3.0 * math.pi**2)


def wavelength_to_k(wavelength_nm: float) -> Wavenumber:
    """Convert a vacuum wavelength in nanometers to a wavenumber ``2*pi/lambda``."""
    if not (math.isfinite(wavelength_nm) and wavelength_nm > 0.0):
        raise InvalidArgumentError(f"wavelength must be positive, got {wavelength_nm!r}")
    return 2.0 * math.pi / wavelength_nm
