"""Two-mode open-resonator Green's model and Fano lineshape machinery.

The model sums two resonance poles at complex frequencies k_m - i*gamma_m/2
with *unconjugated* field products, which is what produces non-Lorentzian
(Fano) LDOS and CDOS spectra when the mode fields carry nontrivial phases.

Every LDOS/CDOS spectrum of this model decomposes exactly into one Fano
profile per mode.  The half-angle convention q = tan((phi_1 + phi_2)/2)
makes the decomposition an identity (verified by the test suite to 1e-9
over dense grids); the alternative arithmetic-mean-of-tangents convention
q = (tan phi_1 + tan phi_2)/2 coincides with it when phi_1 = phi_2 and is
reported for comparison rather than asserted otherwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    InvalidArgumentError,
    PolarizedPoint,
    UndefinedPhaseError,
    Wavenumber,
)
from .fields import VectorFieldModel, projected_field, projected_field_many

__all__ = [
    "Qnm",
    "QnmPair",
    "FanoTerm",
    "FanoQParams",
    "green_qnm_projected",
    "cdos_qnm",
    "fano_profile",
    "qnm_phase",
    "fano_q_params",
    "fano_decompose_cdos",
    "mean_q_terms",
    "reconstruct_cdos",
    "mean_q_report",
    "ZERO_FIELD_CUTOFF",
]

#: Projected-field magnitude below which a phase is treated as undefined.
ZERO_FIELD_CUTOFF = 1e-14

#: |cos| below which a tangent is reported as the infinite-q signal.
_TAN_POLE_CUTOFF = 1e-12


@dataclass(frozen=True, slots=True)
class Qnm:
    """A quasinormal mode: complex-valued field plus complex resonance.

    The complex eigenfrequency is ``k_m - i*gamma_m/2`` in wavenumber units.
    Fields are accepted as-is; no normalization integral is computed.
    """

    field: VectorFieldModel
    k_m: Wavenumber
    gamma_m: float

    def __post_init__(self):
        if not (math.isfinite(self.k_m) and self.k_m > 0.0):
            raise InvalidArgumentError(f"k_m must be positive, got {self.k_m!r}")
        if not (math.isfinite(self.gamma_m) and self.gamma_m > 0.0):
            raise InvalidArgumentError(f"gamma_m must be positive, got {self.gamma_m!r}")

    @property
    def complex_frequency(self) -> complex:
        return complex(self.k_m, -0.5 * self.gamma_m)

    @property
    def quality_factor(self) -> float:
        return self.k_m / self.gamma_m


@dataclass(frozen=True, slots=True)
class QnmPair:
    """Two coupled-cavity quasinormal modes acting as a Green's model."""

    qnm_a: Qnm
    qnm_b: Qnm

    @property
    def background_index(self) -> float:
        return 1.0

    def structured_modes(self) -> tuple[Qnm, Qnm]:
        return (self.qnm_a, self.qnm_b)

    def labeled(self) -> tuple[tuple[str, Qnm], tuple[str, Qnm]]:
        return (("a", self.qnm_a), ("b", self.qnm_b))

    def mode(self, label: str) -> Qnm:
        if label == "a":
            return self.qnm_a
        if label == "b":
            return self.qnm_b
        raise InvalidArgumentError(f"unknown mode label {label!r}")

    def cdos(self, a: PolarizedPoint, b: PolarizedPoint, k: Wavenumber) -> float:
        return cdos_qnm(self, a, b, k)

    def cdos_matrix(self, positions: np.ndarray, orientations: np.ndarray,
                    k: Wavenumber) -> np.ndarray:
        _require_k(k)
        m = positions.shape[0]
        out = np.zeros((m, m), dtype=float)
        for _, mode in self.labeled():
            v = projected_field_many(mode.field, positions, orientations)
            pole = 1.0 / (mode.complex_frequency - k)
            out += (1.0 / math.pi) * (np.outer(v, v) * pole).imag
        return out


def _require_k(k: float) -> None:
    if not (math.isfinite(k) and k > 0.0):
        raise InvalidArgumentError(f"wavenumber must be positive, got {k!r}")


def green_qnm_projected(pair: QnmPair, a: PolarizedPoint, b: PolarizedPoint,
                        k: Wavenumber) -> complex:
    """Projected two-mode Green's function u_a . G(r_a, r_b, k) u_b.

    Each mode contributes ``(u_a.E(r_a)) (u_b.E(r_b)) / (2k (k_m - i g_m/2 - k))``
    with no conjugation of the second field factor.
    """
    _require_k(k)
    total = 0.0 + 0.0j
    for mode in (pair.qnm_a, pair.qnm_b):
        za = projected_field(mode.field, a.position, a.orientation)
        zb = projected_field(mode.field, b.position, b.orientation)
        total += za * zb / (mode.complex_frequency - k)
    return total / (2.0 * k)


def cdos_qnm(pair: QnmPair, a: PolarizedPoint, b: PolarizedPoint,
             k: Wavenumber) -> float:
    """CDOS of the two-mode model, ``(2k/pi) Im[u_a . G u_b]``."""
    return (2.0 * k / math.pi) * green_qnm_projected(pair, a, b, k).imag


def fano_profile(k_m: Wavenumber, gamma_m: float, q: float, k):
    """Fano lineshape with asymmetry parameter q.

    ``F = (g/2)/(q^2+1) * [(q^2-1) g/2 + 2 q (k-k_m)] / ((k-k_m)^2 + g^2/4)``

    Works elementwise on array k.  ``q = +-inf`` selects the limiting
    unit-peak Lorentzian ``(g^2/4) / ((k-k_m)^2 + g^2/4)``; the profile is
    continuous in that limit even though q is not.
    """
    if not (math.isfinite(gamma_m) and gamma_m > 0.0):
        raise InvalidArgumentError(f"gamma_m must be positive, got {gamma_m!r}")
    half = 0.5 * gamma_m
    detuning = np.asarray(k, dtype=float) - k_m
    denom = detuning**2 + half * half
    if math.isinf(q):
        out = half * half / denom
    else:
        out = (half / (q * q + 1.0)) * ((q * q - 1.0) * half + 2.0 * q * detuning) / denom
    if np.ndim(k) == 0:
        return float(out)
    return out


def qnm_phase(qnm: Qnm, p: PolarizedPoint) -> float:
    """Principal argument in (-pi, pi] of the projected mode field at a point."""
    z = projected_field(qnm.field, p.position, p.orientation)
    if abs(z) < ZERO_FIELD_CUTOFF:
        raise UndefinedPhaseError(
            f"projected field magnitude {abs(z)!r} below {ZERO_FIELD_CUTOFF}; phase undefined"
        )
    phi = cmath.phase(z)
    if phi == -math.pi:
        phi = math.pi
    return phi


class FanoQParams(NamedTuple):
    q1: float
    q2: float
    q12_mean: float
    q12_halfangle: float


def _tan_or_inf(phi: float) -> float:
    # F(q -> +inf) and F(q -> -inf) share the same Lorentzian limit, so the
    # infinite-q signal is returned unsigned.
    if abs(math.cos(phi)) < _TAN_POLE_CUTOFF:
        return math.inf
    return math.tan(phi)


def fano_q_params(phi1: float, phi2: float) -> FanoQParams:
    """Lineshape parameters from the mode phases at two source points.

    Returns the per-point tangents, the arithmetic mean of tangents, and the
    half-angle form tan((phi1+phi2)/2).  The two combined conventions are
    equal when phi1 = phi2.  A tangent pole (|cos| < 1e-12) is signalled by
    an infinite value; the caller must then use the Lorentzian-limit branch
    of :func:`fano_profile`.
    """
    q1 = _tan_or_inf(phi1)
    q2 = _tan_or_inf(phi2)
    if math.isinf(q1) or math.isinf(q2):
        q12_mean = math.inf
    else:
        q12_mean = 0.5 * (q1 + q2)
    q12_half = _tan_or_inf(0.5 * (phi1 + phi2))
    return FanoQParams(q1, q2, q12_mean, q12_half)


@dataclass(frozen=True, slots=True)
class FanoTerm:
    """One mode's contribution to a Fano-decomposed spectrum."""

    label: str
    q: float
    coefficient: float

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise InvalidArgumentError(f"coefficient must be finite, got {self.coefficient!r}")


def _decompose(pair: QnmPair, a: PolarizedPoint, b: PolarizedPoint,
               half_angle: bool) -> list[FanoTerm]:
    terms: list[FanoTerm] = []
    for label, mode in pair.labeled():
        za = projected_field(mode.field, a.position, a.orientation)
        zb = projected_field(mode.field, b.position, b.orientation)
        if min(abs(za), abs(zb)) < ZERO_FIELD_CUTOFF:
            continue
        phi_a = qnm_phase(mode, a)
        phi_b = qnm_phase(mode, b)
        if half_angle:
            q = _tan_or_inf(0.5 * (phi_a + phi_b))
        else:
            qa = _tan_or_inf(phi_a)
            qb = _tan_or_inf(phi_b)
            q = math.inf if (math.isinf(qa) or math.isinf(qb)) else 0.5 * (qa + qb)
        coefficient = -2.0 * abs(za * zb) / (math.pi * mode.gamma_m)
        terms.append(FanoTerm(label=label, q=q, coefficient=coefficient))
    if not terms:
        raise UndefinedPhaseError(
            "no mode has a nonzero projected field at both points; nothing to decompose"
        )
    return terms


def fano_decompose_cdos(pair: QnmPair, a: PolarizedPoint,
                        b: PolarizedPoint) -> list[FanoTerm]:
    """Exact Fano decomposition of the two-mode CDOS spectrum.

    For each mode with nonzero projected field at both points the term is
    ``K * F(k_m, g_m, q, k)`` with ``q = tan((phi_a + phi_b)/2)`` and
    ``K = -2 |(u_a.E(r_a))(u_b.E(r_b))| / (pi g_m)``, derived in closed form
    (no fitting); the sum over modes reproduces :func:`cdos_qnm` identically.
    """
    return _decompose(pair, a, b, half_angle=True)


def mean_q_terms(pair: QnmPair, a: PolarizedPoint, b: PolarizedPoint) -> list[FanoTerm]:
    """Same coefficients as :func:`fano_decompose_cdos` but with the
    arithmetic-mean-of-tangents q convention (reported, not asserted)."""
    return _decompose(pair, a, b, half_angle=False)


def reconstruct_cdos(pair: QnmPair, terms: list[FanoTerm], k):
    """Evaluate a Fano-term sum on scalar or array k."""
    total = 0.0 if np.ndim(k) == 0 else np.zeros(np.shape(k))
    for term in terms:
        mode = pair.mode(term.label)
        total = total + term.coefficient * fano_profile(mode.k_m, mode.gamma_m, term.q, k)
    return total


def mean_q_report(pair: QnmPair, a: PolarizedPoint, b: PolarizedPoint,
                  k_grid: np.ndarray) -> dict:
    """Compare both q conventions against the direct CDOS on a grid.

    Returns max relative deviations for each convention plus whether the two
    point phases coincide per mode (in which case the conventions agree
    exactly).  Intended for diagnostic output, not assertions.
    """
    k_grid = np.asarray(k_grid, dtype=float)
    direct = np.array([cdos_qnm(pair, a, b, float(k)) for k in k_grid])
    scale = float(np.max(np.abs(direct)))
    if scale == 0.0:
        scale = 1.0
    half = reconstruct_cdos(pair, fano_decompose_cdos(pair, a, b), k_grid)
    mean = reconstruct_cdos(pair, mean_q_terms(pair, a, b), k_grid)
    phases_equal = []
    for _, mode in pair.labeled():
        try:
            phases_equal.append(qnm_phase(mode, a) == qnm_phase(mode, b))
        except UndefinedPhaseError:
            phases_equal.append(True)  # mode absent from the decomposition
    return {
        "max_rel_dev_halfangle": float(np.max(np.abs(half - direct))) / scale,
        "max_rel_dev_mean": float(np.max(np.abs(mean - direct))) / scale,
        "phases_equal_per_mode": phases_equal,
    }
