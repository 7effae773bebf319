import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from purcellx import (
    InvalidArgumentError,
    Orientation,
    Position,
    Spectrum,
    free_space_ldos,
    wavelength_to_k,
)


def test_free_space_ldos_vacuum_value():
    assert free_space_ldos(1.0, 1.0) == pytest.approx(1.0 / (3.0 * math.pi**2), rel=1e-15)
    assert free_space_ldos(1.0) == pytest.approx(0.033773727, rel=1e-7)


def test_free_space_ldos_k_squared_scaling():
    assert free_space_ldos(2.0) == pytest.approx(4.0 * free_space_ldos(1.0), rel=1e-15)


def test_free_space_ldos_medium():
    assert free_space_ldos(1.0, 3.48) == pytest.approx(3.48 / (3.0 * math.pi**2), rel=1e-15)


@pytest.mark.parametrize("k,n", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.5), (math.nan, 1.0)])
def test_free_space_ldos_rejects_bad_args(k, n):
    with pytest.raises(InvalidArgumentError):
        free_space_ldos(k, n)


@given(
    k1=st.floats(min_value=1e-6, max_value=1.0, allow_nan=False),
    factor=st.floats(min_value=1.0001, max_value=100.0, allow_nan=False),
)
def test_free_space_ldos_increasing_in_k(k1, factor):
    assert free_space_ldos(k1 * factor) > free_space_ldos(k1)


@given(
    k=st.floats(min_value=1e-6, max_value=1.0, allow_nan=False),
    n=st.floats(min_value=1.0, max_value=10.0, allow_nan=False),
)
def test_free_space_ldos_linear_in_n(k, n):
    assert free_space_ldos(k, n) == pytest.approx(n * free_space_ldos(k, 1.0), rel=1e-12)


def test_wavelength_to_k_values():
    assert wavelength_to_k(1270.0) == pytest.approx(0.0049474, abs=5e-8)
    assert wavelength_to_k(2.0 * math.pi) == pytest.approx(1.0, rel=1e-15)
    assert wavelength_to_k(628.3185) == pytest.approx(0.01, abs=1e-9)


def test_wavelength_to_k_rejects_nonpositive():
    with pytest.raises(InvalidArgumentError):
        wavelength_to_k(0.0)
    with pytest.raises(InvalidArgumentError):
        wavelength_to_k(-5.0)


@given(k=st.floats(min_value=1e-8, max_value=1e6, allow_nan=False))
def test_wavelength_roundtrip(k):
    assert wavelength_to_k(2.0 * math.pi / k) == pytest.approx(k, rel=1e-12)


def test_position_requires_finite():
    with pytest.raises(InvalidArgumentError):
        Position(0.0, math.inf, 0.0)


def test_orientation_requires_unit_norm():
    Orientation(1.0, 0.0, 0.0)
    with pytest.raises(InvalidArgumentError):
        Orientation(1.0, 0.5, 0.0)


def test_orientation_from_vector_normalizes():
    u = Orientation.from_vector(3.0, 4.0, 0.0)
    assert u.ux == pytest.approx(0.6, rel=1e-15)
    assert u.uy == pytest.approx(0.8, rel=1e-15)
    with pytest.raises(InvalidArgumentError):
        Orientation.from_vector(0.0, 0.0, 0.0)


def test_spectrum_validation():
    Spectrum(np.array([1.0, 2.0]), np.array([0.5, 0.25]))
    with pytest.raises(InvalidArgumentError):
        Spectrum(np.array([2.0, 1.0]), np.array([0.5, 0.25]))  # descending
    with pytest.raises(InvalidArgumentError):
        Spectrum(np.array([1.0, 1.0]), np.array([0.5, 0.25]))  # not strict
    with pytest.raises(InvalidArgumentError):
        Spectrum(np.array([1.0, 2.0]), np.array([0.5]))  # length mismatch
    with pytest.raises(InvalidArgumentError):
        Spectrum(np.array([]), np.array([]))


def test_spectrum_accepts_complex_samples():
    s = Spectrum(np.array([1.0, 2.0, 3.0]), np.array([1j, 2j, 3j]))
    assert len(s) == 3
    assert s.samples.dtype.kind == "c"
