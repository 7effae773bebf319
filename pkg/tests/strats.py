"""Shared hypothesis strategies for geometry and spectra."""

from hypothesis import strategies as st

from purcellx import Orientation, PolarizedPoint, Position

coords = st.floats(min_value=-800.0, max_value=800.0, allow_nan=False)
wavenumbers = st.floats(min_value=1e-3, max_value=0.05, allow_nan=False)

positions = st.builds(Position, coords, coords, coords)


@st.composite
def orientations(draw):
    comps = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
    x, y, z = draw(comps), draw(comps), draw(comps)
    if x * x + y * y + z * z < 1e-4:
        x = 1.0
    return Orientation.from_vector(x, y, z)


polarized_points = st.builds(PolarizedPoint, positions, orientations())
