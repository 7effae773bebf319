#!/usr/bin/env python3
"""Spectral reshaping by the CDOS in a two-mode environment with unbalanced
losses: the decay-rate spectrum of an extended source is not a rescaled copy
of the point-source spectrum.

Builds two quasinormal modes (one ten times broader than the other, detuned
by half the broad linewidth, with different spatial profiles and phases),
then sweeps a point dipole and a 300 nm line source sharing the same center.
Writes point_vs_line_spectrum.csv and prints the peak positions and the
variation of the line/point ratio across the band.
"""

import argparse
import cmath
import math
import os

import numpy as np

from purcellx import (
    AnalyticSurrogate,
    AnalyticSurrogateParams,
    CompositeGreens,
    HomogeneousGreens,
    Orientation,
    PolarizedPoint,
    Position,
    Qnm,
    QnmPair,
    line_source,
    point_source,
    sweep_spectrum,
    wavelength_to_k,
)

X = Orientation(1.0, 0.0, 0.0)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out_two_qnm", help="output directory")
    parser.add_argument("--d-nm", type=float, default=300.0, help="line source length")
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)

    k_a = wavelength_to_k(1270.0)
    g_a = k_a / 200.0
    k_b = k_a + 0.5 * g_a
    g_b = g_a / 10.0

    def surrogate(amp, x0, sx):
        return AnalyticSurrogate(AnalyticSurrogateParams(x0, sx, 120.0, X, amp))

    pair = QnmPair(
        Qnm(surrogate(cmath.exp(1j * math.pi / 8), 160.0, 400.0), k_a, g_a),
        Qnm(surrogate(0.8 * cmath.exp(1j * math.pi / 4), 120.0, 300.0), k_b, g_b),
    )
    env = CompositeGreens(HomogeneousGreens(1.0), pair)
    vacuum = HomogeneousGreens(1.0)

    center = Position(132.0, 0.0, 0.0)
    ks = np.linspace(k_a - 3 * g_a, k_a + 3 * g_a, 401)
    point = sweep_spectrum(point_source(PolarizedPoint(center, X)), env, vacuum, ks)
    line = sweep_spectrum(line_source(center, X, X, args.d_nm, 64, 1.0), env, vacuum, ks)
    p = np.asarray(point.samples, float)
    l = np.asarray(line.samples, float)

    path = os.path.join(args.out, "point_vs_line_spectrum.csv")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("k,point_gamma_ratio,line_gamma_ratio\n")
        for row in zip(ks, p, l):
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")
    print(f"wrote {path}")

    print(f"point peak at k = {ks[int(np.argmax(p))]:.6g}, "
          f"line peak at k = {ks[int(np.argmax(l))]:.6g}")
    mask = p > 0.05 * p.max()
    ratio = l[mask] / p[mask]
    print(f"line/point ratio varies {ratio.min():.3g} .. {ratio.max():.3g} "
          "across the band: the lineshape is not set by the local density "
          "of states alone")


if __name__ == "__main__":
    main()
