#!/usr/bin/env python3
"""Fit a fifth-order rational filter to the ISO 2631-1 motion-sickness weighting.

The reference curve is the full Annex-A analog prototype for the w_f
weighting (high-pass, low-pass, acceleration-velocity transition and
upward-step sections, 8th order in total).  A fifth-order approximation is
fitted to its magnitude on a log grid over 0.01-2 Hz, which covers the
band that matters for nausea-range accelerations.

The fitted transfer function is

    H5(s) = (n3*s^3 + n2*s^2) / (s^5 + d4*s^4 + d3*s^3 + d2*s^2 + d1*s + d0)

The s^2 numerator factor keeps the +40 dB/dec low-frequency rise of the
reference; the denominator is parameterized as two complex pole pairs and
one real pole so stability holds by construction.

Running this script regenerates include/speedopt/iso_weighting_coeffs.hpp.
"""

import argparse
import sys

import numpy as np
from scipy.optimize import least_squares

TWO_PI = 2.0 * np.pi


def wf_reference(f_hz: np.ndarray) -> np.ndarray:
    """|w_f| per ISO 2631-1 Annex A (f3 = infinity for w_f)."""
    s = 1j * TWO_PI * f_hz
    q = 1.0 / np.sqrt(2.0)
    w1 = TWO_PI * 0.08
    w2 = TWO_PI * 0.63
    w4, q4 = TWO_PI * 0.25, 0.86
    w5, q5 = TWO_PI * 0.0625, 0.8
    w6, q6 = TWO_PI * 0.10, 0.8

    hh = (s / w1) ** 2 / ((s / w1) ** 2 + (s / w1) / q + 1.0)
    hl = 1.0 / ((s / w2) ** 2 + (s / w2) / q + 1.0)
    ht = 1.0 / ((s / w4) ** 2 + s / (q4 * w4) + 1.0)
    hs = (s ** 2 + (w5 / q5) * s + w5 ** 2) / (s ** 2 + (w6 / q6) * s + w6 ** 2)
    return np.abs(hh * hl * ht * hs)


def h5_mag(params: np.ndarray, f_hz: np.ndarray) -> np.ndarray:
    n2, n3, w1, z1, w2, z2, p = unpack(params)
    s = 1j * TWO_PI * f_hz
    num = n3 * s ** 3 + n2 * s ** 2
    den = (s ** 2 + 2 * z1 * w1 * s + w1 ** 2) * (s ** 2 + 2 * z2 * w2 * s + w2 ** 2) * (s + p)
    return np.abs(num / den)


def unpack(params: np.ndarray):
    # log-parameterized so every quantity stays positive
    n2, n3, w1, z1, w2, z2, p = np.exp(params)
    return n2, n3, w1, z1, w2, z2, p


def residuals(params: np.ndarray, f_hz: np.ndarray, ref: np.ndarray) -> np.ndarray:
    return np.log(h5_mag(params, f_hz)) - np.log(ref)


def expand_denominator(w1, z1, w2, z2, p):
    pair1 = np.array([1.0, 2 * z1 * w1, w1 ** 2])
    pair2 = np.array([1.0, 2 * z2 * w2, w2 ** 2])
    real = np.array([1.0, p])
    return np.polymul(np.polymul(pair1, pair2), real)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=None, help="header to write (default: stdout)")
    args = ap.parse_args()

    f = np.geomspace(0.01, 2.0, 400)
    ref = wf_reference(f)

    x0 = np.log([0.4, 0.05, TWO_PI * 0.12, 0.5, TWO_PI * 0.4, 0.7, TWO_PI * 0.05])
    sol = least_squares(residuals, x0, args=(f, ref), method="lm", max_nfev=20000)
    n2, n3, w1, z1, w2, z2, p = unpack(sol.x)

    den = expand_denominator(w1, z1, w2, z2, p)
    assert den[0] == 1.0
    if n3 < 1e-9 * n2:  # optimizer drove the cubic term to zero
        n3 = 0.0
    num = np.array([n3, n2, 0.0, 0.0])  # n3*s^3 + n2*s^2

    err_db = 20.0 * (np.log10(h5_mag(sol.x, f)) - np.log10(ref))
    rms_db = float(np.sqrt(np.mean(err_db ** 2)))
    max_db = float(np.max(np.abs(err_db)))

    fpk = f[np.argmax(h5_mag(sol.x, f))]
    ref_pk = f[np.argmax(ref)]

    lines = []
    lines.append("#pragma once")
    lines.append("")
    lines.append("// Fifth-order approximation of the ISO 2631-1 motion-sickness weighting")
    lines.append("// (w_f).  Generated by scripts/fit_iso_weighting.py; do not edit by hand.")
    lines.append("//")
    lines.append("//   H(s) = (b[0] s^3 + b[1] s^2) / (s^5 + a[0] s^4 + ... + a[4])")
    lines.append("//")
    lines.append(f"// Fit residual over 0.01-2 Hz: rms {rms_db:.3f} dB, max {max_db:.3f} dB.")
    lines.append(f"// Peak response at {fpk:.4f} Hz (reference peaks at {ref_pk:.4f} Hz).")
    lines.append("")
    lines.append("namespace speedopt {")
    lines.append("")
    lines.append("inline constexpr double kIsoWeightingNum[4] = {")
    lines.append("    " + ", ".join(f"{c:.16e}" for c in num))
    lines.append("};")
    lines.append("")
    lines.append("inline constexpr double kIsoWeightingDen[5] = {")
    lines.append("    " + ", ".join(f"{c:.16e}" for c in den[1:]))
    lines.append("};")
    lines.append("")
    lines.append("}  // namespace speedopt")
    lines.append("")
    text = "\n".join(lines)

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    print("", file=sys.stderr)
    print(f"rms error  : {rms_db:.4f} dB", file=sys.stderr)
    print(f"max error  : {max_db:.4f} dB", file=sys.stderr)
    print(f"fitted peak: {fpk:.4f} Hz  (reference {ref_pk:.4f} Hz)", file=sys.stderr)
    for probe in (0.0167, 0.05, 0.1, 0.167, 0.25, 0.5, 1.0, 2.0):
        pf = np.array([probe])
        print(
            f"  f={probe:6.4f} Hz  ref={wf_reference(pf)[0]:8.5f}  fit={h5_mag(sol.x, pf)[0]:8.5f}",
            file=sys.stderr,
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
