#!/usr/bin/env python3
"""Regenerates src/wavelets/filter_tables.cpp.

Orthogonal families (db, sym, coif) are solved to 60 digits by Gauss-Newton on
their defining equations (orthonormal shifts, unit DC gain, wavelet vanishing
moments and, for coiflets, scaling-function moments). PyWavelets is only used
as the starting point that selects which root of the system is meant.

Biorthogonal spline families are built exactly in rational arithmetic from the
Cohen-Daubechies-Feauveau construction.

Usage: python3 tools/gen_filters.py > src/wavelets/filter_tables.cpp
"""
from fractions import Fraction
from math import comb
import sys

import mpmath as mp
import pywt

mp.mp.dps = 60
SQRT2 = mp.sqrt(2)


def refine_orthogonal(h0, moments, coif_shift=None):
    L = len(h0)
    h = mp.matrix([mp.mpf(v) for v in h0])

    def residual(h):
        r = []
        for l in range(L // 2):
            s = mp.fsum(h[n] * h[n + 2 * l] for n in range(L - 2 * l))
            r.append(s - (1 if l == 0 else 0))
        r.append(mp.fsum(h[n] for n in range(L)) - SQRT2)
        for m in range(moments):
            r.append(mp.fsum((-1) ** n * mp.mpf(n) ** m * h[n] for n in range(L)))
        if coif_shift is not None:
            for m in range(1, moments):
                r.append(mp.fsum((n - coif_shift) ** m * h[n] for n in range(L)))
        return mp.matrix(r)

    for _ in range(40):
        r = residual(h)
        J = mp.matrix(len(r), L)
        eps = mp.mpf(10) ** -30
        for j in range(L):
            hp = h.copy()
            hp[j] += eps
            rp = residual(hp)
            hm = h.copy()
            hm[j] -= eps
            rm = residual(hm)
            for i in range(len(r)):
                J[i, j] = (rp[i] - rm[i]) / (2 * eps)
        step = mp.lu_solve(J.T * J, J.T * r)
        h = h - step
        if mp.norm(step) < mp.mpf(10) ** -55:
            break
    assert mp.norm(residual(h)) < mp.mpf(10) ** -40, mp.norm(residual(h))
    return [h[i] for i in range(L)]


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_pow(a, k):
    out = [Fraction(1)]
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def cdf_spline(nr, nd):
    """Returns (analysis, synthesis) low-pass filters divided by sqrt(2), exact.

    Laurent polynomials in z are represented with the lowest power first.
    Synthesis low-pass is the B-spline mask ((1+z)/2)^nr; the analysis mask is
    ((1+z)/2)^nd * P(sin^2) with P the Daubechies polynomial of degree K-1,
    K = (nr+nd)/2, where sin^2(w/2) = (2 - z - 1/z)/4.
    """
    K = (nr + nd) // 2
    half = [Fraction(1, 2), Fraction(1, 2)]
    syn = poly_pow(half, nr)
    # sin^2 as polynomial in z times z^-1: (-1/4) + (1/2) z + (-1/4) z^2, offset -1
    s2 = [Fraction(-1, 4), Fraction(1, 2), Fraction(-1, 4)]
    acc = [Fraction(0)] * (2 * (K - 1) + 1)
    for k in range(K):
        term = poly_pow(s2, k)
        c = comb(K - 1 + k, k)
        pad = (K - 1) - k
        for i, v in enumerate(term):
            acc[i + pad] += c * v
    ana = poly_mul(poly_pow(half, nd), acc)
    return ana, syn


def center_pad(a, b):
    """Zero-pads two symmetric filters to a common even length, centred."""
    L = max(len(a), len(b))
    if L % 2:
        L += 1
    def pad(x):
        extra = L - len(x)
        left = extra // 2
        return [Fraction(0)] * left + x + [Fraction(0)] * (extra - left)
    return pad(a), pad(b)


def main():
    out = {}
    for name, N in [("db4", 4), ("db6", 6), ("db8", 8), ("sym4", 4), ("sym7", 7), ("haar", 1)]:
        w = pywt.Wavelet(name)
        h0 = list(reversed(w.dec_lo))
        h = refine_orthogonal(h0, N)
        out[name] = dict(h=h, ht=h, vm=N, orth=True)

    w = pywt.Wavelet("coif2")
    h0 = list(reversed(w.dec_lo))
    shift = round(sum(n * v for n, v in enumerate(h0)) / sum(h0))
    h = refine_orthogonal(h0, 4, coif_shift=shift)
    out["coif2"] = dict(h=h, ht=h, vm=4, orth=True)

    for name, nr, nd in [("bior2.8", 2, 8), ("bior3.7", 3, 7), ("bior3.9", 3, 9)]:
        ana, syn = cdf_spline(nr, nd)
        ana, syn = center_pad(ana, syn)
        w = pywt.Wavelet(name)
        ref_h = list(reversed(w.dec_lo))
        ref_ht = list(w.rec_lo)
        h = [mp.mpf(x.numerator) / x.denominator * SQRT2 for x in ana]
        ht = [mp.mpf(x.numerator) / x.denominator * SQRT2 for x in syn]
        # PyWavelets pads the odd-length masks one sample differently; align on it.
        if len(h) != len(ref_h) or max(abs(float(a) - b) for a, b in zip(h, ref_h)) > 1e-12:
            h = h[1:] + [mp.mpf(0)]
            ht = ht[1:] + [mp.mpf(0)]
        assert max(abs(float(a) - b) for a, b in zip(h, ref_h)) < 1e-12, name
        assert max(abs(float(a) - b) for a, b in zip(ht, ref_ht)) < 1e-12, name
        # vanishing moments of the analysis high-pass = zeros of the synthesis mask at pi
        out[name] = dict(h=h, ht=ht, vm=nr, orth=False)

    for name, ref in out.items():
        if ref["orth"]:
            w = pywt.Wavelet(name)
            drift = max(abs(float(a) - b) for a, b in zip(ref["h"], reversed(w.dec_lo)))
            assert drift < 1e-9, (name, drift)

    w = sys.stdout.write
    w("// Generated by tools/gen_filters.py. Do not edit by hand.\n\n")
    w('#include "wrnn/wavelets/filter_bank.hpp"\n\n')
    w("namespace wrnn::wavelets::detail {\n\n")
    for name in ["haar", "bior2.8", "bior3.7", "bior3.9", "coif2", "db4", "db6", "db8", "sym4", "sym7"]:
        ref = out[name]
        ident = name.replace(".", "_")
        for key, arr in (("lo", ref["h"]), ("dual_lo", ref["ht"])):
            if key == "dual_lo" and ref["orth"]:
                continue
            w(f"const std::vector<double> k_{ident}_{key} = {{\n")
            for v in arr:
                w(f"    {mp.nstr(v, 20, min_fixed=-1, max_fixed=-1, strip_zeros=False)},\n")
            w("};\n")
        w("\n")
    w("}  // namespace wrnn::wavelets::detail\n")


if __name__ == "__main__":
    main()
