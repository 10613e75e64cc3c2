#!/usr/bin/env python3
"""Spectrum of rank-truncated operators against the full spectrum.

Full diagonalization is limited to moderate matrix sizes, so one practical
route to the spectrum of a large network is to keep only the top-ranked
nodes and diagonalize the renormalized restriction.  This demo measures how
the eigenvalue cloud deforms as more of the network is cut away.
"""

import os

import numpy as np

from netspectra.genmodels import AbParams, ColorParams, generate_color
from netspectra.spectra import spectrum_to_csv, truncated_spectrum_compare

OUT_DIR = os.environ.get("DEMO_OUT", "demo_out")
os.makedirs(OUT_DIR, exist_ok=True)

N = 2**11
graph, _ = generate_color(
    ColorParams(
        ab=AbParams(n_target=N, m=5, p=0.2, q=0.1, seed=9),
        eta=1e-2,
        epsilon=1e-3,
    )
)
sizes = [N, N // 2, N // 4, N // 8]
print(f"community network N={N}; truncating to sizes {sizes[1:]} by rank\n")

cmp = truncated_spectrum_compare(graph, 0.85, sizes)
print(f"{'kept m':>8} {'fraction':>9} {'|lambda_2|':>11} {'hausdorff':>10}")
full_l2 = abs(cmp.full.eigenvalues[1])
print(f"{N:>8} {'100%':>9} {full_l2:>11.4f} {'--':>10}   (full matrix)")
for res in cmp.results:
    if res.m == N:
        continue
    l2 = abs(res.spectrum.eigenvalues[1])
    print(f"{res.m:>8} {res.m / N:>9.0%} {l2:>11.4f} {res.hausdorff:>10.4f}")

print("\nmoderate truncation preserves the global shape of the eigenvalue")
print("cloud (small Hausdorff distance); cutting more than half the nodes")
print("visibly displaces individual eigenvalues.")

spectrum_to_csv(cmp.full, os.path.join(OUT_DIR, "trunc_full.csv"))
for res in cmp.results:
    spectrum_to_csv(
        res.spectrum, os.path.join(OUT_DIR, f"trunc_m{res.m}.csv")
    )
print(f"\nwrote overlay data to {OUT_DIR}/trunc_*.csv "
      "(re,im columns give the clouds)")
