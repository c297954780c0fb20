#!/usr/bin/env python3
# Sample the in-gap dispersion curve z(p) for a few couplings and write a
# CSV next to this script.  The curve starts at the band edge at p = 0 and
# runs monotonically toward the free band as |p| grows; its sign flips with
# the side the extra band attaches to.

import csv
import os

import numpy as np

from diracshell import ShellParams, band_edge, dispersion_energy, dispersion_momentum

M = 1.0
ETAS = (0.5, 1.0, 3.0, -1.0)
P = np.linspace(0.0, 6.0, 121)

rows = []
for p in P:
    row = [f"{p:.3f}"]
    for eta in ETAS:
        z = dispersion_energy(ShellParams(eta, M), float(p))
        row.append(f"{z:.12f}")
    rows.append(row)

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "dispersion.csv")
with open(out, "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["p"] + [f"eta={eta:g}" for eta in ETAS])
    writer.writerows(rows)
print(f"wrote {len(rows)} samples to {out}")
print()

print("head of the table:")
print("p      " + "".join(f"eta={eta:<12g}" for eta in ETAS))
for row in rows[:5]:
    print("  ".join(row))
print()

# round trip: invert the curve back to momentum and compare
params = ShellParams(1.0, M)
print("inverting z(p) back to p for eta = 1, m = 1")
for p in (0.0, 0.5, 2.0, 5.0):
    z = dispersion_energy(params, p)
    pair = dispersion_momentum(params, z)
    print(f"  p = {p:4.1f}  z = {z:+.9f}  recovered p = {pair[1]:.9f}")

edge = band_edge(params)
print(f"edge value {edge:.9f} maps to the double root p = 0: "
      f"{dispersion_momentum(params, -edge)}")
