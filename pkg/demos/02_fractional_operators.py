"""The discrete fractional operators against closed forms.

Applies the product-trapezoidal Riemann-Liouville integral and the L1
Caputo derivative to power functions, where exact answers exist, and shows
the expected convergence orders (2 for the integral, 2 - alpha for the L1
derivative).
"""

import numpy as np

from fracstab import FracOrder, SampleSeries, TimeGrid, caputo_l1, caputo_power_oracle, rl_integral
from fracstab import gamma

alpha = 0.6
grid = TimeGrid(0.0, 1e-3, 2000)
t = grid.nodes()

print(f"Caputo derivative of t^2 at alpha = {alpha} (h = {grid.h})")
numeric = caputo_l1(SampleSeries(grid, t**2), FracOrder(alpha)).values
exact = np.array([caputo_power_oracle(2.0, FracOrder(alpha), float(x), 0.0) for x in t])
mask = t >= 0.1
rel = np.max(np.abs(numeric[mask] - exact[mask]) / exact[mask])
print(f"  max relative error for t >= 0.1: {rel:.3e}")

print(f"\nRL integral of 1 at order 0.5 reproduces t^0.5/gamma(1.5)")
out = rl_integral(SampleSeries(grid, np.ones_like(t)), 0.5).values
ref = t**0.5 / gamma(1.5)
print(f"  max relative error for t >= 0.1: {np.max(np.abs(out[mask]-ref[mask])/ref[mask]):.3e}")

print("\nConvergence under grid halving (errors measured for t >= 0.1):")
print("  h        caputo err   rl err")
errs_c, errs_r = [], []
hs = (1e-2, 5e-3, 2.5e-3)
for h in hs:
    g = TimeGrid(0.0, h, round(1.0 / h))
    th = g.nodes()
    m = th >= 0.1
    c = caputo_l1(SampleSeries(g, th**3), FracOrder(alpha)).values
    ce = np.array([caputo_power_oracle(3.0, FracOrder(alpha), float(x), 0.0) for x in th])
    r = rl_integral(SampleSeries(g, th**3), 0.5).values
    re = gamma(4.0) / gamma(4.5) * th**3.5
    errs_c.append(np.max(np.abs(c[m] - ce[m])))
    errs_r.append(np.max(np.abs(r[m] - re[m])))
    print(f"  {h:<8g} {errs_c[-1]:<12.3e} {errs_r[-1]:.3e}")

oc = np.polyfit(np.log(hs), np.log(errs_c), 1)[0]
orl = np.polyfit(np.log(hs), np.log(errs_r), 1)[0]
print(f"\n  observed orders: caputo {oc:.2f} (expected {2-alpha}), rl {orl:.2f} (expected 2)")
