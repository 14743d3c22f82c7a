"""
Phase transition of ESPRIT on clumps
====================================

A small seeded sweep over the super-resolution factor and the noise level.
For each SRF the largest noise level with near-certain success traces a
curve whose log-log slope reflects the clump size.
"""

import sys

import numpy as np

from superres import desk_profile, extract_transition_curve, fit_transition_slope, run_sweep
from superres.plotting import loglog_svg

spec = desk_profile((2,), master_seed=0, trials=10, phase_draws=2)
result = run_sweep(spec, threads=4)

print("worst-case success rate (rows SRF, columns sigma):")
print(np.round(result.success_grid(), 2))

curve = extract_transition_curve(result)
for p in curve:
    print(f"SRF {p.srf:6.2f}   sigma* {p.sigma_star:.3e}   {p.status}")

fit = fit_transition_slope(curve)
print(f"fitted slope {fit.slope:.3f}, so sigma* ~ SRF^-{fit.q:.2f}")

if len(sys.argv) > 1:
    pts = [p for p in curve if p.status == "resolved"]
    svg = loglog_svg({"sigma*": ([p.srf for p in pts], [p.sigma_star for p in pts])},
                     xlabel="SRF", ylabel="sigma*", title="transition curve")
    with open(sys.argv[1], "w") as fh:
        fh.write(svg)
