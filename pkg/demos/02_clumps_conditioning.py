"""
Conditioning of Vandermonde matrices on clumped supports
========================================================

Two tight clumps make the smallest singular value of the Fourier matrix
collapse polynomially in the super-resolution factor, with exponent set by
the clump size rather than by the total number of points.
"""

import numpy as np

from superres import ClumpsConfig, check_clumps_scaling, check_moitra, generate_clumps, min_separation, srf

# two clumps of two points each, in-clump spacing alpha/M
cfg = ClumpsConfig(100, (2, 2), 1 / 2.5, 10.0)
omega = generate_clumps(cfg, placement_seed=0)
print("support:", np.round(omega, 5))
print("SRF of this support:", srf(omega, cfg.M))

# the fitted log-log slope approaches -(lambda - 1) for clump size lambda
grid = np.geomspace(2, 10, 9)
for sizes in [(2,), (3,), (2, 2), (3, 3)]:
    fit = check_clumps_scaling(ClumpsConfig(100, sizes, 1 / 2.5, 10.0), grid)
    print(f"clumps {sizes}: slope {fit.slope:+.3f}, expected {-(max(sizes) - 1)}")

# for well-separated points the smallest singular value stays near sqrt(M)
rng = np.random.default_rng(0)
omega = np.sort(rng.permutation(np.arange(50))[:8] / 50)
r = check_moitra(omega, 100)
print("separation * M:", min_separation(omega) * 100)
print(f"sigma_S^2 = {r.rhs:.2f} >= {r.lhs:.2f}: {r.satisfied}")
