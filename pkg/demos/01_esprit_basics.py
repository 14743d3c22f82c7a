"""
Recovering point sources with ESPRIT
====================================

A handful of spikes on the unit torus, observed through their first M+1
Fourier coefficients, with and without noise.
"""

import numpy as np

from superres import AtomicMeasure, add_noise, esprit, fourier_coefficients, matching_distance

# three sources, two of them closer than the 1/M resolution limit
M = 60
mu = AtomicMeasure([0.20, 0.205, 0.70], [1.0, -0.8j, 0.5 + 0.5j])
y0 = fourier_coefficients(mu, M)
print("separation in units of 1/M:", round(0.005 * M, 2))

# clean data: the frequencies come back to machine precision
res = esprit(y0, S=3, amplitudes=True)
print("noiseless estimate:", np.round(res.support_estimate, 10))
print("noiseless md:", matching_distance(mu.support, res.support_estimate))
print("recovered amplitudes:", np.round(res.amplitudes_estimate, 8))

# the singular values of the Hankel matrix show a clean rank-3 gap
print("leading singular values:", np.round(res.diagnostics.singular_values[:5], 6))

# add complex Gaussian noise and watch the error grow with sigma
for sigma in [1e-6, 1e-4, 1e-2]:
    y = add_noise(y0, sigma, seed=1)
    est = esprit(y, S=3)
    print(f"sigma = {sigma:.0e}   md = {matching_distance(mu.support, est.support_estimate):.3e}")
