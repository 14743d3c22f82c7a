"""
How much of a spike train's spectrum can sit at frequency zero
==============================================================

C_N compares the zero coefficient with the energy of the first N. One atom
gives exactly 1/sqrt(N); S atoms can push it up, but never past a uniform cap.
"""

import numpy as np

from superres import AtomicMeasure, search_uncertainty_constant, support_supremum, uncertainty_constant
from superres.uncertainty import complex_uncertainty_bound, count_nonzero_coefficients, real_uncertainty_bound

N = 9
print("one atom:", uncertainty_constant(AtomicMeasure([0.3], [2j]), N), "vs", 1 / np.sqrt(N))

# squeezing two atoms together makes them act like one
mu = AtomicMeasure([0.1, 0.6], [1.0, 1.0j])
for eps in [1.0, 1e-2, 1e-6]:
    print(f"support scaled by {eps:.0e}: C_N = {uncertainty_constant(mu.scaled_support(eps), N):.6f}")

# for a fixed support the best amplitudes have a closed form
omega = np.array([0.0, 0.05, 0.11])
print("supremum over amplitudes:", support_supremum(omega, N))
print("real amplitudes only:", support_supremum(omega, N, real=True))

# a coordinate search over supports stays below the uniform caps
for S in (2, 3):
    value, pts = search_uncertainty_constant(S, 2 * S + 1, restarts=3, sweeps=5)
    print(f"S={S}: searched {value:.4f}, complex cap {complex_uncertainty_bound(S):.4f}, "
          f"real cap {real_uncertainty_bound(S):.4f}")

# any window of N consecutive coefficients holds at least floor(N/S) non-zeros
print("non-zero coefficients in k = 5..13:", count_nonzero_coefficients(mu, range(5, 14)))
