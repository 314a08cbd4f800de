"""Physical constants (SI defined values) and unit helpers."""

import math

TWO_PI = 2.0 * math.pi

# 2019 SI exact values
HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23      # J/K

# electron gyromagnetic ratio, ordinary frequency per field
ELECTRON_GYROMAGNETIC_HZ_PER_MT = 28e6  # Hz/mT
