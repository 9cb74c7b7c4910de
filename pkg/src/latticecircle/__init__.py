"""Lattice points on circles a^2 + b^2 = n, their angular measures, and the
plane region swept by the first two Fourier coefficients.

Submodules:
    arithmetic -- factorization, r2 counts, lattice enumeration, prime angles
    measures   -- atomic symmetric measures, convolution, Fourier kernels
    region     -- boundary curves, spikes, and the membership oracles
    verify     -- grid and sampling checks for the supporting inequalities
    cli        -- command line front end (scans, queries, CSV emission)
"""

from . import arithmetic, measures, region, verify

__all__ = ["arithmetic", "measures", "region", "verify"]
__version__ = "0.1.0"
