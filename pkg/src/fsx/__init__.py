"""Spectral function-space toolkit on band-limited periodic fields.

Subpackage map:

- lattice: frequency lattice, fields, sampling, projection, dilation
- multipliers: exact Fourier-multiplier operators
- dyadic: Littlewood-Paley family, blocks, reconstruction
- norms: Lebesgue / Besov / Sobolev / square-function norms, pairing
- interp: split-functional curves and real-interpolation norms
- halfspace: reflection extensions, zero-boundary projection, indicator
- poisson: boundary trace and harmonic extension
- solvers: Dirichlet/Neumann resolvents and boundary-value problems
- corpus, report, suites, cli: verification harness
"""

__version__ = "0.1.0"
