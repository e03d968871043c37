"""swb: numerical workbench for the Borcherds-form integral over the truncated modular curve.

Modules: specfun (special functions, Laurent extraction), hdomain (upper
half-plane regions and quadrature), qspace (the signature (2, 1) lattice),
theta (Jacobi and Siegel theta functions), eisenstein (E(z, s) and the
truncated Rankin-Selberg closed forms), borcherds (Delta and input forms),
verify (identity checks) and cli.
"""
__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402

__all__ = ["BACKEND", "__version__"]
