"""fracpoint: bound states of the 1-D fractional Laplacian perturbed by a
derivative of a point interaction.

The operator multiplies by ``|p|^alpha`` in momentum space and adds the
n-th distributional derivative of a Dirac delta with strength ``v0``
(requiring ``alpha > 2n + 1``).  The package computes its negative
eigenvalues through a closed-form coupling-matrix determinant condition,
reconstructs the normalized eigenfunctions both by direct oscillatory
quadrature and through Fox H-function contour integrals, and cross-checks
every closed form against independent adaptive quadrature.

Typical use::

    >>> from fracpoint import SpectralProblem, find_eigenvalues, sample_grid
    >>> sol = find_eigenvalues(SpectralProblem(alpha=2.0, n=0, v0=-1.0))[0]
    >>> sol.energy
    -0.25000000000000006
    >>> grid = sample_grid(sol, -10.0, 10.0, 2001)

The same functionality is exposed on the command line (``fracpoint solve``,
``fracpoint eigenfunction``, ``fracpoint sweep-alpha``, ``fracpoint
validate``).
"""

__version__ = "0.1.0"

from .closed_integrals import (MomentQuery, j_closed, m_closed,
                               power_kernel)
from .eigenfunction import (GridFunction, normalization_grid, phi, psi,
                            psi_n0, psi_n1, sample_grid)
from .errors import (ContourError, DomainError, FracpointError, InvalidInput,
                     NonConvergence, PoleError, RankError, SolverError)
from .foxh import (FoxHSpec, MellinKernel, evaluate_foxh, falpha, falpha1,
                   falpha1_spec, falpha_spec, log_gamma_complex, theta)
from .quadrature import (FourierMomentResult, QuadratureResult,
                         integrate_fourier_cos, integrate_fourier_moment,
                         integrate_halfline)
from .spectrum import (CouplingMatrix, EigenSolution, SpectralProblem,
                       closed_n0, closed_n1, coefficients, coupling_matrix,
                       det_condition, find_eigenvalues, normalize, residual)

__all__ = [
    "__version__",
    "MomentQuery", "j_closed", "m_closed", "power_kernel",
    "GridFunction", "normalization_grid", "phi", "psi", "psi_n0", "psi_n1",
    "sample_grid",
    "FracpointError", "InvalidInput", "DomainError", "PoleError",
    "ContourError", "NonConvergence", "RankError", "SolverError",
    "FoxHSpec", "MellinKernel", "evaluate_foxh", "falpha", "falpha1",
    "falpha_spec", "falpha1_spec", "log_gamma_complex", "theta",
    "QuadratureResult", "FourierMomentResult", "integrate_halfline",
    "integrate_fourier_cos", "integrate_fourier_moment",
    "SpectralProblem", "CouplingMatrix", "EigenSolution",
    "coupling_matrix", "det_condition", "find_eigenvalues",
    "closed_n0", "closed_n1", "coefficients", "normalize", "residual",
]
