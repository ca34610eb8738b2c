"""Gabor analysis on finite abelian groups.

Frame bounds, frame operators and duality relations for systems
``{E_gamma T_lambda g}`` with ``lambda`` in a subgroup of ``G`` and
``gamma`` in a subgroup of the dual, each computed along several
independent routes and checked against a brute-force oracle.
"""

from .bounds import DEFAULT_TOL, FrameBounds, SpectralField
from .errors import (ConstructionFailedError, GaborlabError, InvalidInputError, ResourceLimitError,
                     SingularOperatorError)
from .gabor import (AdjointSystem, DualityReport, GaborSystem, adjoint_system, bessel_estimate,
                    build_parseval_bspline, calderon_bounds, canonical_dual, coefficients,
                    commutation_residual, critical_density_check, dual_gramian_bounds, duality_report,
                    figa_residual, frame_operator_apply, frame_operator_matrix, frequency_side_bounds,
                    gabor_system, gamma_energy_identity_residual, janssen_operator, riesz_bounds, s_alpha,
                    t_beta, verify_dual_pair, walnut_apply, wexler_raz_residual, zz_bounds)
from .groups import (FiniteAbelianGroup, MeasureWeights, Subgroup, Transversal, annihilator, derive_weights,
                     enumerate_subgroups, intersect, make_group, pair, subgroup_from_generators, subgroup_sum,
                     transversal, trivial, whole)
from .transforms import fiberize, fourier, inverse_fourier, inverse_zak, stft, zak

__version__ = "0.1.0"
