"""riccilab: verification lab for the Ricci curvature bound of real
hypersurfaces in non-flat complex space forms.

The package cross-checks every computable object around the bound

    Ric(X) <= ((2n-1)^2/8) |H|^2 + kappa_X^2 + c (2n - 2 + 3 |phi X|^2):

curvature scalars from the Gauss equation (geometry), the bound and its
exact equality structure (bound), the model-hypersurface catalog with
closed-form principal curvatures (catalog), the transcendental radius
equations (radii), the 2-Hopf structure ODE (twohopf), and the exact
polynomial elimination behind the non-Hopf classification (polyalg).
"""

from .bound import BoundReport, equality_structure, lemma_f, ricci_upper_bound
from .catalog import (FAMILIES, FamilyCheck, PrincipalSpectrum, shape_state,
                      spectrum, verify_equality_direction)
from .geometry import (AdaptedFrame, CurvatureReport, ShapeState,
                       SpaceFormParams, hopf_relation_residual, is_hopf,
                       mean_curvature_norm, normal_curvature, ricci_direct,
                       ricci_tensor_sum, shape_state_n2)
from .polyalg import (EliminationReport, RationalPoly, sylvester_resultant,
                      variables, verify_factorization)
from .radii import RootProblem, residual, solve
from .twohopf import Trajectory, TwoHopfState, TwoHopfSystem

__version__ = "0.1.0"
