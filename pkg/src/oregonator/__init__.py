"""Dynamic-transition analysis of the three-species Oregonator model.

The package computes the nondimensional reduction of the kinetics, the
uniform steady states and their invariant box, per-mode linear stability
over Neumann-Laplacian eigenmodes, the critical control values for the
uniform Hopf crossing and the spatial steady crossing, the transition
type at each (continuous / jump / mixed), and validates the analytic
predictions by direct time integration.
"""

from .critical import (CriticalNumbers, abc_numbers, delta0, delta0_from_abc,
                       delta1, mode_crossing_delta, scenario)
from .equilibria import (RegionBox, SteadyState, b_parameter, invariant_region,
                         inward_flux_check, sigma_root, steady_states)
from .errors import (BlowUp, ConfigError, DegenerateBox, GridTooCoarse,
                     IndeterminateType, ModeCapTooSmall, NonPositiveParameter,
                     OregonatorError, ScenarioMismatch, SingularBlock,
                     SingularEigenbasis, SingularSolve)
from .params import (ChemKinetics, NondimParams, delta_candidates,
                     nondimensionalize)
from .simulate import (CycleDiagnostics, InitialSpec, SimConfig, Trajectory,
                       amplitude_scaling_check, detect_cycle, integrate_ode,
                       integrate_pde, lyapunov_oracle)
from .spectrum import (CubicCoeffs, Domain, EigenTriple, SpectralMode,
                       cubic_coeffs, eigen3, hurwitz, laplace_modes, m_matrix,
                       pes_check)
from .transition import (HopfChain, SteadyChain, TransitionReport,
                         classify_hopf, classify_steady,
                         first_lyapunov_coefficient, hopf_chain, steady_b0,
                         steady_chain)

__version__ = "0.1.0"
