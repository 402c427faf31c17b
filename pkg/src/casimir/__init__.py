"""Casimir forces between plane and spherical mirrors of finite reflectivity.

Zero-point and thermal radiation pressure on mirrors, computed from the
reflection amplitudes of the mirrors on the imaginary-frequency axis, plus the
motional response and the inertia of the Casimir energy.
"""

__version__ = "0.1.0"

from .constants import C, CONSTANTS, HBAR, HBAR_C, K_B, PhysicalConstants
from .errors import (AliasingError, CasimirError, ConvergenceError, DomainError,
                     ExtrapolationError, LoadError, PassivityError, RegimeWarning)
from .geometry import (SphereForceResult, SphereGeometry, ideal_plane_sphere_force,
                       plane_plane_energy_per_area, plane_sphere_force_pfa)
from .mirrors import (PRESETS, Drude, FieldModeIm, Perfect, Plasma, Polarization, Scalar,
                      Tabulated, load_tabulated_permittivity, permittivity_im,
                      reflection_amplitude, reflection_coefficients)
from .motional import (InertiaResult, Monochromatic, MotionalSpec, Sampled,
                       casimir_inertia_correction, radiation_reaction_force,
                       thermal_motional_susceptibility, vacuum_motional_susceptibility)
from .radiometry import (CutoffSpec, ModePoint, blackbody_energy_density, mean_mode_energy,
                         mean_photon_number, spectral_mode_density, vacuum_energy_density)
from .scattering import (CavityGeometry, ForceResult, QuadratureSpec,
                         casimir_energy_scattering, casimir_force_scattering,
                         ideal_casimir_energy, ideal_casimir_force, reduction_factor)
from .thermal import (ThermalSpec, casimir_force_thermal, casimir_free_energy_thermal,
                      thermal_correction_ratio)
