"""Single-excitation decay of atomic ensembles coupled to a 1D waveguide."""

__version__ = "0.1.0"

from .analytic import (
    AsymptoticParams,
    bessel_j,
    laguerre_gen,
    pw_chiral_asymptotic,
    pw_chiral_exact,
    pw_longtime,
    pw_superradiant,
)
from .continuum import (
    ContinuumField,
    GaussianProfile,
    UniformInterval,
    analytic_continuum_field,
    pw_from_field,
    solve_continuum,
)
from .dynamics import (
    DecayCurve,
    Evolver,
    bright_state,
    dark_state_two_atoms,
    evolve,
    simulate_decay,
    two_atom_bidirectional_analytic,
    two_atom_chiral_analytic,
)
from .kernels import AtomEnsemble, KernelMatrices, WaveguideKind, build_kernels, propagator
from .montecarlo import AverageResult, Fixed, Gaussian, Uniform, average_decay, sample_positions
